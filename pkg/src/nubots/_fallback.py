"""Pure-Python agitation/movable-set kernel.

Same contract as the compiled kernel in ``_kernel.pyx``; selected at
import time by ``kinetics`` when the extension is unavailable.  Both
kernels run the greedy frontier algorithm: start from the seed monomer,
repeatedly absorb every monomer that the current set would push into or
drag along, and (for movable sets) report a block as soon as the base
would be absorbed.

Packed layout (produced by ``kinetics.PackedView``):

* ``pts``      -- list of (x, y), index order is sorted position order
* ``index``    -- dict (x, y) -> monomer index
* ``nbr_idx``  -- flat list, entry [i*6+d] = neighbour index or -1
* ``nbr_bond`` -- flat list, entry [i*6+d] = 0 none, 1 rigid, 2 flexible
"""

from __future__ import annotations

BACKEND = "python"


class Kernel:
    def __init__(self, pts, index, nbr_idx, nbr_bond):
        self.pts = pts
        self.index = index
        self.nbr_idx = nbr_idx
        self.nbr_bond = nbr_bond

    def _collect(self, seed, base, vx, vy):
        """Greedy set growth; returns (blocked, indices)."""
        pts = self.pts
        index = self.index
        nbr_idx = self.nbr_idx
        nbr_bond = self.nbr_bond
        in_set = bytearray(len(pts))
        in_set[seed] = 1
        out = [seed]
        frontier = [seed]
        while frontier:
            nxt = []
            for xi in frontier:
                x, y = pts[xi]
                tx = x + vx
                ty = y + vy
                occ = index.get((tx, ty))
                if occ is not None and not in_set[occ]:
                    if occ == base:
                        return True, out
                    in_set[occ] = 1
                    out.append(occ)
                    nxt.append(occ)
                row = xi * 6
                for d in range(6):
                    t = nbr_bond[row + d]
                    if t == 0:
                        continue
                    yi = nbr_idx[row + d]
                    if in_set[yi]:
                        continue
                    if yi == base and xi == seed:
                        # the arm-base bond is dropped when computing M
                        continue
                    if t == 2:
                        # flexible: dragging happens only when the moved
                        # monomer would no longer neighbour its partner
                        px, py = pts[yi]
                        dx = tx - px
                        dy = ty - py
                        if (abs(dx) + abs(dy) + abs(dx + dy)) == 2:
                            continue
                    if yi == base:
                        return True, out
                    in_set[yi] = 1
                    out.append(yi)
                    nxt.append(yi)
            frontier = nxt
        return False, out

    def agitation_set(self, seed, vx, vy):
        """Indices of the minimal translatable set containing seed."""
        _, out = self._collect(seed, -1, vx, vy)
        return out

    def movable_set(self, arm, base, vx, vy):
        """Indices of M(C, arm, base, v), or None when blocked."""
        blocked, out = self._collect(arm, base, vx, vy)
        return None if blocked else out
