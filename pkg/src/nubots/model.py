"""Monomers, bonds and configurations.

A configuration is a finite map from grid points to monomer states plus a
map from unordered adjacent point pairs to bond types (rigid or flexible;
absent pair = null bond).
"""

from __future__ import annotations

from enum import Enum

from . import grid
from .grid import Point, Vector


class Bond(Enum):
    RIGID = "r"
    FLEXIBLE = "f"

    def __repr__(self):  # pragma: no cover
        return f"Bond.{self.name}"


BondKey = tuple[Point, Point]


def bond_key(a: Point, b: Point) -> BondKey:
    """Canonical unordered key for the bond between adjacent points a, b."""
    return (a, b) if a <= b else (b, a)


class Configuration:
    """Mutable set of monomers with bonds.

    ``monomers`` maps point -> state (a non-empty string); ``bonds`` maps
    canonical point pairs -> Bond.  Only adjacent occupied pairs may be
    bonded.
    """

    __slots__ = ("monomers", "bonds")

    def __init__(self, monomers=None, bonds=None):
        self.monomers: dict[Point, str] = dict(monomers) if monomers else {}
        self.bonds: dict[BondKey, Bond] = {}
        if bonds:
            for (a, b), t in dict(bonds).items():
                self.set_bond(a, b, t)

    # -- basic accessors -------------------------------------------------

    def __len__(self) -> int:
        return len(self.monomers)

    def __contains__(self, p: Point) -> bool:
        return p in self.monomers

    def state(self, p: Point) -> str | None:
        return self.monomers.get(p)

    def bond(self, a: Point, b: Point) -> Bond | None:
        return self.bonds.get(bond_key(a, b))

    def copy(self) -> "Configuration":
        c = Configuration()
        c.monomers = dict(self.monomers)
        c.bonds = dict(self.bonds)
        return c

    def __eq__(self, other) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.monomers == other.monomers and self.bonds == other.bonds

    def __hash__(self):
        return hash(self.signature())

    def signature(self) -> tuple:
        """Hashable snapshot (sorted monomers and bonds)."""
        return (
            tuple(sorted(self.monomers.items())),
            tuple(sorted((k, v.value) for k, v in self.bonds.items())),
        )

    # -- mutation --------------------------------------------------------

    def add_monomer(self, p: Point, state: str) -> None:
        if p in self.monomers:
            raise ValueError(f"point {p} already occupied")
        if not state:
            raise ValueError("monomer state must be a non-empty string")
        self.monomers[p] = state

    def remove_monomer(self, p: Point) -> None:
        """Remove the monomer at p together with its incident bonds."""
        del self.monomers[p]
        for q in grid.neighbors(p):
            self.bonds.pop(bond_key(p, q), None)

    def set_state(self, p: Point, state: str) -> None:
        if p not in self.monomers:
            raise KeyError(p)
        self.monomers[p] = state

    def set_bond(self, a: Point, b: Point, t: Bond | None) -> None:
        if not grid.are_adjacent(a, b):
            raise ValueError(f"{a} and {b} are not adjacent")
        if a not in self.monomers or b not in self.monomers:
            raise ValueError("bonds require two occupied endpoints")
        k = bond_key(a, b)
        if t is None:
            self.bonds.pop(k, None)
        else:
            self.bonds[k] = Bond(t)

    def bonded_neighbors(self, p: Point):
        """Yield (q, bond) for each bonded neighbour of p."""
        for q in grid.neighbors(p):
            t = self.bonds.get(bond_key(p, q))
            if t is not None:
                yield q, t

    def translate_set(self, points, v: Vector) -> None:
        """Translate the given monomers by v, carrying internal bonds.

        Bonds between a translated and a stationary monomer are kept when
        the endpoints remain adjacent (flexible bonds may legally survive
        such a move); callers are responsible for only requesting
        translations that are legal in the model.
        """
        pts = set(points)
        moved = {}
        for p in pts:
            moved[grid.add(p, v)] = self.monomers.pop(p)
        for p, s in moved.items():
            if p in self.monomers:
                raise ValueError(f"translation collides at {p}")
            self.monomers[p] = s
        new_bonds = {}
        for (a, b), t in self.bonds.items():
            na = grid.add(a, v) if a in pts else a
            nb = grid.add(b, v) if b in pts else b
            if grid.are_adjacent(na, nb):
                new_bonds[bond_key(na, nb)] = t
        self.bonds = new_bonds

    # -- structure -------------------------------------------------------

    def components(self, rigid_only: bool = False) -> list[set[Point]]:
        """Connected components under bonds (optionally rigid bonds only)."""
        seen: set[Point] = set()
        comps = []
        for start in self.monomers:
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            seen.add(start)
            while stack:
                p = stack.pop()
                for q, t in self.bonded_neighbors(p):
                    if q in seen:
                        continue
                    if rigid_only and t is not Bond.RIGID:
                        continue
                    seen.add(q)
                    comp.add(q)
                    stack.append(q)
            comps.append(comp)
        return comps

    def bounding_box(self) -> tuple[int, int, int, int]:
        """(min_x, min_y, max_x, max_y) over occupied points."""
        xs = [p[0] for p in self.monomers]
        ys = [p[1] for p in self.monomers]
        return (min(xs), min(ys), max(xs), max(ys))

    def canonicalize(self) -> "Configuration":
        """Translate so the lexicographically smallest occupied point is
        the origin.  Exact equality of canonical forms decides isomorphism
        for stable configurations."""
        if not self.monomers:
            return self.copy()
        ox, oy = min(self.monomers)
        v = (-ox, -oy)
        c = Configuration()
        c.monomers = {grid.add(p, v): s for p, s in self.monomers.items()}
        c.bonds = {
            bond_key(grid.add(a, v), grid.add(b, v)): t
            for (a, b), t in self.bonds.items()
        }
        return c
