"""n-by-n square (n = 2**p) grown from one monomer in polylog time.

Stages, all overlapping in time and gated only locally:

* **baseline** -- a fast horizontal n-line.  A monomer of the line is
  finished ("0") exactly when it will never double again, so later
  stages can start on finished stretches while the line still grows
  elsewhere.
* **expansion** -- every adjacent pair of finished monomers inserts two
  spacers between itself (the pair-insertion gadget with renamed lock
  and output states), tracking per-side completion.  The left end is
  found by sensing the empty cell beside it; the right end carries the
  lineage flavor of the fast line.  A monomer whose both sides are
  expanded becomes a *pedestal*.
* **columns** -- each pedestal grows a synchronized vertical line of
  height n-1 above itself (messengers on the left side).  The
  pedestal marks the column's lower end for the synchronization
  machinery and learns completion from its first column monomer; it
  remembers whether it is the left edge, the right edge, or interior.
  The 3-cell spacing leaves room for the columns' sideways transients.
* **contraction** -- each gap deletes its two spacers one at a time:
  lock, swing the spacer down (dropping everything right of it), swing
  its right neighbor back up and sideways (pulling everything right one
  column closer), bond across, then delete the spacer while its holder
  is still in a unique state.  Contraction is gated on the *left*
  column being fully built (its state reaches the pedestal only after
  the column's completion shift, so no sideways helper can ever appear
  in the cell the right column moves into), and the second pull is
  gated on the *right* column being finished and physically blocked
  until that column's messengers are gone (they would collide with the
  left column).
* **quench** -- finished monomers bond to their right neighbors.

The terminal configuration is the n-by-n parallelogram of "sq"
monomers with every adjacent pair rigidly bonded.
"""

from __future__ import annotations

from .. import grid
from ..model import Bond, Configuration
from ..rules import RuleSet, make_rule
from .fastline import decompose, emit_doubling_gadget, emit_seed_chain, zero_state
from .program import Program
from .syncline import emit_sync_line

AX = grid.DIRECTION_NAMES[(1, 0)]
UP = grid.DIRECTION_NAMES[(0, 1)]
NW = grid.DIRECTION_NAMES[(1, -1)]
DN = grid.DIRECTION_NAMES[(0, -1)]

SQ = "sq"

#: vertical-column variants: interior, left edge, right edge, with the
#: pedestal state each one settles into when its column is complete
VARIANTS = (("VI", "vdone"), ("VL", "cL"), ("VR", "cR"))


def emit_expansion(rules: list) -> None:
    """Insert two spacers into every gap between finished baseline
    monomers, tracking left/right completion per monomer."""
    z = zero_state()
    r = make_rule
    # the unique left end of the baseline counts as already expanded on
    # its left; the right end (lineage flavor "r") likewise on its right.
    # The left end may also lock as a plain interior monomer first, so
    # the resulting right-side-done state senses the empty cell too.
    rules.append(r(None, z, "n", AX, None, "eL", "n", AX))
    rules.append(r(None, "XR", "n", AX, None, "vsVL", "n", AX))
    left_ins = {z: "XR", "XL": "vsVI", "eL": "vsVL"}
    right_ins = {z: "XL", "XR": "vsVI", zero_state("r"): "vsVR"}
    for i, (a, a_out) in enumerate(left_ins.items()):
        for j, (b, b_out) in enumerate(right_ins.items()):
            emit_doubling_gadget(rules, 1, tag=f"X{i}{j}", ins=(a, b),
                                 outs=(a_out, "P1", "P2", b_out))


def emit_columns(rules: list, n: int) -> None:
    """Grow a synchronized vertical (n-1)-line above each pedestal."""
    r = make_rule
    for tag, ped in VARIANTS:
        vs, vp, vq = f"vs{tag}", f"vp{tag}", f"vq{tag}"
        if n == 2:
            rules.append(r(vs, None, "n", UP, ped, SQ, "r", UP))
            continue
        seed = emit_sync_line(rules, n - 1, axis="y", tag=tag, final=SQ,
                              detect_end=False)
        rules += [
            r(vs, None, "n", UP, vp, seed, "r", UP),
            # the pedestal marks the column's lower end in place of the
            # free-standing line's empty-cell sensing
            r(vp, zero_state("", tag), "r", UP, vq, f"lm0{tag}", "r", UP),
            r(vp, zero_state("q", tag), "r", UP, vq, f"lm1{tag}", "r", UP),
            # completion reaches the pedestal through its first monomer
            r(vq, SQ, "r", UP, ped, SQ, "r", UP),
        ]


def emit_contraction(rules: list) -> None:
    """Delete the two spacers in every gap, one single-monomer deletion
    at a time, and bond the quadrant bases together."""
    r = make_rule
    a_final = {"d": "cR", "l": SQ}       # right side now done
    b_final = {"d": "cL", "r": SQ}       # left side now done
    for k, g in (("d", "vdone"), ("l", "cL")):
        rules += [
            # first deletion: spacer one
            r(g, "P1", "r", AX, f"ca{k}", "M1", "r", AX),
            r(f"ca{k}", "M1", "r", AX, f"ca{k}", "M2", "r", NW),
            # second deletion: spacer two
            r(g, "P2f", "r", AX, f"cb{k}", "N1", "r", AX),
            r(f"cb{k}", "N1", "r", AX, f"cb{k}", "N2", "r", NW),
        ]
        rules.append(r(f"ca{k}", "P2a", "n", AX, g, "P2r", "r", AX))
        for k2 in ("d", "r"):
            rules.append(r(f"cb{k}", f"bk{k2}", "n", AX,
                           a_final[k], f"bd{k2}", "r", AX))
    rules += [
        r("M2", "P2", "r", AX, "M3", "P2a", "r", UP),
        r("P2r", "M3", "r", DN, "P2f", None, "n", DN),
    ]
    for k2, g2 in (("d", "vdone"), ("r", "cR")):
        rules.append(r("N2", g2, "r", AX, "N3", f"bk{k2}", "r", UP))
    # B finalizes only through deleting the spacer below it, so the
    # spacer can never be stranded by B moving on first
    for k2 in ("d", "r"):
        rules.append(r(f"bd{k2}", "N3", "r", DN, b_final[k2], None, "n", DN))


def square(p: int) -> Program:
    """Program growing the n-by-n square, n = 2**p, in expected time
    polylogarithmic in n."""
    if p < 1:
        raise ValueError("p must be at least 1")
    n = 1 << p
    rules: list = []
    seed = emit_seed_chain(rules, n, flavor="r")
    for x in range(1, max(decompose(n))):
        emit_doubling_gadget(rules, x)
        emit_doubling_gadget(rules, x, flavor="r")
    emit_expansion(rules)
    emit_columns(rules, n)
    emit_contraction(rules)
    rules.append(make_rule(SQ, SQ, "n", AX, SQ, SQ, "r", AX))
    initial = Configuration({(0, 0): seed})
    want = Configuration()
    for x in range(n):
        for y in range(n):
            want.add_monomer((x, y), SQ)
            if x:
                want.set_bond((x - 1, y), (x, y), Bond.RIGID)
            if y:
                want.set_bond((x, y - 1), (x, y), Bond.RIGID)
    return Program("square", RuleSet(rules), initial,
                   expected_terminal=want,
                   metadata={"p": p, "n": n})
