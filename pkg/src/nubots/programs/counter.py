"""Binary counter: n = 2**p columns that read 0..n-1 in binary.

The backbone is a horizontal line grown by pair doubling, and every
backbone monomer carries a column of bit monomers hanging below it, most
significant bit on top.  Each doubling generation turns a pair of
columns holding (c, c+1) into four columns holding (2c, 2c+1, 2c+2,
2c+3):

* the pair doubles on the backbone, inserting two fresh monomers with
  empty columns between the old ones;
* a *copy wave* walks down each old column, spawning a sideways copy of
  every bit into the adjacent fresh column (left column copies right,
  right column copies left), bonding the copies vertically as it goes;
* at the bottom both columns append the new low bit -- 0 under the kept
  column, 1 under the copy on the left side, and the mirror image on
  the right side;
* an acknowledgement wave walks back up, cutting the temporary
  horizontal bonds and settling the bits, and finally releases the two
  backbone monomers for the next generation.

Nothing synchronizes the finished columns globally: each quadruple is
released as soon as its own copy completes, so different parts of the
counter may be generations apart.  All state names are namespaced by
generation, so the rule count is O(log n), and each generation costs
O(log n) expected time for the copy wave, giving O(log**2 n) total.
"""

from __future__ import annotations

from .. import grid
from ..model import Bond, Configuration
from ..rules import RuleSet, make_rule
from .fastline import emit_doubling_gadget, l_state, zero_state
from .program import Program

DN = grid.DIRECTION_NAMES[(0, -1)]
AX = grid.DIRECTION_NAMES[(1, 0)]
XA = grid.DIRECTION_NAMES[(-1, 0)]

#: final backbone state
DONE = "B"


def bit(i: int) -> str:
    return f"b{i}"


def emit_copy_rules(rules: list, x: int, side: str,
                    backbone_src: str, backbone_dst: str,
                    rel_src: str, rel_dst: str) -> None:
    """Copy wave for one side of a doubled pair at generation countdown
    x.  ``side`` is "l" (left column copies rightward, appends 0 under
    itself and 1 under the copy) or "r" (the mirror image)."""
    fwd = AX if side == "l" else XA
    keep_bit, copy_bit = (bit(0), bit(1)) if side == "l" else (bit(1), bit(0))
    ns = f".{x}.c{side}"

    def s(name, i):
        return f"{name}{i}{ns}"

    r = make_rule
    for i in (0, 1):
        rules += [
            # the released backbone monomer starts the wave on its top bit
            r(backbone_src, bit(i), "r", DN, f"W{ns}", s("A", i), "r", DN),
            # spawn the sideways copy of this bit
            r(s("A", i), None, "n", fwd, s("S", i), s("f", i), "r", fwd),
            # the topmost copy anchors to the fresh backbone monomer
            r(backbone_dst, s("f", i), "n", DN, f"V{ns}", s("g", i),
              "r", DN),
            # bottom of the column: sense the empty cell below, tell the
            # copy it is the bottom, then both append the new low bit
            r(s("S", i), None, "n", DN, s("U", i), None, "n", DN),
            r(s("U", i), s("g", i), "r", fwd, s("V", i), s("h", i),
              "r", fwd),
            r(s("V", i), None, "n", DN, s("T", i), keep_bit, "r", DN),
            r(s("h", i), None, "n", DN, s("w", i), copy_bit, "r", DN),
            # cut the horizontal bond once this depth and everything
            # below it is finished; the cut travels bottom-up because a
            # copy only becomes cuttable (ga) after the cut below it (k),
            # and a source only becomes cuttable (Tr) after settling the
            # cut source below it (q)
            r(s("T", i), s("w", i), "r", fwd, s("q", i), s("k", i),
              "n", fwd),
            r(s("Tr", i), s("ga", i), "r", fwd, s("q", i), s("k", i),
              "n", fwd),
            # release the backbone pair when the top of each column is
            # done
            r(f"W{ns}", s("q", i), "r", DN, rel_src, bit(i), "r", DN),
            r(f"V{ns}", s("k", i), "r", DN, rel_dst, bit(i), "r", DN),
        ]
        for j in (0, 1):
            rules += [
                # advance the wave to the next bit down
                r(s("S", i), bit(j), "r", DN, s("T", i), s("A", j),
                  "r", DN),
                # vertical bonding between copies, top-down
                r(s("g", i), s("f", j), "n", DN, s("g", i), s("g", j),
                  "r", DN),
                # acknowledge upward: the settled cut below makes this
                # copy cuttable and finalizes the bit under it
                r(s("g", i), s("k", j), "r", DN, s("ga", i), bit(j),
                  "r", DN),
                r(s("T", i), s("q", j), "r", DN, s("Tr", i), bit(j),
                  "r", DN),
            ]


def emit_generation(rules: list, x: int) -> None:
    """One full generation: the doubling gadget routed into the copy
    phase, both copy waves, and release into the next generation's
    lockable states (or the final backbone state after the last one)."""
    lo, no, mo, ro = (f"CL.{x}", f"CN.{x}", f"CM.{x}", f"CR.{x}")
    emit_doubling_gadget(rules, x, outs=(lo, no, mo, ro))
    if x == 1:
        rel_l = rel_n = rel_m = rel_r = DONE
    else:
        rel_l = rel_m = l_state(x - 1)
        rel_n = rel_r = zero_state()
    emit_copy_rules(rules, x, "l", lo, no, rel_l, rel_n)
    emit_copy_rules(rules, x, "r", ro, mo, rel_r, rel_m)


def counter(p: int) -> Program:
    """Program growing the n = 2**p column counter from one seed monomer
    in expected time O(log**2 n)."""
    if p < 1:
        raise ValueError("p must be at least 1")
    n = 1 << p
    r = make_rule
    first_l = DONE if p == 1 else l_state(p - 1)
    first_r = DONE if p == 1 else zero_state()
    rules = [
        r("K0", None, "n", AX, "K1", "K2", "r", AX),
        r("K1", None, "n", DN, first_l, bit(0), "r", DN),
        r("K2", None, "n", DN, first_r, bit(1), "r", DN),
    ]
    for x in range(1, p):
        emit_generation(rules, x)
    initial = Configuration({(0, 0): "K0"})
    want = Configuration()
    for i in range(n):
        want.add_monomer((i, 0), DONE)
        if i:
            want.set_bond((i - 1, 0), (i, 0), Bond.RIGID)
        for d in range(1, p + 1):
            want.add_monomer((i, -d), bit(i >> (p - d) & 1))
            want.set_bond((i, -d + 1), (i, -d), Bond.RIGID)
    return Program("counter", RuleSet(rules), initial,
                   expected_terminal=want,
                   metadata={"p": p, "n": n})
