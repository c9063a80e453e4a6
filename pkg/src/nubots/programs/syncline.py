"""Synchronized line: grow an n-line fast, then detect completion.

The fast-line construction finishes different parts of the line at
different times, and no single monomer can tell locally that the whole
line is done.  This program adds a *messenger row* below the line that
performs that detection:

* every finished line monomer grows one messenger below itself;
* adjacent messengers bond rigidly; a messenger with both horizontal
  bonds relaxes its vertical bond to flexible.  The left-end messenger
  (below the unique monomer that sees an empty cell on its left) keeps
  its vertical bond rigid -- it is the pivot;
* the pivot's shift movement swings the whole messenger row one column
  sideways.  The movable set grows along the rigid messenger backbone,
  and any messenger whose vertical bond is still rigid drags its line
  monomer -- and through the rigid line, the pivot's base -- into the
  set, blocking the move.  The backbone can only terminate at the
  right-end messenger, which relaxes with a single horizontal bond, so
  the shift is applicable exactly when every messenger exists, is
  bonded, and is relaxed: i.e. when the line is complete;
* after the shift each line monomer sits above a *neighbor's* messenger
  with no bond between them.  Seeing that is the completion signal: the
  monomer finalizes and re-anchors the messenger below it rigidly;
* the messengers are then deleted in parallel, but each deletion
  requires the next messenger along the axis to be rigidly anchored
  already.  Movements elsewhere in a larger assembly can drag the whole
  structure, and a monomer held only by a flexible bond would swing out
  of position instead of following; the anchor-before-delete order
  keeps every live messenger rigidly attached until the moment it is
  removed.

The terminal configuration is a rigid n-line of ``final`` monomers with
the messenger row gone.  Total expected time is O(log n): the line takes
O(log n), messenger growth/bonding/relaxation tracks it within constant
expected lag per monomer, and the teardown after the single shift is a
wave of independent constant-rate steps.
"""

from __future__ import annotations

from .. import grid
from ..model import Bond, Configuration
from ..rules import EMPTY, RuleSet, make_rule
from .fastline import (AXES, decompose, emit_doubling_gadget,
                       emit_seed_chain, zero_state)
from .program import Program, horizontal_line

#: flavors a line monomer can carry while still doubling: plain, has a
#: messenger below (q), is the right-lineage end (r), or both (rq).
PAIR_FLAVORS = ("", "q", "r", "rq")


def emit_sync_rules(rules: list, *, axis: str = "x", tag: str = "",
                    final: str = "F", detect_end: bool = True) -> None:
    """Append the messenger-row rules: growth, left-end detection,
    bonding, relaxation, the completion shift, and teardown.  With
    ``detect_end`` False the empty-cell sensing rules marking the left
    end are omitted; the caller must mark it (state lm0 or lm1) itself,
    e.g. from a monomer that sits just before the line."""
    u_ax, u_norm = AXES[axis]
    ax = grid.DIRECTION_NAMES[u_ax]
    dn = grid.DIRECTION_NAMES[grid.neg(u_norm)]
    dg = grid.DIRECTION_NAMES[grid.sub(u_ax, u_norm)]

    def s(name):
        return name + tag

    z, zq = zero_state("", tag), zero_state("q", tag)
    zr, zrq = zero_state("r", tag), zero_state("rq", tag)
    fin = final
    r = make_rule
    # messenger growth below finished monomers
    rules += [
        r(z, None, "n", dn, zq, s("u"), "r", dn),
        r(zr, None, "n", dn, zrq, s("ur"), "r", dn),
    ]
    if detect_end:
        # left-end detection: only the true left end of the line ever has
        # an empty cell on its axis-minus side while in a finished state
        rules += [
            r(None, z, "n", ax, None, s("lm0"), "n", ax),
            r(None, zq, "n", ax, None, s("lm1"), "n", ax),
        ]
    rules += [
        r(s("lm0"), None, "n", dn, s("lmq"), s("ul"), "r", dn),
        r(s("lm1"), s("u"), "r", dn, s("lmq"), s("ul"), "r", dn),
        r(s("lm1"), s("uR"), "r", dn, s("lmq"), s("ulR"), "r", dn),
    ]
    # pairwise rigid bonding between adjacent messengers; each side
    # tracks which of its two horizontal bonds it has
    gains_right = ((s("u"), s("uR")), (s("uL"), s("uB")),
                   (s("ul"), s("ulR")))
    gains_left = ((s("u"), s("uL")), (s("uR"), s("uB")),
                  (s("ur"), s("urB")))
    for a, a2 in gains_right:
        for b, b2 in gains_left:
            rules.append(r(a, b, "n", ax, a2, b2, "r", ax))
    rules += [
        # relaxation: both horizontal bonds (one suffices at the right
        # end) flip the vertical anchor to flexible
        r(zq, s("uB"), "r", dn, zq, s("uF"), "f", dn),
        r(zrq, s("urB"), "r", dn, zrq, s("urF"), "f", dn),
        # the completion shift: swing the pivot messenger diagonally,
        # sliding the whole messenger row one column along the axis
        r(s("lmq"), s("ulR"), "r", dn, s("lmS"), s("ulS"), "r", dg),
    ]
    # completion signal: a finished monomer above an unbonded messenger
    for parent in (zq, zrq):
        for child, anchored in ((s("uF"), s("uD")), (s("ulS"), s("ulD"))):
            rules.append(r(parent, child, "n", dn, fin, anchored, "r", dn))
    # Teardown.  A messenger that loses all rigid attachments can be
    # carried out of position by an unrelated movement elsewhere in the
    # assembly (its flexible anchor swings instead of dragging it), so
    # every live messenger must stay rigidly held until it is deleted.
    # Each monomer is therefore deleted only while its axis-plus
    # neighbor is still rigidly anchored: the neighbor chain then keeps
    # every not-yet-anchored messenger attached through an anchor.
    xa = grid.DIRECTION_NAMES[grid.neg(u_ax)]
    rules.append(
        # the far messenger is re-anchored rigidly by its own monomer
        r(fin, s("urF"), "f", dg, fin, s("urD"), "r", dg))
    for left in (s("ulD"), s("uD")):
        for right in (s("uD"), s("urD")):
            rules.append(r(right, left, "r", xa, right, None, "n", xa))
    rules += [
        # stragglers whose deleter was itself deleted first fall back to
        # deletion through their own rigid anchor
        r(s("uD"), None, "n", ax, s("uDx"), None, "n", ax),
        r(fin, s("uDx"), "r", dn, fin, None, "n", dn),
        r(s("ulD"), None, "n", ax, s("ulDx"), None, "n", ax),
        r(s("lmS"), s("ulDx"), "r", dg, fin, None, "n", dg),
        # the far anchor has no axis-plus deleter; its monomer takes it
        r(fin, s("urD"), "r", dg, fin, None, "n", dg),
        # the left-end monomer finalizes once the pivot is gone
        r(s("lmS"), None, "n", dg, fin, None, "n", dg),
    ]


def emit_sync_line(rules: list, n: int, *, axis: str = "x", tag: str = "",
                   final: str = "F", detect_end: bool = True) -> str:
    """Append all rules growing a synchronized n-line (n >= 2) and
    return the seed monomer's state."""
    seed = emit_seed_chain(rules, n, flavor="r", axis=axis, tag=tag)
    top = max(decompose(n))
    for x in range(1, top):
        for fl in PAIR_FLAVORS:
            emit_doubling_gadget(rules, x, flavor=fl, axis=axis, tag=tag)
    emit_sync_rules(rules, axis=axis, tag=tag, final=final,
                    detect_end=detect_end)
    return seed


def sync_line(n: int, *, final: str = "F", axis: str = "x",
              tag: str = "") -> Program:
    """Program growing a rigid n-line whose monomers all end in state
    ``final``, where no monomer finalizes before the whole line exists.
    Expected completion time is O(log n)."""
    if n < 1:
        raise ValueError("n must be positive")
    u_ax, _ = AXES[axis]
    if n == 1:
        initial = Configuration({(0, 0): zero_state("", tag)})
        rules = [make_rule(None, zero_state("", tag), "n",
                           grid.DIRECTION_NAMES[u_ax],
                           None, final, "n", grid.DIRECTION_NAMES[u_ax])]
        want = Configuration({(0, 0): final})
        return Program("syncline", RuleSet(rules), initial,
                       expected_terminal=want,
                       metadata={"n": n, "final": final})
    rules: list = []
    seed = emit_sync_line(rules, n, axis=axis, tag=tag, final=final)
    initial = Configuration({(0, 0): seed})
    want = Configuration()
    p = (0, 0)
    for i in range(n):
        want.add_monomer(p, final)
        if i:
            want.set_bond(p, grid.sub(p, u_ax), Bond.RIGID)
        p = grid.add(p, u_ax)
    return Program("syncline", RuleSet(rules), initial,
                   expected_terminal=want,
                   metadata={"n": n, "final": final})
