"""Fast line growth by parallel pair doubling.

A length-n line is grown in expected time logarithmic in n.  The seed
sprouts a short carrier chain holding one *pair* per binary digit of n:
a pair (xL, 0) doubles into two pairs (x-1 L, 0) via a fixed 15-step
gadget, so after x generations it has become 2^(x+1) finished monomers.
All pairs double in parallel; each generation takes constant expected
time, giving O(log n) overall.

The doubling gadget inserts two monomers between the pair, pushing
everything to the right of the pair outward:

* insertion one -- the left monomer grows a helper above itself, the
  helper grabs the right monomer diagonally, the old pair bond is cut,
  and two movements (swing up, straighten) leave a 3-line.  Each swing
  lifts the entire right-hand side of the assembly one row and the
  straightening step drops it back one column further out, so the
  assembly stays a single rigid tree throughout.
* insertion two -- the same shape inserted between the helper and the
  right monomer, giving a 4-line.
* finalization -- a right-to-left handshake assigns the four output
  states.  The last step finalizes the left pair atomically so a
  finished monomer can never be consumed by the next generation while
  this one still needs it.

The gadget has 11 ordered non-movement steps (rate 1) and 4 movements
(rate 2, since either side of a movement may swing with the same
outcome up to translation), so its expected completion time is exactly
11 + 4/2 = 13.

States are namespaced per generation counter, so the rule count is
O(log n).  The gadget is parameterized by an (axis, normal) orientation
pair so other constructions can reuse it for vertical growth.
"""

from __future__ import annotations

from .. import grid
from ..model import Configuration
from ..rules import RuleSet, make_rule
from .program import Program, horizontal_line

AXES = {
    "x": ((1, 0), (0, 1)),    # grow along +x, helpers above (+y)
    "y": ((0, 1), (1, 0)),    # grow along +y, helpers right (+x)
}


def l_state(x: int, tag: str = "") -> str:
    """State of a pair's left monomer that still has x doublings to do."""
    return f"{x}L{tag}"


def zero_state(flavor: str = "", tag: str = "") -> str:
    return f"0{flavor}{tag}"


def emit_doubling_gadget(rules: list, x: int, *, flavor: str = "",
                         out_flavor: str | None = None,
                         axis: str = "x", tag: str = "",
                         ins: tuple[str, str] | None = None,
                         outs: tuple[str, str, str, str] | None = None) -> None:
    """Append the 15 rules doubling a pair (xL, 0) with the given flavor
    on its right monomer.  ``tag`` suffixes every state (used to keep
    differently-oriented copies of the construction independent).
    ``ins`` overrides the pair of locked states and ``outs`` the four
    output states (left, first inserted, second inserted, right), which
    lets other constructions reuse the gadget as a generic "insert two
    monomers between a bonded pair" step."""
    u_ax, u_norm = AXES[axis]
    diag = grid.sub(u_ax, u_norm)
    ax = grid.DIRECTION_NAMES[u_ax]
    up = grid.DIRECTION_NAMES[u_norm]
    dg = grid.DIRECTION_NAMES[diag]
    if out_flavor is None:
        out_flavor = flavor
    ns = f".{x}.{flavor or 'p'}{tag}"

    def st(name):
        return name + ns

    if ins is not None:
        l_in, z_in = ins
    else:
        l_in = l_state(x, tag)
        z_in = zero_state(flavor, tag)
    if outs is not None:
        l_out, n_out, m_out, r_out = outs
    else:
        l_out = zero_state("", tag) if x == 1 else l_state(x - 1, tag)
        m_out = l_out
        n_out = zero_state("", tag)
        r_out = zero_state(out_flavor, tag)

    r = make_rule
    rules += [
        # lock the pair, namespacing both monomers
        r(l_in, z_in, "r", ax, st("a1"), st("b1"), "r", ax),
        # insertion one: helper above, diagonal grab, cut, swing, straighten
        r(st("a1"), None, "n", up, st("a2"), st("n1"), "r", up),
        r(st("n1"), st("b1"), "n", dg, st("n2"), st("b2"), "r", dg),
        r(st("a2"), st("b2"), "r", ax, st("a3"), st("b3"), "n", ax),
        r(st("n2"), st("b3"), "r", dg, st("n3"), st("b4"), "r", ax),
        r(st("a3"), st("n3"), "r", up, st("a4"), st("n4"), "r", ax),
        # insertion two: same shape between helper and right monomer
        r(st("n4"), None, "n", up, st("n5"), st("m1"), "r", up),
        r(st("m1"), st("b4"), "n", dg, st("m2"), st("b5"), "r", dg),
        r(st("n5"), st("b5"), "r", ax, st("n6"), st("b6"), "n", ax),
        r(st("m2"), st("b6"), "r", dg, st("m3"), st("b7"), "r", ax),
        r(st("n6"), st("m3"), "r", up, st("n7"), st("m4"), "r", ax),
        # finalization handshake, right to left; the left pair finishes
        # atomically in the last step
        r(st("m4"), st("b7"), "r", ax, st("m5"), r_out, "r", ax),
        r(st("n7"), st("m5"), "r", ax, st("n8"), m_out, "r", ax),
        r(st("a4"), st("n8"), "r", ax, st("a5"), st("n9"), "r", ax),
        r(st("a5"), st("n9"), "r", ax, l_out, n_out, "r", ax),
    ]


def decompose(n: int) -> list[int]:
    """Binary decomposition of n as descending powers-of-two exponents."""
    return [k for k in range(n.bit_length() - 1, -1, -1) if n >> k & 1]


def emit_seed_chain(rules: list, n: int, *, flavor: str = "",
                    axis: str = "x", tag: str = "") -> str:
    """Rules growing the carrier chain of seed pairs for n; returns the
    seed monomer's state.  ``flavor`` (if set) marks the final monomer's
    lineage: it is carried on the last pair's right monomer."""
    u_ax, _ = AXES[axis]
    ax = grid.DIRECTION_NAMES[u_ax]
    neg_ax = grid.DIRECTION_NAMES[grid.neg(u_ax)]
    ks = decompose(n)
    r = make_rule
    if n == 1:
        return zero_state(flavor, tag)
    seed = f"c0{tag}.{n}"
    for i, k in enumerate(ks):
        ci = f"c{i}{tag}.{n}" if i else seed
        zi = f"z{i}{tag}.{n}"
        last = i == len(ks) - 1
        fl = flavor if last else ""
        if k == 0:
            # trailing single monomer; always the last component.  It
            # finishes by sensing the empty cell past the chain end, so
            # the transition cannot be starved by its left neighbor
            # moving on to another state
            rules.append(r(None, ci, "n", neg_ax,
                           None, zero_state(fl, tag), "n", neg_ax))
            continue
        ls = zero_state("", tag) if k == 1 else l_state(k - 1, tag)
        rules.append(r(ci, None, "n", ax, ls, zi, "r", ax))
        if last:
            rules.append(r(None, zi, "n", neg_ax,
                           None, zero_state(fl, tag), "n", neg_ax))
        else:
            rules.append(r(zi, None, "n", ax,
                           zero_state("", tag), f"c{i + 1}{tag}.{n}",
                           "r", ax))
    return seed


def fast_line(n: int, *, flavor: str = "") -> Program:
    """Program growing a fully rigid n-line of "0" monomers in expected
    time O(log n).  ``flavor`` marks the final (far-end) monomer's
    terminal state as 0+flavor for compositions that must detect it."""
    if n < 1:
        raise ValueError("n must be positive")
    rules: list = []
    seed = emit_seed_chain(rules, n, flavor=flavor)
    top = max(decompose(n))
    for x in range(1, top):
        emit_doubling_gadget(rules, x)
        if flavor:
            emit_doubling_gadget(rules, x, flavor=flavor)
    initial = Configuration({(0, 0): seed})
    want = horizontal_line(n)
    if flavor and n > 1:
        want.set_state((n - 1, 0), zero_state(flavor))
    elif flavor:
        want.set_state((0, 0), zero_state(flavor))
    return Program("fastline", RuleSet(rules), initial,
                   expected_terminal=want,
                   metadata={"n": n, "flavor": flavor})


def doubling_pair(x: int, *, flavor: str = "") -> Program:
    """Just one pair (xL, 0) with its gadget rules: doubles into a
    4-line.  Expected completion time is exactly 13."""
    rules: list = []
    emit_doubling_gadget(rules, x, flavor=flavor)
    from ..model import Bond
    initial = Configuration({(0, 0): l_state(x), (1, 0): zero_state(flavor)})
    initial.set_bond((0, 0), (1, 0), Bond.RIGID)
    want = horizontal_line(4)
    if x > 1:
        want.set_state((0, 0), l_state(x - 1))
        want.set_state((2, 0), l_state(x - 1))
    if flavor:
        want.set_state((3, 0), zero_state(flavor))
    return Program("doubling-pair", RuleSet(rules), initial,
                   expected_terminal=want,
                   metadata={"x": x, "mean_time": 13.0})
