"""Small introductory programs: counting line, track walker, single
insertion, and bond rotation."""

from __future__ import annotations

from ..model import Bond, Configuration
from ..rules import RuleSet, make_rule
from .program import Program, horizontal_line


def simple_line(n: int) -> Program:
    """Grow a line of n monomers by counting down from the seed.

    The seed holds n; each numbered monomer appends its predecessor to
    the right and retires to state "0", with the last append writing
    "0" directly.  One monomer per event, so the expected completion
    time is n - 1.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rules = []
    for i in range(n, 1, -1):
        nxt = str(i - 1) if i > 2 else "0"
        rules.append(make_rule(str(i), None, "n", "+x",
                               "0", nxt, "r", "+x"))
    if n > 1:
        initial = Configuration({(0, 0): str(n)})
    else:
        initial = Configuration({(0, 0): "0"})
    return Program("line", RuleSet(rules), initial,
                   expected_terminal=horizontal_line(n),
                   metadata={"n": n})


def walker(k: int) -> Program:
    """A monomer walks along a rigid k-cell track and parks at its end.

    Three-rule cycle per cell: grab the next cell diagonally, release the
    cell below, swing forward.
    """
    if k < 2:
        raise ValueError("track needs at least 2 cells")
    rules = [
        # grab the cell ahead (down-right of the walker)
        make_rule("w", "a", "n", "-w", "w2", "a", "f", "-w"),
        # release the cell below
        make_rule("w2", "a", "f", "-y", "w3", "a", "n", "-y"),
        # swing from the old cell to above the grabbed cell
        make_rule("a", "w3", "f", "+w", "a", "w", "f", "+y"),
    ]
    initial = horizontal_line(k, state="a")
    initial.add_monomer((0, 1), "w")
    initial.set_bond((0, 1), (0, 0), Bond.FLEXIBLE)
    want = horizontal_line(k, state="a")
    want.add_monomer((k - 1, 1), "w")
    want.set_bond((k - 1, 1), (k - 1, 0), Bond.FLEXIBLE)
    return Program("walker", RuleSet(rules), initial,
                   expected_terminal=want, metadata={"k": k})


def insertion() -> Program:
    """Insert a monomer between a bonded pair, yielding a 3-line.

    The left monomer grows a helper above itself, the helper grabs the
    right monomer diagonally, the old bond is cut, and two movements
    straighten the triple.  Five strictly ordered steps; the two
    movements each run at rate 2 (either side may swing), so the expected
    completion time is exactly 4.
    """
    rules = [
        make_rule("iL", None, "n", "+y", "L1", "N1", "r", "+y"),
        make_rule("N1", "iR", "n", "-w", "N2", "R1", "r", "-w"),
        make_rule("L1", "R1", "r", "+x", "L2", "R2", "n", "+x"),
        make_rule("N2", "R2", "r", "-w", "N3", "2", "r", "+x"),
        make_rule("L2", "N3", "r", "+y", "2", "2", "r", "+x"),
    ]
    initial = Configuration({(0, 0): "iL", (1, 0): "iR"})
    initial.set_bond((0, 0), (1, 0), Bond.RIGID)
    return Program("insertion", RuleSet(rules), initial,
                   expected_terminal=horizontal_line(3, state="2"),
                   metadata={"mean_time": 4.0})


def rotation() -> Program:
    """One movement rule swings a diagonal pair into a vertical pair."""
    rules = [make_rule("1", "1", "r", "+w", "1", "1", "r", "+y")]
    initial = Configuration({(0, 0): "1", (-1, 1): "1"})
    initial.set_bond((0, 0), (-1, 1), Bond.RIGID)
    want = Configuration({(0, 0): "1", (0, 1): "1"})
    want.set_bond((0, 0), (0, 1), Bond.RIGID)
    return Program("rotation", RuleSet(rules), initial,
                   expected_terminal=want)
