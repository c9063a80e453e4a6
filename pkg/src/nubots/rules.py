"""Interaction rules.

A rule (s1, s2, b, u) -> (s1', s2', b', u') relates two grid positions
p1 and p2 = p1 + u.  States are strings; None means the position is empty.
At most one side of the left-hand side may be empty, an empty side forces
a null bond, and a movement rule (u' != u, with d(u, u') = 1) requires
both sides non-empty throughout.  Rules are *not* rotationally invariant:
u and u' are fixed directions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import grid
from .grid import Vector
from .model import Bond

EMPTY = None  # state of an unoccupied position


class RuleError(ValueError):
    pass


@dataclass(frozen=True)
class Rule:
    s1: str | None
    s2: str | None
    b: Bond | None
    u: Vector
    s1p: str | None
    s2p: str | None
    bp: Bond | None
    up: Vector
    rid: int = field(default=-1, compare=False)

    def __post_init__(self):
        validate(self)

    # -- classification --------------------------------------------------

    @property
    def is_movement(self) -> bool:
        return self.up != self.u

    def kinds(self) -> frozenset[str]:
        """The set of primitive effects this rule has."""
        out = set()
        if self.is_movement:
            out.add("movement")
        if (self.s1 is EMPTY) != (self.s1p is EMPTY) or (
            self.s2 is EMPTY
        ) != (self.s2p is EMPTY):
            if (self.s1 is EMPTY and self.s1p is not EMPTY) or (
                self.s2 is EMPTY and self.s2p is not EMPTY
            ):
                out.add("appearance")
            else:
                out.add("disappearance")
        if self.b != self.bp and not out & {"appearance", "disappearance"}:
            out.add("bond_change")
        for s, sp in ((self.s1, self.s1p), (self.s2, self.s2p)):
            if s is not EMPTY and sp is not EMPTY and s != sp:
                out.add("state_change")
        return frozenset(out)

    def classify(self) -> str:
        k = self.kinds()
        if len(k) == 1:
            return next(iter(k))
        return "mixed"


def validate(r: Rule) -> None:
    """Raise RuleError when r violates the model's well-formedness rules."""
    if not grid.is_direction(r.u):
        raise RuleError(f"u={r.u} is not a unit direction")
    if not grid.is_direction(r.up):
        raise RuleError(f"u'={r.up} is not a unit direction")
    for s in (r.s1, r.s2, r.s1p, r.s2p):
        if s is not EMPTY and (not isinstance(s, str) or not s):
            raise RuleError(f"bad state {s!r}")
    if r.s1 is EMPTY and r.s2 is EMPTY:
        raise RuleError("at most one side of the lhs may be empty")
    if (r.s1 is EMPTY or r.s2 is EMPTY) and r.b is not None:
        raise RuleError("an empty lhs side requires a null bond")
    if (r.s1p is EMPTY or r.s2p is EMPTY) and r.bp is not None:
        raise RuleError("an empty rhs side requires a null bond")
    if r.s1p is EMPTY and r.s2p is EMPTY:
        raise RuleError("rules may not delete both monomers")
    # appearance/disappearance is only allowed on one side at a time and a
    # side may not teleport: s1 empty on one side of the arrow and s2 empty
    # on the other is rejected.
    if r.s1 is EMPTY and r.s2p is EMPTY:
        raise RuleError("lhs-empty side must stay on the same side")
    if r.s2 is EMPTY and r.s1p is EMPTY:
        raise RuleError("lhs-empty side must stay on the same side")
    if r.up != r.u:
        if grid.hex_distance(r.u, r.up) != 1:
            raise RuleError(f"movement must have d(u, u') = 1, got {r.u}->{r.up}")
        if EMPTY in (r.s1, r.s2, r.s1p, r.s2p):
            raise RuleError("movement rules require both sides non-empty")


def make_rule(s1, s2, b, u, s1p, s2p, bp, up, rid=-1) -> Rule:
    """Convenience constructor accepting 'r'/'f'/None bonds and named or
    tuple directions."""
    if isinstance(u, str):
        u = grid.NAMED_DIRECTIONS[u]
    if isinstance(up, str):
        up = grid.NAMED_DIRECTIONS[up]
    if isinstance(b, str):
        b = None if b == "n" else Bond(b)
    if isinstance(bp, str):
        bp = None if bp == "n" else Bond(bp)
    return Rule(s1, s2, b, u, s1p, s2p, bp, up, rid)


class RuleSet:
    """An ordered collection of rules with a lookup index.

    The index is keyed by (s1, s2, u); EMPTY sides are indexed under None.
    Rule ids are assigned in insertion order and used for deterministic
    candidate ordering and trace output.
    """

    def __init__(self, rules=()):
        self.rules: list[Rule] = []
        self._index: dict[tuple, list[Rule]] = {}
        for r in rules:
            self.add(r)

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def add(self, r: Rule) -> Rule:
        if r.rid != len(self.rules):
            r = Rule(r.s1, r.s2, r.b, r.u, r.s1p, r.s2p, r.bp, r.up,
                     rid=len(self.rules))
        self.rules.append(r)
        self._index.setdefault((r.s1, r.s2, r.u), []).append(r)
        return r

    def lookup(self, s1, s2, u) -> list[Rule]:
        """Rules whose lhs matches states (s1, s2) across direction u."""
        return self._index.get((s1, s2, u), [])

    def states(self) -> set[str]:
        out = set()
        for r in self.rules:
            for s in (r.s1, r.s2, r.s1p, r.s2p):
                if s is not EMPTY:
                    out.add(s)
        return out
