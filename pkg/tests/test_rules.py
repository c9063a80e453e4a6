import pytest

from nubots.model import Bond
from nubots.rules import EMPTY, Rule, RuleError, RuleSet, make_rule


def test_make_rule_accepts_names_and_letters():
    r = make_rule("a", "b", "r", "+x", "a", "b", "f", "+x")
    assert r.b is Bond.RIGID and r.bp is Bond.FLEXIBLE
    assert r.u == (1, 0) and r.up == (1, 0)
    r2 = make_rule("a", None, "n", "-w", "a", "c", "r", "-w")
    assert r2.s2 is EMPTY and r2.b is None and r2.u == (1, -1)


def test_movement_rule_classification():
    mv = make_rule("a", "b", "r", "+x", "a", "b", "r", "+y")
    assert mv.is_movement and mv.classify() == "movement"
    assert make_rule("a", None, "n", "+x", "a", "b", "r", "+x").classify() == "appearance"
    assert make_rule("a", "b", "r", "+x", "a", None, "n", "+x").classify() == "disappearance"
    assert make_rule("a", "b", "r", "+x", "a", "b", "f", "+x").classify() == "bond_change"
    assert make_rule("a", "b", "r", "+x", "c", "b", "r", "+x").classify() == "state_change"
    assert make_rule("a", "b", "r", "+x", "c", "b", "f", "+x").classify() == "mixed"


def test_rules_are_not_rotation_invariant():
    rs = RuleSet([make_rule("a", "b", "r", "+x", "c", "d", "r", "+x")])
    assert rs.lookup("a", "b", (1, 0))
    assert not rs.lookup("a", "b", (0, 1))


@pytest.mark.parametrize("args", [
    # both sides empty
    (None, None, "n", "+x", "a", None, "n", "+x"),
    # empty side must carry a null bond
    ("a", None, "r", "+x", "a", "b", "r", "+x"),
    ("a", "b", "r", "+x", "a", None, "r", "+x"),
    # both monomers deleted
    ("a", "b", "r", "+x", None, None, "n", "+x"),
    # monomer may not hop sides
    ("a", None, "n", "+x", None, "a", "n", "+x"),
    # movement by more than one rotation
    ("a", "b", "r", "+x", "a", "b", "r", "-x"),
    # movement with an empty side
    ("a", None, "n", "+x", "a", None, "n", "+y"),
    ("a", "b", "r", "+x", "a", None, "n", "+y"),
    # direction must be a unit vector
    ("a", "b", "r", (2, 0), "a", "b", "r", (2, 0)),
])
def test_invalid_rules_rejected(args):
    with pytest.raises(RuleError):
        make_rule(*args)


def test_movement_requires_adjacent_target_direction():
    # +x -> +y and +x -> -w are the two legal rotations
    make_rule("a", "b", "r", "+x", "a", "b", "r", "+y")
    make_rule("a", "b", "r", "+x", "a", "b", "r", "-w")
    with pytest.raises(RuleError):
        make_rule("a", "b", "r", "+x", "a", "b", "r", "+w")


def test_ruleset_lookup_and_ids():
    rules = [
        make_rule("a", "b", "r", "+x", "c", "b", "r", "+x"),
        make_rule("a", "b", "f", "+x", "d", "b", "f", "+x"),
        make_rule("a", None, "n", "+x", "a", "e", "r", "+x"),
    ]
    rs = RuleSet(rules)
    assert [r.rid for r in rs.rules] == [0, 1, 2]
    got = rs.lookup("a", "b", (1, 0))
    assert [r.rid for r in got] == [0, 1]
    assert [r.rid for r in rs.lookup("a", EMPTY, (1, 0))] == [2]
    assert rs.lookup("z", "b", (1, 0)) == []


def test_states_collects_all_mentioned():
    rs = RuleSet([make_rule("a", None, "n", "+x", "b", "c", "r", "+x")])
    assert rs.states() == {"a", "b", "c"}
