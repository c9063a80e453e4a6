import numpy as np
import pytest

from nubots import grid, kinetics
from nubots.grid import DIRECTIONS
from nubots.kinetics import (PackedView, agitation_set, apply_event,
                             enumerate_events, is_stable, movable_set, run)
from nubots.model import Bond, Configuration
from nubots.rules import RuleSet, make_rule

from oracles import (agitation_set_reference, movable_set_reference,
                     random_config)


def line(n, state="a", bond=Bond.RIGID):
    c = Configuration()
    for i in range(n):
        c.add_monomer((i, 0), state)
        if i:
            c.set_bond((i - 1, 0), (i, 0), bond)
    return c


# -- movable / agitation sets against the exhaustive reference ----------

def _all_queries(config):
    pts = sorted(config.monomers)
    for p in pts:
        for v in DIRECTIONS:
            yield ("agit", p, v)
    for a in pts:
        for v in DIRECTIONS:
            b = grid.add(a, v)
            if b in config.monomers:
                for mv in grid.adjacent_directions(v):
                    off = grid.sub(mv, v)
                    yield ("move", b, a, off)   # arm = far monomer
                    yield ("move", a, b, grid.neg(off))  # arm = near monomer


def test_sets_match_reference_on_random_configurations():
    rng = np.random.default_rng(2024)
    checked = 0
    for _ in range(1000):
        config = random_config(rng)
        queries = list(_all_queries(config))
        # keep runtime sane: sample a handful of queries per configuration
        for qi in rng.choice(len(queries), size=min(6, len(queries)),
                             replace=False):
            q = queries[qi]
            if q[0] == "agit":
                _, p, v = q
                assert agitation_set(config, p, v) == \
                    agitation_set_reference(config, p, v)
            else:
                _, arm, base, v = q
                assert movable_set(config, arm, base, v) == \
                    movable_set_reference(config, arm, base, v)
            checked += 1
    assert checked >= 1000


def test_kernel_backends_agree():
    py = kinetics.get_kernel_module("python")
    assert py.BACKEND == "python"
    rng = np.random.default_rng(99)
    for _ in range(300):
        config = random_config(rng)
        fast = PackedView(config)
        slow = PackedView(config, backend=py)
        for p in sorted(config.monomers):
            for v in DIRECTIONS:
                assert fast.agitation_set(p, v) == slow.agitation_set(p, v)
        for q in _all_queries(config):
            if q[0] == "move":
                _, arm, base, v = q
                assert fast.movable_set(arm, base, v) == \
                    slow.movable_set(arm, base, v)


def test_compiled_kernel_is_active():
    assert kinetics.KERNEL_BACKEND == "c"


# -- hand-checked set examples ------------------------------------------

def test_rigid_chain_end_rotates_alone():
    # the arm-base bond is ignored, so the end monomer swings by itself
    c = line(4)
    assert movable_set(c, (0, 0), (1, 0), (0, 1)) == {(0, 0)}


def test_rigid_path_back_to_base_blocks():
    c = Configuration({(0, 0): "a", (1, 0): "b", (0, 1): "c"})
    c.set_bond((0, 0), (1, 0), Bond.RIGID)
    c.set_bond((0, 0), (0, 1), Bond.RIGID)
    c.set_bond((0, 1), (1, 0), Bond.RIGID)
    # the arm drags its other rigid neighbour, which drags the base
    assert movable_set(c, (0, 0), (1, 0), (1, -1)) is None


def test_flexible_bond_drags_when_stretched():
    # arm at origin, flexible partner at +x, movement away by -x would
    # stretch the bond, so the partner is dragged
    c = Configuration({(0, 0): "a", (1, 0): "b", (3, 0): "c"})
    c.set_bond((0, 0), (1, 0), Bond.FLEXIBLE)
    s = agitation_set(c, (0, 0), (-1, 0))
    assert s == {(0, 0), (1, 0)}


def test_collision_absorbs_blocker():
    c = Configuration({(0, 0): "a", (1, 0): "b"})
    s = agitation_set(c, (0, 0), (1, 0))
    assert s == {(0, 0), (1, 0)}


def test_blocked_when_base_absorbed():
    # pushing the arm straight into the base
    c = Configuration({(0, 0): "a", (1, 0): "b"})
    c.set_bond((0, 0), (1, 0), Bond.RIGID)
    assert movable_set(c, (0, 0), (1, 0), (1, 0)) is None


# -- stability ----------------------------------------------------------

def test_rigid_tree_is_stable():
    assert is_stable(line(5))
    assert is_stable(Configuration({(0, 0): "a"}))
    assert is_stable(Configuration())


def test_flexible_chain_is_not_stable():
    assert not is_stable(line(3, bond=Bond.FLEXIBLE))


def test_unbonded_pair_is_not_stable():
    assert not is_stable(Configuration({(0, 0): "a", (1, 0): "b"}))


def test_flexible_hexagon_deforms():
    # a ring of flexible bonds is floppy: pushing one monomer outward
    # drags only part of the ring
    ring = [(0, 0), (1, 0), (2, -1), (2, -2), (1, -2), (0, -1)]
    c = Configuration({p: "a" for p in ring})
    for i, p in enumerate(ring):
        c.set_bond(p, ring[(i + 1) % 6], Bond.FLEXIBLE)
    assert not is_stable(c)
    assert agitation_set(c, (0, 0), (1, 0)) == {(0, 0), (1, 0), (0, -1)}


def test_wedged_flexible_monomer_is_stable():
    # not rigidly connected, yet stable: the flexibly bonded monomer is
    # wedged so every push either collides with the frame or stretches
    # its bond, dragging everything along
    c = Configuration({(0, 0): "a", (1, 0): "a", (2, 0): "a", (0, 1): "a",
                       (1, 1): "f"})
    c.set_bond((0, 0), (1, 0), Bond.RIGID)
    c.set_bond((1, 0), (2, 0), Bond.RIGID)
    c.set_bond((0, 0), (0, 1), Bond.RIGID)
    c.set_bond((1, 0), (1, 1), Bond.FLEXIBLE)
    assert is_stable(c)


# -- event enumeration and application ----------------------------------

def test_event_counting_movement_counts_each_usable_arm():
    c = line(2)
    rs = RuleSet([make_rule("a", "a", "r", "+x", "a", "a", "r", "+y")])
    ev = enumerate_events(c, rs)
    assert len(ev) == 2
    assert all(e[0] == "move" for e in ev)
    assert sorted(e[3] for e in ev) == [1, 2]


def test_movement_arm_applicability_matches_reference():
    # each arm of a movement rule is an event exactly when its movable
    # set exists per the exhaustive reference
    rng = np.random.default_rng(31)
    blocked = usable = 0
    for _ in range(250):
        config = random_config(rng, states="ab")
        pairs = [(p, grid.add(p, u), u) for p in sorted(config.monomers)
                 for u in DIRECTIONS if grid.add(p, u) in config.monomers]
        if not pairs:
            continue
        p1, p2, u = pairs[int(rng.integers(len(pairs)))]
        up = grid.adjacent_directions(u)[int(rng.integers(2))]
        rule = make_rule(config.state(p1), config.state(p2),
                         config.bond(p1, p2), u,
                         config.state(p1), config.state(p2),
                         config.bond(p1, p2), up)
        rs = RuleSet([rule])
        ev = set(enumerate_events(config, rs))
        for arm in (1, 2):
            v = kinetics.movement_vector(rule, arm)
            a, b = (p1, p2) if arm == 1 else (p2, p1)
            ref = movable_set_reference(config, a, b, v)
            assert (("move", 0, p1, arm) in ev) == (ref is not None)
            if ref is None:
                blocked += 1
            else:
                usable += 1
    assert blocked > 10 and usable > 10


def test_rotation_rule_turns_line_vertical():
    # two-monomer line with a single movement rule ends vertical
    c = line(2, state="1")
    rs = RuleSet([make_rule("1", "1", "r", "+w", "1", "1", "r", "+y")])
    c2 = Configuration({(0, 0): "1", (-1, 1): "1"})
    c2.set_bond((0, 0), (-1, 1), Bond.RIGID)
    res = run(c2, rs, seed=5)
    assert res.status == "terminal" and res.events == 1
    got = res.config.canonicalize()
    want = Configuration({(0, 0): "1", (0, 1): "1"})
    want.set_bond((0, 0), (0, 1), Bond.RIGID)
    assert got == want.canonicalize()


def test_appearance_disappearance_and_bond_change():
    rs = RuleSet([
        make_rule("s", None, "n", "+x", "s2", "n", "r", "+x"),
        make_rule("s2", "n", "r", "+x", "s3", "n", "f", "+x"),
        make_rule("s3", "n", "f", "+x", "s4", None, "n", "+x"),
    ])
    c = Configuration({(0, 0): "s"})
    res = run(c, rs, seed=1)
    assert res.status == "terminal"
    assert res.config.monomers == {(0, 0): "s4"}
    assert res.events == 3


def test_empty_side_rule_matches_only_empty_cells():
    rs = RuleSet([make_rule(None, "a", "n", "+x", "g", "a", "r", "+x")])
    # the -x neighbour of the monomer is occupied, so nothing fires there
    c = Configuration({(0, 0): "b", (1, 0): "a"})
    ev = enumerate_events(c, rs)
    assert ev == []
    c2 = Configuration({(1, 0): "a"})
    ev2 = enumerate_events(c2, rs)
    assert ev2 == [("rule", 0, (0, 0), (1, 0))]
    apply_event(c2, rs, ev2[0])
    assert c2.monomers == {(0, 0): "g", (1, 0): "a"}
    assert c2.bond((0, 0), (1, 0)) is Bond.RIGID


def test_movement_application_matches_arm_semantics():
    rs = RuleSet([make_rule("a", "b", "r", "+x", "a", "b", "r", "+y")])
    # arm 2: the s2 monomer swings from p1+u to p1+u'
    c = line(2)
    c.set_state((1, 0), "b")
    apply_event(c, rs, ("move", 0, (0, 0), 2))
    assert c.monomers == {(0, 0): "a", (0, 1): "b"}
    assert c.bond((0, 0), (0, 1)) is Bond.RIGID
    # arm 1: the s1 monomer moves by u - u' instead
    c = line(2)
    c.set_state((1, 0), "b")
    apply_event(c, rs, ("move", 0, (0, 0), 1))
    assert c.monomers == {(1, -1): "a", (1, 0): "b"}
    assert c.bond((1, -1), (1, 0)) is Bond.RIGID


def test_event_order_is_deterministic():
    rng = np.random.default_rng(5)
    rs = RuleSet([
        make_rule("a", "b", "r", "+x", "b", "a", "r", "+x"),
        make_rule("b", "a", "r", "+x", "a", "b", "r", "+x"),
        make_rule("a", None, "n", "+y", "a", "c", "r", "+y"),
        make_rule("c", "b", None, "-y", "c", "b", "f", "-y"),
    ])
    for _ in range(25):
        c = random_config(rng, states="abc")
        ev = enumerate_events(c, rs)
        assert ev == enumerate_events(c, rs)


# -- stochastic behaviour ------------------------------------------------

def test_holding_time_mean_tracks_event_count():
    # k parallel appearance events -> first firing time ~ Exp(k)
    rs = RuleSet([make_rule("a", None, "n", "+y", "a2", "t", "r", "+y")])
    c = Configuration({(3 * i, 0): "a" for i in range(4)})  # k = 4
    times = []
    rng = kinetics.rng_for(77)
    for _ in range(600):
        res = run(c, rs, rng=rng, max_events=1)
        times.append(res.time)
    mean = np.mean(times)
    se = np.std(times) / np.sqrt(len(times))
    assert abs(mean - 1 / 4) < 3 * se + 1e-9


def test_runs_with_same_seed_are_identical():
    rs = RuleSet([
        make_rule("a", None, "n", "+x", "a", "a", "r", "+x"),
        make_rule("a", "a", "r", "+x", "b", "b", "r", "+x"),
    ])
    c = Configuration({(0, 0): "a"})
    r1 = run(c, rs, seed=42, max_events=40, collect_trace=True)
    r2 = run(c, rs, seed=42, max_events=40, collect_trace=True)
    assert r1.trace == r2.trace
    assert r1.config == r2.config and r1.time == r2.time
    r3 = run(c, rs, seed=43, max_events=40, collect_trace=True)
    assert r3.trace != r1.trace


def test_agitation_run_moves_unbonded_monomer():
    c = Configuration({(0, 0): "a", (5, 5): "b"})
    res = run(c, RuleSet(), seed=8, agitation=True, max_events=30)
    assert res.status == "limit" and res.events == 30
    assert len(res.config) == 2  # agitation never creates or destroys


def test_agitation_off_reaches_terminal():
    res = run(Configuration({(0, 0): "a"}), RuleSet(), seed=0)
    assert res.status == "terminal" and res.events == 0 and res.time == 0.0


def test_snapshots_collected():
    rs = RuleSet([make_rule("a", None, "n", "+x", "a", "a", "r", "+x")])
    res = run(Configuration({(0, 0): "a"}), rs, seed=2, max_events=10,
              snapshot_every=5)
    assert len(res.snapshots) == 2
    assert len(res.snapshots[0]) == 6
