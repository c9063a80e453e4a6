import numpy as np
import pytest

from nubots.analysis import completion_times, explore, uniquely_produces
from nubots.kinetics import run
from nubots.model import Bond, Configuration
from nubots.programs import simple, tm
from nubots.programs.tm import BLANK, TMSpec, run_machine


# -- line ---------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 7])
def test_simple_line_uniquely_produces_its_line(n):
    p = simple.simple_line(n)
    assert uniquely_produces(p.initial, p.ruleset, p.expected_terminal)


def test_simple_line_terminal_by_simulation():
    p = simple.simple_line(12)
    res = run(p.initial, p.ruleset, seed=1)
    assert res.status == "terminal"
    assert res.config.canonicalize() == p.expected_terminal.canonicalize()
    assert res.events == 11  # one growth step per appended monomer


def test_simple_line_time_is_linear():
    # strictly sequential unit-rate events: mean time = number of steps
    p = simple.simple_line(30)
    s = completion_times(p.initial, p.ruleset, replicates=150, seed=5)
    assert abs(s.mean - 29.0) < 3 * s.stderr


# -- walker -------------------------------------------------------------

@pytest.mark.parametrize("k", [2, 3, 5])
def test_walker_reaches_end_of_track(k):
    p = simple.walker(k)
    assert uniquely_produces(p.initial, p.ruleset, p.expected_terminal)


def test_walker_simulation_step_count():
    k = 8
    p = simple.walker(k)
    res = run(p.initial, p.ruleset, seed=0)
    assert res.status == "terminal"
    assert res.config.canonicalize() == p.expected_terminal.canonicalize()
    assert res.events == 3 * (k - 1)  # three-rule cycle per cell


# -- insertion ----------------------------------------------------------

def test_insertion_uniquely_produces_triple():
    p = simple.insertion()
    assert uniquely_produces(p.initial, p.ruleset, p.expected_terminal)


def test_insertion_mean_time_is_four():
    # 3 unit-rate steps plus 2 movements at rate 2: 3 + 1/2 + 1/2 = 4
    p = simple.insertion()
    s = completion_times(p.initial, p.ruleset, replicates=600, seed=9)
    assert abs(s.mean - 4.0) < 3 * s.stderr
    assert (s.events == 5).all()


# -- rotation -----------------------------------------------------------

def test_rotation_uniquely_produces_vertical_pair():
    p = simple.rotation()
    assert uniquely_produces(p.initial, p.ruleset, p.expected_terminal)
    ex = explore(p.initial, p.ruleset)
    assert len(ex) == 2  # diagonal and vertical only


# -- turing machines ----------------------------------------------------

def _parity_machine():
    # accepts inputs with an even number of 1s
    return TMSpec(start="e", accept="A", reject="Rj", delta={
        ("e", "0"): ("e", "0", "R"),
        ("e", "1"): ("o", "1", "R"),
        ("e", BLANK): ("A", BLANK, "R"),
        ("o", "0"): ("o", "0", "R"),
        ("o", "1"): ("e", "1", "R"),
        ("o", BLANK): ("Rj", BLANK, "R"),
    })


def _flip_machine():
    # flips every bit, then returns to the left end and accepts
    return TMSpec(start="f", accept="A", reject="Rj", delta={
        ("f", "0"): ("f", "1", "R"),
        ("f", "1"): ("f", "0", "R"),
        ("f", BLANK): ("b", BLANK, "L"),
        ("b", "0"): ("b", "0", "L"),
        ("b", "1"): ("b", "1", "L"),
        ("b", BLANK): ("A", BLANK, "R"),
    })


def test_interpreter_parity():
    m = _parity_machine()
    assert run_machine(m, "0110").accepted
    assert not run_machine(m, "010").accepted
    assert run_machine(m, "").accepted


def test_interpreter_flip_writes_tape():
    m = _flip_machine()
    r = run_machine(m, "1001")
    assert r.accepted
    assert [r.tape.get(i, BLANK) for i in range(4)] == list("0110")


@pytest.mark.parametrize("machine,word", [
    ("parity", "0110"), ("parity", "011"), ("parity", "1"),
    ("parity", ""), ("flip", "1001"), ("flip", "0"),
])
def test_compiled_machine_matches_interpreter(machine, word):
    m = _parity_machine() if machine == "parity" else _flip_machine()
    want = run_machine(m, word)
    p = tm.turing_machine(m, word)
    res = run(p.initial, p.ruleset, seed=4, max_events=10_000)
    assert res.status == "terminal"
    got = tm.terminal_to_result(m, res.config)
    assert got.accepted == want.accepted
    assert got.tape == want.tape
    assert got.head == want.head
    # one event per machine step: deterministic rule application
    assert res.events == want.steps


def test_compiled_machine_is_deterministic_each_step():
    m = _flip_machine()
    p = tm.turing_machine(m, "10")
    from nubots.kinetics import apply_event, enumerate_events
    c = p.initial.copy()
    while True:
        ev = enumerate_events(c, p.ruleset)
        if not ev:
            break
        assert len(ev) == 1
        apply_event(c, p.ruleset, ev[0])
