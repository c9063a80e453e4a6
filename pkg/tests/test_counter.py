"""Binary counter construction: uniqueness, column values, timing."""

import pytest

from nubots.analysis import completion_times, fit_scaling, uniquely_produces
from nubots.kinetics import run, rng_for
from nubots.programs.counter import counter


@pytest.mark.parametrize("p", [1, 2])
def test_small_sizes_uniquely_produce_counter(p):
    prog = counter(p)
    assert uniquely_produces(prog.initial, prog.ruleset,
                             prog.expected_terminal, max_configs=2_000_000)


@pytest.mark.parametrize("p", [3, 4, 5, 6])
def test_simulation_reaches_exact_counter(p):
    prog = counter(p)
    want = prog.expected_terminal.canonicalize().signature()
    for seed in range(3):
        res = run(prog.initial, prog.ruleset, rng=rng_for(seed, p),
                  max_events=2_000_000)
        assert res.status == "terminal"
        assert res.config.canonicalize().signature() == want


def test_columns_spell_successive_binary_values():
    p = 4
    prog = counter(p)
    cfg = prog.expected_terminal
    for i in range(1 << p):
        bits = "".join(cfg.monomers[(i, -d)][1] for d in range(1, p + 1))
        assert int(bits, 2) == i


def test_rule_count_logarithmic():
    for p in (3, 6, 9, 12):
        prog = counter(p)
        assert len(prog.ruleset.rules) <= 150 * (p + 1)


def test_completion_time_fits_log_squared():
    ps = [3, 4, 5, 6, 7]
    ns = [1 << p for p in ps]
    means = []
    for p in ps:
        prog = counter(p)
        s = completion_times(prog.initial, prog.ruleset, replicates=8,
                             seed=13, max_events=2_000_000)
        means.append(s.mean)
    fit = fit_scaling(ns, means)
    assert fit["best"] in ("log", "log^2")
    assert fit["r2"]["log^2"] > 0.97
