"""The square builder: exact terminals, unique production for the
smallest size, and logarithmic completion-time scaling."""

import math

import pytest

from nubots.analysis import completion_times, fit_scaling, uniquely_produces
from nubots.kinetics import rng_for, run
from nubots.model import Bond
from nubots.programs.square import square


def _signature(config):
    return config.canonicalize().signature()


def test_rejects_bad_exponent():
    with pytest.raises(ValueError):
        square(0)


def test_expected_terminal_is_full_square():
    for p in (1, 2, 3):
        n = 1 << p
        prog = square(p)
        want = prog.expected_terminal
        assert len(want.monomers) == n * n
        xs = [pt[0] for pt in want.monomers]
        ys = [pt[1] for pt in want.monomers]
        assert max(xs) - min(xs) == n - 1
        assert max(ys) - min(ys) == n - 1
        for (x, y) in want.monomers:
            for d in ((1, 0), (0, 1)):
                other = (x + d[0], y + d[1])
                if other in want.monomers:
                    assert want.bond((x, y), other) == Bond.RIGID


def test_smallest_square_uniquely_produced():
    prog = square(1)
    assert uniquely_produces(prog.initial, prog.ruleset,
                             prog.expected_terminal, max_configs=50_000)


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_terminal_matches_across_seeds(p):
    prog = square(p)
    want = _signature(prog.expected_terminal)
    for seed in range(3):
        res = run(prog.initial.copy(), prog.ruleset,
                  rng=rng_for(seed, 20, p), max_events=2_000_000)
        assert res.status == "terminal"
        assert _signature(res.config) == want


def test_sixteen_monomers_for_side_four():
    prog = square(2)
    res = run(prog.initial.copy(), prog.ruleset, rng=rng_for(0, 21),
              max_events=200_000)
    assert res.status == "terminal"
    assert len(res.config.monomers) == 16


def test_mean_completion_time_scales_logarithmically():
    ns, means = [], []
    for p in (2, 3, 4):
        prog = square(p)
        summary = completion_times(prog.initial, prog.ruleset,
                                   replicates=30, seed=500 + p,
                                   max_events=2_000_000)
        ns.append(1 << p)
        means.append(summary.mean)
    fit = fit_scaling(ns, means)
    assert fit["best"] == "log"
    assert fit["r2"]["log"] > 0.98
    # logarithmic growth adds a near-constant amount per doubling of n,
    # while linear growth would double the increment each time
    first = means[1] - means[0]
    second = means[2] - means[1]
    assert second < 1.5 * first
