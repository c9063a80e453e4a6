"""Exploration, verification and measurement utilities.

``explore`` walks the full reachable set of configurations (under
canonical translation) by breadth-first search, which gives exact answers
for small systems: every terminal configuration, and whether the system
can only ever produce one result (``uniquely_produces``).

Timing helpers run replicate simulations and summarize completion times;
``fit_scaling`` compares candidate growth laws by least squares.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import kinetics
from .kinetics import apply_event, enumerate_events, rng_for, run
from .model import Bond, Configuration
from .rules import RuleSet


@dataclass
class Exploration:
    """Reachable state graph.  Nodes are canonical signatures."""
    configs: dict = field(default_factory=dict)   # signature -> Configuration
    edges: dict = field(default_factory=dict)     # signature -> set of sigs
    complete: bool = True                          # False if limit was hit

    @property
    def terminals(self) -> list[Configuration]:
        return [self.configs[s] for s, nxt in sorted(self.edges.items())
                if not nxt]

    def __len__(self):
        return len(self.configs)


def explore(config: Configuration, ruleset: RuleSet, *,
            agitation: bool = False,
            max_configs: int = 100_000) -> Exploration:
    """Breadth-first search of every configuration reachable from config.

    Configurations are identified up to translation, so freely diffusing
    systems still have a finite graph when their relative geometry does.
    Stops early (``complete=False``) after max_configs nodes.
    """
    out = Exploration()
    start = config.canonicalize()
    queue = [start]
    out.configs[start.signature()] = start
    while queue:
        cur = queue.pop()
        sig = cur.signature()
        nxt = set()
        for ev in enumerate_events(cur, ruleset, agitation=agitation):
            succ = cur.copy()
            apply_event(succ, ruleset, ev)
            succ = succ.canonicalize()
            ssig = succ.signature()
            nxt.add(ssig)
            if ssig not in out.configs:
                if len(out.configs) >= max_configs:
                    out.complete = False
                    continue
                out.configs[ssig] = succ
                queue.append(succ)
        out.edges[sig] = nxt
    return out


def uniquely_produces(config: Configuration, ruleset: RuleSet,
                      target: Configuration, *,
                      agitation: bool = False,
                      max_configs: int = 100_000) -> bool:
    """True when every run of the system can only end in ``target``.

    Checks, by exhaustive search, that (a) the reachable set is finite,
    (b) every terminal configuration equals target up to translation, and
    (c) every reachable configuration can still reach a terminal one.
    """
    ex = explore(config, ruleset, agitation=agitation,
                 max_configs=max_configs)
    if not ex.complete:
        raise RuntimeError(f"state space exceeds {max_configs} configurations")
    want = target.canonicalize().signature()
    term_sigs = {s for s, nxt in ex.edges.items() if not nxt}
    if term_sigs != {want}:
        return False
    # reverse reachability from the terminal set
    rev: dict = {s: set() for s in ex.edges}
    for s, nxt in ex.edges.items():
        for t in nxt:
            rev[t].add(s)
    seen = set(term_sigs)
    stack = list(term_sigs)
    while stack:
        for pred in rev[stack.pop()]:
            if pred not in seen:
                seen.add(pred)
                stack.append(pred)
    return len(seen) == len(ex.edges)


# -- timing studies -----------------------------------------------------

@dataclass
class TimingSummary:
    times: np.ndarray
    events: np.ndarray

    @property
    def mean(self) -> float:
        return float(np.mean(self.times))

    @property
    def std(self) -> float:
        return float(np.std(self.times, ddof=1))

    @property
    def stderr(self) -> float:
        return self.std / math.sqrt(len(self.times))


def completion_times(config: Configuration, ruleset: RuleSet, *,
                     replicates: int = 100, seed: int = 0,
                     max_events: int | None = None,
                     stop_when=None) -> TimingSummary:
    """Simulate replicate runs to termination and collect the times.

    ``stop_when(config)`` (if given) ends a run early, and its time is the
    moment the predicate first holds.  Raises if a run hits max_events
    without finishing.
    """
    times = []
    events = []
    for i in range(replicates):
        rng = rng_for(seed, i)
        if stop_when is None:
            res = run(config, ruleset, rng=rng, max_events=max_events)
            if res.status != "terminal":
                raise RuntimeError(f"replicate {i} did not terminate "
                                   f"within {max_events} events")
        else:
            res = _run_until(config, ruleset, rng, stop_when, max_events)
        times.append(res.time)
        events.append(res.events)
    return TimingSummary(np.array(times), np.array(events))


def _run_until(config, ruleset, rng, stop_when, max_events):
    hit = {}

    def watch(c, t, ev):
        if not hit and stop_when(c):
            hit["t"] = t
            hit["n"] = True

    if stop_when(config):
        return kinetics.RunResult(config.copy(), 0.0, 0, "terminal")
    res = run(config, ruleset, rng=rng, max_events=max_events,
              on_event=watch)
    if "t" not in hit:
        raise RuntimeError("run ended before the condition held")
    return kinetics.RunResult(res.config, hit["t"], res.events, "terminal")


# -- scaling fits -------------------------------------------------------

SCALING_MODELS = {
    "log": lambda n: np.log2(n),
    "log^2": lambda n: np.log2(n) ** 2,
    "sqrt": np.sqrt,
    "linear": lambda n: np.asarray(n, dtype=float),
}


def fit_scaling(ns, ts, models=None) -> dict:
    """Least-squares fit t ~ a*f(n) + b for each candidate growth law.

    Returns {"best": name, "r2": {name: r2}, "coef": {name: (a, b)}}.
    """
    ns = np.asarray(ns, dtype=float)
    ts = np.asarray(ts, dtype=float)
    models = models or SCALING_MODELS
    r2 = {}
    coef = {}
    ss_tot = float(np.sum((ts - ts.mean()) ** 2))
    for name, f in models.items():
        x = f(ns)
        a_mat = np.column_stack([x, np.ones_like(x)])
        sol, *_ = np.linalg.lstsq(a_mat, ts, rcond=None)
        resid = ts - a_mat @ sol
        r2[name] = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot else 1.0
        coef[name] = (float(sol[0]), float(sol[1]))
    best = max(r2, key=r2.get)
    return {"best": best, "r2": r2, "coef": coef}


# -- kernel benchmarks --------------------------------------------------

def _rigid_line(n: int) -> Configuration:
    c = Configuration()
    for i in range(n):
        c.add_monomer((i, 0), "a")
        if i:
            c.set_bond((i - 1, 0), (i, 0), Bond.RIGID)
    return c


def time_movable_query(n: int, repeats: int = 5,
                       backend: str | None = None) -> float:
    """Seconds per movable-set query on a rigid n-monomer chain.

    The arm sits on the chain side, so the query must collect all n - 1
    dragged monomers (worst case for the greedy frontier)."""
    config = _rigid_line(n)
    view = kinetics.PackedView(config,
                               backend=kinetics.get_kernel_module(backend))
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        s = view.movable_set((n - 2, 0), (n - 1, 0), (0, 1))
        best = min(best, time.perf_counter() - t0)
        assert s is not None and len(s) == n - 1
    return best


def benchmark_kernels(sizes=(1000, 10_000), repeats: int = 5) -> dict:
    """Per-query times for both kernel backends at each size."""
    out = {}
    for name in ("c", "python"):
        try:
            kinetics.get_kernel_module(name)
        except ImportError:
            continue
        out[name] = {n: time_movable_query(n, repeats, backend=name)
                     for n in sizes}
    return out


# -- brute-force translation-set oracles --------------------------------
#
# A subset S of monomers is a valid translation set for offset v when no
# member's target cell is occupied by a non-member, every rigid bond has
# both endpoints inside or outside S, and every flexible bond crossing
# the boundary still joins adjacent cells after S translates.  The
# minimal valid set containing a seed monomer is found by exhaustive
# subset enumeration -- exponential, usable only for small inputs, and
# therefore a trustworthy cross-check for the fast kernel.

def _subset_valid(config: Configuration, subset: frozenset, v,
                  skip=None) -> bool:
    from . import grid
    for p in subset:
        q = grid.add(p, v)
        if q in config.monomers and q not in subset:
            return False
    for (a, b), t in config.bonds.items():
        if skip is not None and (a, b) == skip:
            continue
        ina, inb = a in subset, b in subset
        if ina == inb:
            continue
        if t is Bond.RIGID:
            return False
        moved, still = (a, b) if ina else (b, a)
        if not grid.are_adjacent(grid.add(moved, v), still):
            return False
    return True


def _minimal_valid(config: Configuration, seed, v, skip=None):
    others = [p for p in sorted(config.monomers) if p != seed]
    valid = []
    for mask in range(1 << len(others)):
        s = frozenset([seed] + [p for i, p in enumerate(others)
                                if mask >> i & 1])
        if _subset_valid(config, s, v, skip):
            valid.append(s)
    best = min(valid, key=len)
    for s in valid:
        if not best <= s:
            raise AssertionError(f"minimal set not unique: {best} vs {s}")
    return set(best)


def agitation_set_oracle(config: Configuration, p, v):
    """Minimal valid translation set containing p, by exhaustive search."""
    return _minimal_valid(config, p, v)


def movable_set_oracle(config: Configuration, arm, base, v):
    """Movable set by exhaustive search; None when movement is blocked."""
    from .model import bond_key
    skip = bond_key(arm, base)
    if skip not in config.bonds:
        skip = None
    s = _minimal_valid(config, arm, v, skip)
    return None if base in s else s


def random_small_config(rng, n_min=2, n_max=10, window=5, states="abc",
                        bond_weights=(1, 1, 1)) -> Configuration:
    """Random small configuration: monomers in a window, each adjacent
    pair bonded null/rigid/flexible with the given weights."""
    from . import grid
    n = int(rng.integers(n_min, n_max + 1))
    cells = [(x, y) for x in range(window) for y in range(window)]
    picks = rng.choice(len(cells), size=n, replace=False)
    config = Configuration()
    for i in picks:
        config.add_monomer(cells[i], states[int(rng.integers(len(states)))])
    total = sum(bond_weights)
    opts = [None, Bond.RIGID, Bond.FLEXIBLE]
    probs = [w / total for w in bond_weights]
    for a in sorted(config.monomers):
        for b in grid.neighbors(a):
            if b in config.monomers and a < b:
                t = opts[int(rng.choice(3, p=probs))]
                config.set_bond(a, b, t)
    return config
