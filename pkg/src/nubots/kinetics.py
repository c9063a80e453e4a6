"""Continuous-time dynamics.

Each applicable rule match is an event of rate 1; a movement rule
contributes one event per arm choice whose movable set is non-empty.
With agitation enabled every monomer additionally contributes six
translation events of rate 1.  The next event fires after an
Exponential(total_rate) holding time and is chosen uniformly.

The event list is recomputed from scratch every step (no caching), so
applicability is always evaluated against the current configuration.

Candidate ordering is deterministic: rule events sorted by
(p1, ring index of u, rule id, arm), agitation events by
(position, ring index of v), appended after the rule events.  All
randomness flows through a numpy PCG64 generator; ``rng_for(seed, i)``
derives the generator for replicate i of a study via SeedSequence
spawning, and the base seed is recorded in trace headers.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from . import grid
from .grid import DIRECTIONS, Point, Vector
from .model import Bond, Configuration
from .rules import EMPTY, Rule, RuleSet

try:  # compiled kernel, with pure-Python fallback
    from . import _kernel as _backend
except ImportError:  # pragma: no cover - depends on build environment
    from . import _fallback as _backend

KERNEL_BACKEND = _backend.BACKEND

_BOND_CODE = {Bond.RIGID: 1, Bond.FLEXIBLE: 2}


def get_kernel_module(name: str | None = None):
    """Kernel module by name ('c' or 'python'); default is the active one."""
    if name is None:
        return _backend
    if name == "python":
        from . import _fallback
        return _fallback
    if name == "c":
        from . import _kernel
        return _kernel
    raise ValueError(f"unknown kernel backend {name!r}")


class PackedView:
    """Immutable packed snapshot of a configuration for kernel queries.

    Monomer indices follow sorted position order, so results are
    deterministic.
    """

    __slots__ = ("pts", "index", "kernel")

    def __init__(self, config: Configuration, backend=None):
        backend = backend or _backend
        pts = sorted(config.monomers)
        index = {p: i for i, p in enumerate(pts)}
        n = len(pts)
        nbr_idx = [-1] * (6 * n)
        nbr_bond = [0] * (6 * n)
        for (a, b), t in config.bonds.items():
            ia = index[a]
            ib = index[b]
            da = grid.RING_INDEX[grid.sub(b, a)]
            db = grid.RING_INDEX[grid.sub(a, b)]
            code = _BOND_CODE[t]
            nbr_idx[ia * 6 + da] = ib
            nbr_bond[ia * 6 + da] = code
            nbr_idx[ib * 6 + db] = ia
            nbr_bond[ib * 6 + db] = code
        self.pts = pts
        self.index = index
        self.kernel = backend.Kernel(pts, index, nbr_idx, nbr_bond)

    def agitation_set(self, p: Point, v: Vector) -> set[Point]:
        idxs = self.kernel.agitation_set(self.index[p], v[0], v[1])
        return {self.pts[i] for i in idxs}

    def movable_set(self, arm: Point, base: Point, v: Vector) -> set[Point] | None:
        idxs = self.kernel.movable_set(self.index[arm], self.index[base],
                                       v[0], v[1])
        if idxs is None:
            return None
        return {self.pts[i] for i in idxs}


def agitation_set(config: Configuration, p: Point, v: Vector) -> set[Point]:
    """A(C, p, v): minimal set containing p translatable by v."""
    return PackedView(config).agitation_set(p, v)


def movable_set(config: Configuration, arm: Point, base: Point,
                v: Vector) -> set[Point] | None:
    """M(C, arm, base, v), or None when the movement is blocked."""
    return PackedView(config).movable_set(arm, base, v)


def is_stable(config: Configuration) -> bool:
    """True when every agitation set is the entire monomer set.

    A configuration whose monomers form a single rigidly-bonded component
    is always stable; the full 6n-set check only runs otherwise.
    """
    n = len(config)
    if n <= 1:
        return True
    comps = config.components(rigid_only=True)
    if len(comps) == 1 and len(comps[0]) == n:
        return True
    view = PackedView(config)
    for i in range(n):
        for v in DIRECTIONS:
            if len(view.kernel.agitation_set(i, v[0], v[1])) != n:
                return False
    return True


# -- events -------------------------------------------------------------

# Event tuples:
#   ("rule", rid, p1, p2)        non-movement match at (p1, p2 = p1+u)
#   ("move", rid, p1, arm)       movement match, arm in (1, 2)
#   ("agit", p, d)               agitation of monomer p along DIRECTIONS[d]
Event = tuple


def movement_vector(rule: Rule, arm: int) -> Vector:
    """Translation applied to the arm monomer's movable set."""
    if arm == 2:
        return grid.sub(rule.up, rule.u)
    return grid.sub(rule.u, rule.up)


def enumerate_events(config: Configuration, ruleset: RuleSet,
                     agitation: bool = False,
                     view: PackedView | None = None) -> list[Event]:
    """All applicable events, deterministically ordered."""
    mono = config.monomers
    out = []
    need_view = view
    for p in mono:
        s1 = mono[p]
        for d, u in enumerate(DIRECTIONS):
            p2 = grid.add(p, u)
            s2 = mono.get(p2)
            cands = ruleset.lookup(s1, s2, u)
            if cands:
                b = config.bond(p, p2) if s2 is not EMPTY else None
                for r in cands:
                    if r.b != b:
                        continue
                    if not r.is_movement:
                        out.append((p, d, r.rid, 0, ("rule", r.rid, p, p2)))
                    else:
                        if need_view is None:
                            need_view = PackedView(config)
                        for arm in (1, 2):
                            v = movement_vector(r, arm)
                            ap, bp = (p, p2) if arm == 1 else (p2, p)
                            if need_view.movable_set(ap, bp, v) is not None:
                                out.append((p, d, r.rid, arm,
                                            ("move", r.rid, p, arm)))
        # patterns with an empty s1 side: p1 empty, p2 = this monomer
        for d, u in enumerate(DIRECTIONS):
            p1 = grid.sub(p, u)
            if p1 in mono:
                continue
            for r in ruleset.lookup(EMPTY, s1, u):
                out.append((p1, d, r.rid, 0, ("rule", r.rid, p1, p)))
    out.sort(key=lambda e: e[:4])
    events = [e[4] for e in out]
    if agitation:
        for p in sorted(mono):
            for d in range(6):
                events.append(("agit", p, d))
    return events


def apply_event(config: Configuration, ruleset: RuleSet, event: Event) -> None:
    """Apply one event in place."""
    kind = event[0]
    if kind == "agit":
        _, p, d = event
        v = DIRECTIONS[d]
        moved = agitation_set(config, p, v)
        config.translate_set(moved, v)
        return
    if kind == "rule":
        _, rid, p1, p2 = event
        r = ruleset.rules[rid]
        _apply_nonmove(config, r, p1, p2)
        return
    if kind == "move":
        _, rid, p1, arm = event
        r = ruleset.rules[rid]
        p2 = grid.add(p1, r.u)
        v = movement_vector(r, arm)
        ap, bp = (p1, p2) if arm == 1 else (p2, p1)
        moved = movable_set(config, ap, bp, v)
        if moved is None:
            raise RuntimeError("movement event applied while blocked")
        # drop the arm-base bond before translating; the rhs bond is
        # written back afterwards
        config.set_bond(p1, p2, None)
        config.translate_set(moved, v)
        n1 = grid.add(p1, v) if arm == 1 else p1
        n2 = grid.add(p2, v) if arm == 2 else p2
        config.set_state(n1, r.s1p)
        config.set_state(n2, r.s2p)
        config.set_bond(n1, n2, r.bp)
        return
    raise ValueError(f"unknown event {event!r}")


def _apply_nonmove(config: Configuration, r: Rule, p1: Point, p2: Point) -> None:
    if r.s1 is EMPTY:
        if r.s1p is EMPTY:
            config.set_state(p2, r.s2p)
        else:
            config.add_monomer(p1, r.s1p)
            config.set_state(p2, r.s2p)
            config.set_bond(p1, p2, r.bp)
        return
    if r.s2 is EMPTY:
        if r.s2p is EMPTY:
            config.set_state(p1, r.s1p)
        else:
            config.add_monomer(p2, r.s2p)
            config.set_state(p1, r.s1p)
            config.set_bond(p1, p2, r.bp)
        return
    if r.s1p is EMPTY:
        config.remove_monomer(p1)
        config.set_state(p2, r.s2p)
        return
    if r.s2p is EMPTY:
        config.remove_monomer(p2)
        config.set_state(p1, r.s1p)
        return
    config.set_state(p1, r.s1p)
    config.set_state(p2, r.s2p)
    config.set_bond(p1, p2, r.bp)


# -- simulation ---------------------------------------------------------

def rng_for(seed: int, *stream: int) -> np.random.Generator:
    """Deterministic generator; extra ints select parallel substreams."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), *map(int, stream)]))


@dataclass
class RunResult:
    config: Configuration
    time: float
    events: int
    status: str  # "terminal" | "limit"
    trace: list[str] | None = None
    snapshots: list[Configuration] = field(default_factory=list)


def _format_point(p: Point) -> str:
    return f"{p[0]},{p[1]}"


def format_trace_event(t: float, event: Event, ruleset: RuleSet) -> str:
    kind = event[0]
    if kind == "agit":
        _, p, d = event
        p2 = grid.add(p, DIRECTIONS[d])
        return (f"t={t!r} kind=agit rule=- p1={_format_point(p)}"
                f" p2={_format_point(p2)} arm=-")
    if kind == "rule":
        _, rid, p1, p2 = event
        return (f"t={t!r} kind=nonmove rule={rid} p1={_format_point(p1)}"
                f" p2={_format_point(p2)} arm=-")
    _, rid, p1, arm = event
    p2 = grid.add(p1, ruleset.rules[rid].u)
    return (f"t={t!r} kind=move rule={rid} p1={_format_point(p1)}"
            f" p2={_format_point(p2)} arm={arm}")


def trace_header(ruleset: RuleSet, config: Configuration, seed,
                 agitation: bool) -> list[str]:
    from . import io_render

    rh = hashlib.sha256(io_render.format_rules(ruleset).encode()).hexdigest()
    ch = hashlib.sha256(io_render.format_config(config).encode()).hexdigest()
    return [
        "# nubot-trace v1",
        f"# seed={seed}",
        f"# agitation={int(agitation)}",
        f"# rules=sha256:{rh}",
        f"# config=sha256:{ch}",
    ]


def run(config: Configuration, ruleset: RuleSet, *,
        seed: int = 0,
        rng: np.random.Generator | None = None,
        agitation: bool = False,
        max_events: int | None = None,
        max_time: float | None = None,
        collect_trace: bool = False,
        snapshot_every: int | None = None,
        on_event=None) -> RunResult:
    """Simulate until no event is applicable or a limit is reached.

    The input configuration is copied; pass ``rng`` to reuse a generator
    (replicate studies), otherwise one is derived from ``seed``.
    """
    config = config.copy()
    if rng is None:
        rng = rng_for(seed)
    trace = None
    if collect_trace:
        trace = trace_header(ruleset, config, seed, agitation)
    snapshots = []
    t = 0.0
    n_events = 0
    status = "terminal"
    while True:
        events = enumerate_events(config, ruleset, agitation=agitation)
        if not events:
            break
        if max_events is not None and n_events >= max_events:
            status = "limit"
            break
        k = len(events)
        t += rng.exponential(1.0 / k)
        if max_time is not None and t > max_time:
            status = "limit"
            break
        ev = events[rng.integers(k)]
        apply_event(config, ruleset, ev)
        n_events += 1
        if trace is not None:
            trace.append(format_trace_event(t, ev, ruleset))
        if on_event is not None:
            on_event(config, t, ev)
        if snapshot_every and n_events % snapshot_every == 0:
            snapshots.append(config.copy())
    return RunResult(config, t, n_events, status, trace, snapshots)


def replay(config: Configuration, ruleset: RuleSet, events) -> Configuration:
    """Re-apply parsed trace events (dicts from ``io_render.parse_trace``)
    and return the resulting configuration."""
    config = config.copy()
    for f in events:
        p1 = tuple(map(int, f["p1"].split(",")))
        p2 = tuple(map(int, f["p2"].split(",")))
        kind = f["kind"]
        if kind == "agit":
            d = DIRECTIONS.index(grid.sub(p2, p1))
            apply_event(config, ruleset, ("agit", p1, d))
        elif kind == "nonmove":
            apply_event(config, ruleset, ("rule", int(f["rule"]), p1, p2))
        elif kind == "move":
            apply_event(config, ruleset,
                        ("move", int(f["rule"]), p1, int(f["arm"])))
        else:
            raise ValueError(f"unknown trace event kind {kind!r}")
    return config
