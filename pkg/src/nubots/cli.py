"""Command-line entry point: reproducible simulation workflows.

Subcommands: run, gen, bench, explore, check-movable, render.  All
randomness sits behind ``--seed`` flags, outputs are plain files, and
summaries go to standard output as stable ``key=value`` lines.

Exit codes: 0 success/terminal, 1 usage error, 2 parse/validation
error, 3 stopped at a limit, 4 verification failure.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
from pathlib import Path

from . import analysis, grid, io_render, kinetics
from .io_render import FormatError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_LIMIT = 3
EXIT_VERIFY = 4


class UsageError(Exception):
    pass


# -- generator registry -------------------------------------------------

def _pow2_exp(n: int, what: str) -> int:
    k = n.bit_length() - 1
    if n < 1 or (1 << k) != n:
        raise UsageError(f"{what} must be a power of two, got {n}")
    return k


def _need_tm(args):
    if not args.tm:
        raise UsageError(f"{args.name} requires --tm FILE")
    text = Path(args.tm).read_text()
    return io_render.parse_tm(text)


def _gen_program(args):
    from .programs.counter import counter
    from .programs.fastline import fast_line
    from .programs.pattern import pattern
    from .programs.shape import shape
    from .programs.simple import simple_line
    from .programs.square import square
    from .programs.syncline import sync_line

    name, n = args.name, args.n
    if name == "simpleline":
        return simple_line(n), "n"
    if name == "fastline":
        return fast_line(n), "log n"
    if name == "syncline":
        return sync_line(n), "log n"
    if name == "counter":
        return counter(_pow2_exp(n, "--n")), "log^2 n"
    if name == "square":
        return square(_pow2_exp(n, "--n")), "log n"
    if name == "shape":
        return shape(_need_tm(args), n), "log^2 n"
    if name == "pattern":
        return pattern(_need_tm(args), n), "n log n"
    raise UsageError(f"unknown generator {name!r}")


def state_count(ruleset) -> int:
    states = set()
    for rule in ruleset:
        states.update(s for s in (rule.s1, rule.s2, rule.s1p, rule.s2p)
                      if s is not None)
    return len(states)


# -- commands -----------------------------------------------------------

def _load_run_inputs(args):
    ruleset = io_render.parse_rules(Path(args.rules).read_text())
    config = io_render.parse_config(Path(args.init).read_text())
    return ruleset, config


def cmd_run(args) -> int:
    if (not args.until_terminal and args.max_events is None
            and args.max_time is None):
        raise UsageError("set a stop condition: --until-terminal, "
                         "--max-events or --max-time")
    ruleset, config = _load_run_inputs(args)
    wall0 = time.perf_counter()
    res = kinetics.run(config, ruleset,
                       seed=args.seed,
                       agitation=args.agitation,
                       max_events=args.max_events,
                       max_time=args.max_time,
                       collect_trace=args.trace is not None,
                       snapshot_every=args.snapshot_every)
    wall = time.perf_counter() - wall0
    if args.trace is not None:
        Path(args.trace).write_text("\n".join(res.trace) + "\n")
    if args.snapshot_every is not None and args.snapshot_dir is not None:
        out = Path(args.snapshot_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, snap in enumerate(res.snapshots):
            (out / f"frame{i:05d}.svg").write_text(
                io_render.render_svg(snap))
    x0, y0, x1, y1 = res.config.bounding_box()
    print(f"status={res.status}")
    print(f"events={res.events}")
    print(f"time={res.time!r}")
    print(f"wall={wall:.3f}")
    print(f"monomers={len(res.config.monomers)}")
    print(f"bbox={x0},{y0},{x1},{y1}")
    return EXIT_OK if res.status == "terminal" else EXIT_LIMIT


def cmd_gen(args) -> int:
    prog, scaling = _gen_program(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rules_text = io_render.format_rules(prog.ruleset)
    init_text = io_render.format_config(prog.initial)
    (out / "rules.txt").write_text(rules_text)
    (out / "init.txt").write_text(init_text)
    count = state_count(prog.ruleset)
    if prog.expected_terminal is not None:
        terminal_text = io_render.format_config(prog.expected_terminal)
        (out / "terminal.txt").write_text(terminal_text)
        digest = "sha256:" + hashlib.sha256(
            terminal_text.encode()).hexdigest()
    else:
        digest = "-"
    meta = [f"name={prog.name}",
            f"n={args.n}",
            f"ruleCount={len(prog.ruleset.rules)}",
            f"stateCount={count}",
            f"predictedScaling={scaling}",
            f"terminal={digest}"]
    (out / "program.meta").write_text("\n".join(meta) + "\n")
    print(f"stateCount={count}")
    print(f"predictedScaling={scaling}")
    return EXIT_OK


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    if not sizes or args.trials < 1:
        raise UsageError("need --sizes n1,n2,... and --trials >= 1")
    rows, failures = [], []
    ns, means = [], []
    for i, n in enumerate(sizes):
        ns_args = argparse.Namespace(name=args.family, n=n, tm=args.tm)
        prog, _ = _gen_program(ns_args)
        try:
            summary = analysis.completion_times(
                prog.initial, prog.ruleset,
                replicates=args.trials,
                seed=args.seed_base + i,
                max_events=args.max_events)
        except RuntimeError as e:
            failures.append(f"n={n} error={e}")
            rows.append(f"n={n} trials={args.trials} mean=- stderr=-")
            continue
        rows.append(f"n={n} trials={args.trials} "
                    f"mean={summary.mean:.4f} stderr={summary.stderr:.4f}")
        ns.append(n)
        means.append(summary.mean)
    if args.out:
        Path(args.out).write_text("\n".join(rows + failures) + "\n")
    for row in rows:
        print(row)
    for f in failures:
        print(f"failed {f}")
    if len(ns) >= 3:
        fit = analysis.fit_scaling(ns, means)
        print(f"best={fit['best']}")
        print(f"r2={fit['r2'][fit['best']]:.4f}")
    return EXIT_LIMIT if failures else EXIT_OK


def cmd_explore(args) -> int:
    ruleset, config = _load_run_inputs(args)
    ex = analysis.explore(config, ruleset,
                          agitation=args.agitation,
                          max_configs=args.max_configs)
    print(f"configs={len(ex)}")
    print(f"terminals={len(ex.terminals)}")
    print(f"complete={'yes' if ex.complete else 'no'}")
    if args.target:
        target = io_render.parse_config(Path(args.target).read_text())
        ok = analysis.uniquely_produces(config, ruleset, target,
                                        max_configs=args.max_configs)
        print(f"uniquely-produces={'yes' if ok else 'no'}")
        if not ok:
            return EXIT_VERIFY
    return EXIT_OK


def cmd_check_movable(args) -> int:
    rng = kinetics.rng_for(args.seed)
    checked = disagreements = 0
    for _ in range(args.random):
        config = analysis.random_small_config(rng)
        mono = sorted(config.monomers)
        for a in mono:
            for b in grid.neighbors(a):
                if b not in config.monomers:
                    continue
                for v in grid.DIRECTIONS:
                    got = kinetics.movable_set(config, a, b, v)
                    want = analysis.movable_set_oracle(config, a, b, v)
                    checked += 1
                    if got != want:
                        disagreements += 1
    print(f"checked={checked}")
    print(f"disagreements={disagreements}")
    return EXIT_OK if disagreements == 0 else EXIT_VERIFY


def cmd_render(args) -> int:
    config = io_render.parse_config(Path(args.init).read_text())
    if args.trace:
        _, events = io_render.parse_trace(Path(args.trace).read_text())
        if args.at_event is not None:
            events = events[:args.at_event]
        ruleset = io_render.parse_rules(Path(args.rules).read_text()) \
            if args.rules else None
        if ruleset is None:
            raise UsageError("--trace rendering requires --rules")
        config = kinetics.replay(config, ruleset, events)
    if args.ascii:
        print(io_render.render_ascii(config, labels=True))
        return EXIT_OK
    if not args.out:
        raise UsageError("give -o FILE for SVG output (or --ascii)")
    Path(args.out).write_text(io_render.render_svg(config))
    print(f"wrote={args.out}")
    return EXIT_OK


# -- argument parsing ---------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nubots",
        description="Simulate, generate and verify active self-assembly "
                    "programs on the triangular grid.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="simulate a rule set from a start "
                                   "configuration")
    p.add_argument("--rules", required=True)
    p.add_argument("--init", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-events", type=int, default=None)
    p.add_argument("--max-time", type=float, default=None)
    p.add_argument("--until-terminal", action="store_true")
    p.add_argument("--agitation", action="store_true")
    p.add_argument("--trace", default=None)
    p.add_argument("--snapshot-every", type=int, default=None)
    p.add_argument("--snapshot-dir", default=None)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("gen", help="emit a generated program as files")
    p.add_argument("name", choices=["simpleline", "fastline", "syncline",
                                    "counter", "square", "shape",
                                    "pattern"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tm", default=None,
                   help="machine description file (shape/pattern)")
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="replicate timing study with a "
                                     "scaling fit")
    p.add_argument("--family", required=True)
    p.add_argument("--sizes", required=True)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed-base", type=int, default=0)
    p.add_argument("--max-events", type=int, default=1_000_000)
    p.add_argument("--tm", default=None)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("explore", help="exhaustively walk reachable "
                                       "configurations")
    p.add_argument("--rules", required=True)
    p.add_argument("--init", required=True)
    p.add_argument("--agitation", action="store_true")
    p.add_argument("--max-configs", type=int, default=100_000)
    p.add_argument("--target", default=None)
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("check-movable", help="compare the movement "
                       "kernel against the exhaustive oracle")
    p.add_argument("--random", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check_movable)

    p = sub.add_parser("render", help="draw a configuration (SVG or "
                                      "ASCII)")
    p.add_argument("--init", required=True)
    p.add_argument("--rules", default=None)
    p.add_argument("--trace", default=None)
    p.add_argument("--at-event", type=int, default=None)
    p.add_argument("--ascii", action="store_true")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as e:
        if args.command in ("gen", "bench"):
            # generator preconditions are usage errors
            print(f"usage error: {e}", file=sys.stderr)
            return EXIT_USAGE
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
