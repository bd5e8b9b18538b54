"""Command-line front end.

Subcommands: test, sample, enumerate, mle, simulate. Exit codes: 0 ok,
2 usage, 3 input parse, 4 non-graphical degree sequence, 5 MLE failure.
Seeds default to a fresh random value but are always echoed so any run can
be repeated exactly.
"""

from __future__ import annotations

import argparse
import secrets
import sys
from pathlib import Path

from .beta_model import MleConvergenceError, fit_mle, link_probability_matrix
from .enumeration import DEFAULT_NODE_CAP, enumerate_graphs, exact_distribution
from .game import EXTERNALITY_KINDS, SWEEP_COLUMNS, sweep
from .graph import EdgeListParseError, Graph, degree_sequence, parse_edge_list
from .graphical import NotGraphicalError, require_graphical
from .randomization import estimate_cardinality, run_test
from .sampling import sample_batch
from .stats import (
    STATISTIC_NAMES,
    transitivity_index,
    triangle_count,
    two_star_count,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_NOT_GRAPHICAL = 4
EXIT_MLE = 5

DRAW_LOG_STATS = ("triangle_count", "two_star_count", "transitivity_index")


def _fresh_seed() -> int:
    return secrets.randbits(63)


def _parse_degrees(text: str) -> tuple[int, ...]:
    try:
        parts = [p for p in text.replace(" ", "").split(",") if p != ""]
        degrees = tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree list {text!r}; expected e.g. 3,2,2,1")
    if not degrees:
        raise argparse.ArgumentTypeError("degree list is empty")
    if any(d < 0 for d in degrees):
        raise argparse.ArgumentTypeError("degrees must be nonnegative")
    return degrees


def _parse_gamma_grid(text: str) -> tuple[float, ...]:
    try:
        grid = tuple(float(p) for p in text.split(",") if p != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad gamma grid {text!r}; expected e.g. 0,0.5,1")
    if not grid:
        raise argparse.ArgumentTypeError("gamma grid is empty")
    if any(x < 0 for x in grid):
        raise argparse.ArgumentTypeError("gamma values must be >= 0")
    return grid


def _load_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise EdgeListParseError(f"cannot read {path}: {err}") from err
    return parse_edge_list(text)


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _cmd_test(args) -> int:
    g = _load_graph(args.input)
    seed = args.seed if args.seed is not None else _fresh_seed()
    report = run_test(
        g,
        stat=args.statistic,
        B=args.draws,
        alpha=args.alpha,
        seed=seed,
        threads=args.threads,
    )
    Path(args.out).write_text(report.to_json() + "\n", encoding="utf-8")
    print(
        f"statistic={report.statistic} observed={report.observed!r} "
        f"p_geq={report.p_value_geq!r} p_gt={report.p_value_gt!r} "
        f"ess={report.ess!r} seed={report.seed}"
    )
    return EXIT_OK


def _cmd_sample(args) -> int:
    if args.input is not None:
        degrees = degree_sequence(_load_graph(args.input)).degrees
    else:
        degrees = args.degrees
    require_graphical(degrees)
    seed = args.seed if args.seed is not None else _fresh_seed()
    draws = sample_batch(degrees, args.draws, seed, threads=args.threads)
    card = estimate_cardinality(draws)
    if args.out is not None:
        lines = [",".join(("b", "log_c", "log_sigma") + DRAW_LOG_STATS)]
        for b, d in enumerate(draws, start=1):
            stats_part = (
                float(triangle_count(d.graph)),
                float(two_star_count(d.graph)),
                transitivity_index(d.graph),
            )
            cells = (b, d.log_c, d.log_sigma) + stats_part
            lines.append(",".join(_fmt(c) for c in cells))
        Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(
        f"draws={args.draws} log_cardinality={card.log_estimate!r} "
        f"cardinality={card.estimate!r} seed={seed}"
    )
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    require_graphical(args.degrees)
    graphs = enumerate_graphs(args.degrees, max_nodes=args.max_nodes)
    print(f"{len(graphs)} graphs")
    if args.statistic is not None:
        values, masses = exact_distribution(args.degrees, args.statistic)
        for v, m in zip(values, masses):
            print(f"{_fmt(v)}\t{m}")
    return EXIT_OK


def _cmd_mle(args) -> int:
    g = _load_graph(args.input)
    result = fit_mle(g.degrees, tol=args.tol, max_iter=args.max_iter)
    expected = link_probability_matrix(result.a).sum(axis=1)
    lines = ["label,a,expected_degree"]
    for i in range(g.n):
        lines.append(f"{g.labels[i]},{_fmt(float(result.a[i]))},{_fmt(float(expected[i]))}")
    text = "\n".join(lines) + "\n"
    if args.out is not None:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(
        f"converged after {result.iterations} iterations, "
        f"max degree residual {result.residual!r}",
        file=sys.stderr,
    )
    return EXIT_OK


def _cmd_simulate(args) -> int:
    seed = args.seed if args.seed is not None else _fresh_seed()
    rows = sweep(
        n=args.n,
        gamma_grid=args.gamma_grid,
        kind=args.kind,
        reps=args.reps,
        seed=seed,
    )
    lines = [",".join(SWEEP_COLUMNS)]
    for row in rows:
        lines.append(",".join(_fmt(row[c]) for c in SWEEP_COLUMNS))
    text = "\n".join(lines) + "\n"
    if args.out is not None:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(f"rows={len(rows)} seed={seed}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netnull",
        description="Exact conditional randomization tests for network externalities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_test = sub.add_parser("test", help="randomization test on an observed graph")
    p_test.add_argument("--input", required=True, help="edge list file")
    p_test.add_argument("--statistic", required=True, choices=STATISTIC_NAMES)
    p_test.add_argument("--draws", type=int, default=1000)
    p_test.add_argument("--alpha", type=float, default=0.05)
    p_test.add_argument("--seed", type=int, default=None)
    p_test.add_argument("--out", required=True, help="TestReport JSON path")
    p_test.add_argument("--threads", type=int, default=1)
    p_test.set_defaults(func=_cmd_test)

    p_sample = sub.add_parser("sample", help="reference draws for a degree sequence")
    src = p_sample.add_mutually_exclusive_group(required=True)
    src.add_argument("--degrees", type=_parse_degrees, help="comma-separated degrees")
    src.add_argument("--input", help="edge list file supplying the degree sequence")
    p_sample.add_argument("--draws", type=int, default=1000)
    p_sample.add_argument("--seed", type=int, default=None)
    p_sample.add_argument("--out", default=None, help="per-draw CSV log path")
    p_sample.add_argument("--threads", type=int, default=1)
    p_sample.set_defaults(func=_cmd_sample)

    p_enum = sub.add_parser("enumerate", help="exhaustive graph enumeration (small n)")
    p_enum.add_argument("--degrees", type=_parse_degrees, required=True)
    p_enum.add_argument("--statistic", choices=STATISTIC_NAMES, default=None)
    p_enum.add_argument("--max-nodes", type=int, default=DEFAULT_NODE_CAP)
    p_enum.set_defaults(func=_cmd_enumerate)

    p_mle = sub.add_parser("mle", help="degree-heterogeneity MLE for a graph")
    p_mle.add_argument("--input", required=True, help="edge list file")
    p_mle.add_argument("--out", default=None, help="CSV path (stdout if omitted)")
    p_mle.add_argument("--tol", type=float, default=1e-10)
    p_mle.add_argument("--max-iter", type=int, default=5000)
    p_mle.set_defaults(func=_cmd_mle)

    p_sim = sub.add_parser("simulate", help="pairwise-stable network sweep over gamma")
    p_sim.add_argument("--n", type=int, required=True)
    p_sim.add_argument("--gamma-grid", type=_parse_gamma_grid, required=True)
    p_sim.add_argument("--kind", choices=EXTERNALITY_KINDS, default="transitivity")
    p_sim.add_argument("--reps", type=int, default=1)
    p_sim.add_argument("--seed", type=int, default=None)
    p_sim.add_argument("--out", default=None, help="sweep CSV path (stdout if omitted)")
    p_sim.set_defaults(func=_cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EdgeListParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except NotGraphicalError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_NOT_GRAPHICAL
    except MleConvergenceError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_MLE
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main(argv=None))
