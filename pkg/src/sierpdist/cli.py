"""``sierpdist`` command-line front end.

Exit codes: 0 success, 2 parse or validation error, 3 no applicable method,
4 budget exceeded, 5 verification mismatch.
"""

from __future__ import annotations

import argparse
import os
import random
import statistics
import sys
import time
from pathlib import Path

from . import oracle, recursive as rec, trees, verify
from .base_graph import BaseGraph, read_graph, random_tree
from .errors import ApplicabilityError, BudgetExceededError, GraphParseError, GraphValidationError
from .words import check_level, format_word, parse_word

EXIT_OK, EXIT_PARSE, EXIT_APPLICABILITY, EXIT_BUDGET, EXIT_MISMATCH = 0, 2, 3, 4, 5

TREE_CLOSED_FORM = "tree-closed-form"
PATH_CLOSED_FORM = "path-closed-form"
ORACLE = "oracle"

FORCED_METHODS = {
    "algorithm-2": rec.triangle_free_dist,
    "bipartite": rec.bipartite_dist,
    "tree": lambda g, w, w2: rec.QueryResult(trees.tree_dist(trees.TreeBase(g), w, w2), rec.TREE),
}


class UsageError(Exception):
    """Bad command-line input that is not a graph-file problem."""


def default_budget() -> int:
    raw = os.environ.get("SIERPDIST_BUDGET")
    if raw is None:
        return oracle.DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"SIERPDIST_BUDGET must be an integer, got {raw!r}") from None


def _emit(args, machine: str, human: str) -> None:
    print(machine if args.format == "machine" else human)


def _load(args) -> BaseGraph:
    g = read_graph(args.graph)
    if args.budget < g.n:
        raise UsageError(f"budget {args.budget} is below the base order {g.n}")
    return g


def _level(args) -> int:
    try:
        check_level(args.t)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return args.t


def _word(text: str, g: BaseGraph, t: int):
    try:
        return parse_word(text, g.n, t)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _explicit(g: BaseGraph, t: int, budget: int) -> oracle.ExplicitSierpinski:
    return oracle.build_sierpinski(g, t, guard=budget)


# -- commands -------------------------------------------------------------------


def cmd_dist(args) -> int:
    g, t = _load(args), _level(args)
    w, w2 = _word(args.w, g, t), _word(args.w2, g, t)
    if args.method == "auto":
        res = rec.best_dist(
            g, w, w2,
            allow_oracle_fallback=args.fallback,
            budget=args.budget,
            assert_premiss_b=args.assert_premiss_b,
        )
    elif args.method == "conditional":
        res = rec.conditional_dist(g, w, w2, assert_premiss_b=args.assert_premiss_b)
    else:
        res = FORCED_METHODS[args.method](g, w, w2)
    human = f"d({format_word(w)}, {format_word(w2)}) = {res.distance}  [{res.method}]"
    if res.theta is not None:
        human += f"\n  lambda={res.lam} theta={res.theta}"
        if res.theta_prime is not None:
            human += f" lambda'={res.lam_prime} theta'={res.theta_prime}"
    _emit(args, f"dist={res.distance} method={res.method}", human)
    return EXIT_OK


def _tree_or_none(g: BaseGraph) -> trees.TreeBase | None:
    return trees.TreeBase(g) if g.is_tree() else None


def cmd_extremal(args) -> int:
    """``diameter`` and ``radius``."""
    g, t = _load(args), _level(args)
    T = _tree_or_none(g)
    if T is not None and g.n == 2:
        diameter, radius = trees.path_sierpinski_values(t)
        value, method = (diameter if args.command == "diameter" else radius), PATH_CLOSED_FORM
    elif T is not None:
        fn = trees.tree_sierpinski_diameter if args.command == "diameter" else trees.tree_sierpinski_radius
        value, method = fn(T, t), TREE_CLOSED_FORM
    else:
        S = _explicit(g, t, args.budget)
        fn = oracle.oracle_diameter if args.command == "diameter" else oracle.oracle_radius
        value, method = fn(S), ORACLE
    _emit(args, f"{args.command}={value} method={method}", f"{args.command} of S(G,{t}) = {value}  [{method}]")
    return EXIT_OK


def cmd_ecc(args) -> int:
    g, t = _load(args), _level(args)
    if (args.extreme is None) == (args.word is None):
        raise UsageError("give exactly one of --extreme VERTEX or a word")
    if args.extreme is not None:
        if not 0 <= args.extreme < g.n:
            raise UsageError(f"vertex {args.extreme} out of range 0..{g.n - 1}")
        w = (args.extreme,) * t
    else:
        w = _word(args.word, g, t)
    T = _tree_or_none(g)
    if args.extreme is not None and T is not None and g.n == 2:
        value, method = (1 << t) - 1, PATH_CLOSED_FORM
    elif args.extreme is not None and T is not None:
        value, method = trees.tree_extreme_ecc(T, args.extreme, t), TREE_CLOSED_FORM
    else:
        value, method = oracle.oracle_eccentricity(_explicit(g, t, args.budget), w), ORACLE
    _emit(args, f"ecc={value} method={method}", f"ecc({format_word(w)}) = {value}  [{method}]")
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load(args)
    cap = min(args.budget, verify.SWEEP_ORDER_CAP) if args.cap is None else args.cap
    levels = [t for t in verify.levels_within(g.n, cap) if t <= args.t_max]
    if args.t_max > (levels[-1] if levels else 0):
        raise BudgetExceededError(f"level {args.t_max} needs {g.n}^{args.t_max} vertices, cap is {cap}")
    rng = random.Random(args.seed)
    previous = None
    failed = False
    for t in levels:
        report, previous = verify.sweep_level(g, t, rng=rng, previous=previous, guard=cap)
        print(f"level={t} pairs={report.pairs} mismatches={report.mismatches}")
        if args.format == "human":
            for name, check in sorted(report.checks.items()):
                print(f"  {name}: compared={check.compared} mismatches={check.mismatches}")
                for example in check.examples:
                    print(f"    e.g. {example}")
        failed |= report.mismatches > 0
    S = previous
    for w_text, w2_text in args.probe or ():
        w, w2 = _word(w_text, g, S.t), _word(w2_text, g, S.t)
        want = oracle.oracle_dist(S, w, w2)
        try:
            res = rec.best_dist(g, w, w2)
            got, method = res.distance, res.method
            detail = ""
            if res.theta is not None:
                detail = f" theta={res.theta} lambda={res.lam}"
                if res.theta_prime is not None:
                    detail += f" theta'={res.theta_prime} lambda'={res.lam_prime}"
        except ApplicabilityError:
            got, method, detail = "n/a", "none", ""
        print(f"probe w={format_word(w)} w2={format_word(w2)} oracle={want} formula={got} method={method}{detail}")
        failed |= got != "n/a" and got != want
    return EXIT_MISMATCH if failed else EXIT_OK


def _median_ms(fn, inputs) -> float:
    times = []
    for item in inputs:
        start = time.perf_counter()
        fn(*item)
        times.append((time.perf_counter() - start) * 1e3)
    return statistics.median(times)


def cmd_bench(args) -> int:
    if args.graph is None:
        g = random_tree(args.random_tree, random.Random(args.seed))
    else:
        g = _load(args)
    t = _level(args)
    rng = random.Random(args.seed)

    def word():
        return tuple(rng.randrange(g.n) for _ in range(t))

    rows = []
    extreme_inputs = [(rng.randrange(g.n), word()) for _ in range(args.samples)]
    rows.append(("algorithm-1", _median_ms(lambda x, w: rec.extreme_to_word(g, x, w), extreme_inputs)))
    pair_inputs = [(word(), word()) for _ in range(args.samples)]
    try:
        rec.best_dist(g, *pair_inputs[0])
        rows.append(("best-dist", _median_ms(lambda w, w2: rec.best_dist(g, w, w2), pair_inputs)))
    except ApplicabilityError:
        rows.append(("best-dist", None))

    if g.n**t <= args.budget:
        start = time.perf_counter()
        S = _explicit(g, t, args.budget)
        build_ms = (time.perf_counter() - start) * 1e3
        query_ms = _median_ms(lambda w, w2: oracle.oracle_dist(S, w, w2), pair_inputs[: min(20, len(pair_inputs))])
        oracle_col = f"build={build_ms:.3f}ms query={query_ms:.3f}ms"
    else:
        oracle_col = "skipped"

    for name, ms in rows:
        value = "n/a" if ms is None else f"{ms:.4f}"
        print(f"method={name} n={g.n} t={t} median_ms={value} oracle={oracle_col}")
    return EXIT_OK


def cmd_export_dot(args) -> int:
    g, t = _load(args), _level(args)
    text = oracle.export_dot(_explicit(g, t, args.budget))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None, help="max vertices of an explicit S(G,t)")
    common.add_argument("--format", choices=("human", "machine"), default="human")

    def graph_arg(p, required=True):
        p.add_argument("--graph", required=required, help="edge-list file ('n m' header, then 'u v' lines)")

    parser = argparse.ArgumentParser(prog="sierpdist", description="Distances in generalized Sierpinski graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", parents=[common], help="distance between two words")
    graph_arg(p)
    p.add_argument("-t", type=int, required=True)
    p.add_argument("w")
    p.add_argument("w2")
    p.add_argument("--fallback", action="store_true", help="allow BFS on an explicit graph")
    p.add_argument("--assert-premiss-b", action="store_true", help="vouch for the longer-path condition")
    p.add_argument("--method", choices=("auto", "algorithm-2", "bipartite", "conditional", "tree"), default="auto")
    p.set_defaults(func=cmd_dist)

    for name in ("diameter", "radius"):
        p = sub.add_parser(name, parents=[common], help=f"{name} of S(G,t)")
        graph_arg(p)
        p.add_argument("-t", type=int, required=True)
        p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("ecc", parents=[common], help="eccentricity of a vertex of S(G,t)")
    graph_arg(p)
    p.add_argument("-t", type=int, required=True)
    p.add_argument("--extreme", type=int, help="base vertex x; queries x^t")
    p.add_argument("word", nargs="?")
    p.set_defaults(func=cmd_ecc)

    p = sub.add_parser("verify", parents=[common], help="compare every applicable formula with BFS")
    graph_arg(p)
    p.add_argument("--t-max", type=int, required=True)
    p.add_argument("--cap", type=int, default=None, help=f"max order per level (default {verify.SWEEP_ORDER_CAP})")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--probe", nargs=2, action="append", metavar=("W", "W2"), help="also report one pair at t-max")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="median query latency")
    graph_arg(p, required=False)
    p.add_argument("-t", type=int, required=True)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--random-tree", type=int, default=20, metavar="N", help="base when --graph is absent")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("export-dot", parents=[common], help="write S(G,t) as DOT")
    graph_arg(p)
    p.add_argument("-t", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.budget is None:
            args.budget = default_budget()
        return args.func(args)
    except (GraphParseError, GraphValidationError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ApplicabilityError as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return EXIT_APPLICABILITY
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
