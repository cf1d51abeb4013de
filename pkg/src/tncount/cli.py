"""Command-line front end.

Subcommands: ``count``, ``solve``, ``stats``, ``oracle``, ``entropy``,
``physics``, ``gen``. Reports go to stdout as aligned text or, with
``--json``, as a single-line JSON object with a fixed field set per
subcommand (model counts are serialised as decimal strings since they
exceed 64-bit ranges). Unknown flags are rejected.

Exit codes: 0 success; 1 input error (malformed DIMACS/expression,
bad parameters, non-branching resource guards); 2 branch budget
exceeded (see ``--force`` / ``--max-branch-vars``); 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .cnf import (
    DimacsError,
    Formula,
    generate_random_ksat,
    generate_rs_sat,
    parse_dimacs,
    to_dimacs,
)
from .counter import (
    DEFAULT_MAX_BRANCH_VARS,
    BranchBudgetError,
    count_models,
    is_satisfiable,
    predicted_cost,
)
from .expr import ExprSyntaxError, format_expression, generate_read_once
from .network import build_boolean_network, network_stats
from .oracle import brute_force_count, satisfying_table
from .state import Bipartition, dense_state, partition_trace, renyi_entropy, von_neumann_entropy

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    # keep exit code 2 reserved for the branch budget; usage errors are input errors
    def error(self, message: str) -> None:  # type: ignore[override]
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read_input(path: str) -> tuple[str, str]:
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read(), path


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report))
        return
    width = max(len(key) for key in report)
    for key, value in report.items():
        if key == "warnings":
            for warning in value:
                print(f"warning: {warning}", file=sys.stderr)
        else:
            print(f"{key.ljust(width)}  {value}")


def _load(args: argparse.Namespace) -> tuple[Formula, str, list[str]]:
    warnings: list[str] = []
    text, name = _read_input(args.path)
    formula = parse_dimacs(text, warnings)
    return formula, name, warnings


def _cmd_count(args: argparse.Namespace) -> int:
    formula, name, warnings = _load(args)
    result = count_models(
        formula,
        max_branch_vars=args.max_branch_vars,
        force=args.force,
        threads=args.threads,
    )
    report = {
        "input": name,
        "n": formula.num_vars,
        "m": formula.num_clauses,
        "g": result.stats.g,
        "c": result.stats.c,
        "d": result.stats.d,
        "model_count": str(result.model_count),
        "satisfiable": result.satisfiable,
        "branches_evaluated": result.branches_evaluated,
        "predicted_cost": predicted_cost(result.stats),
        "elapsed_ms": round(result.elapsed * 1000.0, 3),
        "warnings": warnings,
    }
    _emit(report, args.json)
    return 0


def _cmd_solve(args: argparse.Namespace) -> int:
    formula, name, warnings = _load(args)
    start = time.perf_counter()
    sat = is_satisfiable(
        formula,
        max_branch_vars=args.max_branch_vars,
        force=args.force,
        threads=args.threads,
    )
    stats = network_stats(build_boolean_network(formula))
    report = {
        "input": name,
        "n": formula.num_vars,
        "m": formula.num_clauses,
        "g": stats.g,
        "c": stats.c,
        "d": stats.d,
        "satisfiable": sat,
        "elapsed_ms": round((time.perf_counter() - start) * 1000.0, 3),
        "warnings": warnings,
    }
    _emit(report, args.json)
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    formula, name, warnings = _load(args)
    stats = network_stats(build_boolean_network(formula))
    report = {
        "input": name,
        "n": formula.num_vars,
        "m": formula.num_clauses,
        "g": stats.g,
        "c": stats.c,
        "d": stats.d,
        "branch_bound": stats.branch_bound,
        "predicted_cost": predicted_cost(stats),
        "warnings": warnings,
    }
    _emit(report, args.json)
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    formula, name, warnings = _load(args)
    start = time.perf_counter()
    count = brute_force_count(formula)
    report = {
        "input": name,
        "n": formula.num_vars,
        "m": formula.num_clauses,
        "model_count": str(count),
        "elapsed_ms": round((time.perf_counter() - start) * 1000.0, 3),
        "warnings": warnings,
    }
    _emit(report, args.json)
    return 0


def _parse_bipartition(text: str) -> Bipartition:
    try:
        traced = frozenset(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise ValueError(f"bipartition must be comma-separated integers, got {text!r}") from None
    return Bipartition(traced)


def _cmd_entropy(args: argparse.Namespace) -> int:
    formula, name, warnings = _load(args)
    part = _parse_bipartition(args.bipartition)
    start = time.perf_counter()
    state = dense_state(formula)
    if args.q == 1.0:
        value = von_neumann_entropy(state, part)
    else:
        value = renyi_entropy(state, part, args.q)
    report = {
        "input": name,
        "n": formula.num_vars,
        "bipartition": ",".join(str(v) for v in sorted(part.traced)),
        "q": args.q,
        "defined": value is not None,
        "entropy": value,
        "elapsed_ms": round((time.perf_counter() - start) * 1000.0, 3),
        "warnings": warnings,
    }
    _emit(report, args.json)
    return 0


def _cmd_physics(args: argparse.Namespace) -> int:
    formula, name, warnings = _load(args)
    start = time.perf_counter()
    trace = partition_trace(formula, args.beta)
    count = int(satisfying_table(formula).sum())
    report = {
        "input": name,
        "n": formula.num_vars,
        "beta": args.beta,
        "partition_trace": trace,
        "model_count": str(count),
        "elapsed_ms": round((time.perf_counter() - start) * 1000.0, 3),
        "warnings": warnings,
    }
    _emit(report, args.json)
    return 0


def _require(args: argparse.Namespace, names: list[str]) -> None:
    missing = [f"--{name}" for name in names if getattr(args, name) is None]
    if missing:
        raise ValueError(f"mode {args.mode!r} requires {', '.join(missing)}")


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.mode == "ksat":
        _require(args, ["n", "m", "k"])
        sys.stdout.write(to_dimacs(generate_random_ksat(args.n, args.m, args.k, args.seed)))
    elif args.mode == "rssat":
        _require(args, ["n", "r", "s"])
        sys.stdout.write(to_dimacs(generate_rs_sat(args.n, args.r, args.s, args.seed)))
    else:
        _require(args, ["leaves"])
        sys.stdout.write(format_expression(generate_read_once(args.leaves, args.seed)) + "\n")
    return 0


def _add_input_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("path", nargs="?", default="-", help="DIMACS file ('-' = stdin)")
    sub.add_argument("--json", action="store_true", help="one-line JSON report")


def _add_counter_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--max-branch-vars",
        type=int,
        default=DEFAULT_MAX_BRANCH_VARS,
        help=f"branch budget: refuse more than this many fan-out nodes (default {DEFAULT_MAX_BRANCH_VARS})",
    )
    sub.add_argument("--force", action="store_true", help="override the branch budget")
    sub.add_argument("--threads", type=int, default=0, help="worker threads (0 = auto)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tncount", description="Exact #SAT model counter")
    commands = parser.add_subparsers(dest="command", required=True)

    count = commands.add_parser("count", parents=[], help="exact model count")
    _add_input_flags(count)
    _add_counter_flags(count)
    count.set_defaults(handler=_cmd_count)

    solve = commands.add_parser("solve", help="satisfiability only (early exit allowed)")
    _add_input_flags(solve)
    _add_counter_flags(solve)
    solve.set_defaults(handler=_cmd_solve)

    stats = commands.add_parser("stats", help="network statistics, never branches")
    _add_input_flags(stats)
    stats.set_defaults(handler=_cmd_stats)

    oracle = commands.add_parser("oracle", help="brute-force count (n <= 24)")
    _add_input_flags(oracle)
    oracle.set_defaults(handler=_cmd_oracle)

    entropy = commands.add_parser("entropy", help="reduced-state entropy (n <= 14)")
    _add_input_flags(entropy)
    entropy.add_argument(
        "--bipartition",
        required=True,
        help="comma-separated variables of the traced-out side, e.g. '1,3'",
    )
    entropy.add_argument("--q", type=float, default=2.0, help="entropy order (1 = von Neumann)")
    entropy.set_defaults(handler=_cmd_entropy)

    physics = commands.add_parser("physics", help="partition trace at finite beta (n <= 14)")
    _add_input_flags(physics)
    physics.add_argument("--beta", type=float, default=50.0, help="inverse temperature")
    physics.set_defaults(handler=_cmd_physics)

    gen = commands.add_parser("gen", help="emit a generated instance on stdout")
    gen.add_argument("--mode", choices=["ksat", "rssat", "rof"], required=True)
    gen.add_argument("--seed", type=int, required=True, help="64-bit generator seed")
    gen.add_argument("--n", type=int, help="variables (ksat, rssat)")
    gen.add_argument("--m", type=int, help="clauses (ksat)")
    gen.add_argument("--k", type=int, help="clause width (ksat)")
    gen.add_argument("--r", type=int, help="clause width (rssat)")
    gen.add_argument("--s", type=int, help="max occurrences per variable (rssat)")
    gen.add_argument("--leaves", type=int, help="leaf count (rof)")
    gen.set_defaults(handler=_cmd_gen)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except BranchBudgetError as exc:
        print(
            f"tncount: {exc} (rerun with --force or a larger --max-branch-vars)",
            file=sys.stderr,
        )
        return 2
    except (DimacsError, ExprSyntaxError, ValueError, OSError) as exc:
        print(f"tncount: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # invariant violation: nothing above should leak
        print(f"tncount: internal error: {exc!r}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
