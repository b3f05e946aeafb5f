"""Command line interface.

Subcommands: solve (dispatch a query to the right solver), generate
(emit instance files), verify (check a witness against an instance), and
crosscheck (run a solver and a brute-force oracle side by side). The
default solve output is a single witness line that verify can read back,
so the two commands compose through a pipe.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .core import ColoredDigraph, Query, Witness, dist_from_source, verify_witness
from .detour import solve_detour
from .instances import (
    CnfInput,
    PHSInput,
    gen_3sat_instance,
    gen_phs_instance,
    gen_random,
    parse_instance,
    read_dimacs,
    read_phs_sets,
    write_instance,
)
from .oracle import oracle_path, oracle_walk
from .path import solve_path, solve_r2_symmetric
from .walk import solve_r1, solve_walk, solve_walk_any_length

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2

MAX_AUTO_DETOUR = 4


class CliError(Exception):
    """Usage or input error; maps to exit code 2."""


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None


def _load_instance(path: str) -> tuple[ColoredDigraph, Query]:
    try:
        return parse_instance(_read_text(path))
    except ValueError as exc:
        raise CliError(f"bad instance: {exc}") from None


def _shortest_distance(g: ColoredDigraph) -> int | None:
    return dist_from_source(g)[g.t]


def _dispatch_auto(
    g: ColoredDigraph, query: Query, stats: dict
) -> tuple[Witness | None, str]:
    """Pick a solver for the path question, preferring polynomial shortcuts."""
    dist = _shortest_distance(g)
    if dist is None:
        return None, "unreachable"
    r, ell, mode = query.r, query.ell, query.mode
    if mode == "any":
        if r == 0:
            return solve_r1_or_r0(g, g.n - 1, r), "r0-bfs"
        if r == 1:
            return solve_r1(g, g.n - 1), "r1-bfs"
        return solve_path(g, query, stats=stats), "path-dp"
    if r == 0 and mode == "atmost":
        return solve_r1_or_r0(g, ell, r), "r0-bfs"
    if r == 1 and mode == "atmost":
        return solve_r1(g, ell), "r1-bfs"
    if (
        r == 2
        and ell == dist
        and g.is_symmetric()
        and not g.has_monochromatic_arc()
    ):
        return solve_r2_symmetric(g, ell, stats=stats), "r2-edge-bfs"
    if ell == dist:
        return solve_walk(g, Query(r=r, ell=dist, mode="atmost"), stats=stats), "walk-dp"
    if mode == "atmost" and dist < ell <= dist + MAX_AUTO_DETOUR:
        return solve_detour(g, r, ell - dist, stats=stats), "detour-dp"
    return solve_path(g, query, stats=stats), "path-dp"


def solve_r1_or_r0(g: ColoredDigraph, ell: int, r: int) -> Witness | None:
    """Shortest-walk BFS; with r=0 all arcs qualify, with r=1 monochromatic ones drop."""
    if r == 0:
        # reuse the r=1 routine on a recolored graph where every arc is allowed
        recolored = ColoredDigraph(g.n, tuple(range(g.n)), g.arcs, g.s, g.t)
        hit = solve_r1(recolored, ell)
        return hit
    return solve_r1(g, ell)


def _run_solver(
    g: ColoredDigraph, query: Query, solver: str, backend: str, stats: dict
) -> tuple[Witness | None, str]:
    if solver == "auto":
        return _dispatch_auto(g, query, stats)
    if solver == "walk":
        if query.mode == "any":
            name = f"walk-any-{backend}"
            return solve_walk_any_length(g, query.r, backend=backend, stats=stats), name
        return solve_walk(g, query, stats=stats), "walk-dp"
    if solver == "any-walk":
        name = f"walk-any-{backend}"
        return solve_walk_any_length(g, query.r, backend=backend, stats=stats), name
    if solver == "path":
        return solve_path(g, query, stats=stats), "path-dp"
    if solver == "detour":
        if query.mode != "atmost":
            raise CliError(
                "the detour solver answers at-most queries only; use --solver path"
            )
        dist = _shortest_distance(g)
        if dist is None:
            return None, "detour-dp"
        return solve_detour(g, query.r, query.ell - dist, stats=stats), "detour-dp"
    if solver == "r1":
        if query.r != 1:
            raise CliError("--solver r1 requires a radius-1 query")
        if query.mode == "exact":
            raise CliError("the r1 shortcut answers at-most queries only; use --solver path")
        ell = g.n - 1 if query.mode == "any" else query.ell
        return solve_r1(g, ell), "r1-bfs"
    if solver == "r2-symmetric":
        if query.r != 2:
            raise CliError("--solver r2-symmetric requires a radius-2 query")
        try:
            return solve_r2_symmetric(g, query.ell, stats=stats), "r2-edge-bfs"
        except ValueError as exc:
            raise CliError(str(exc)) from None
    if solver == "oracle":
        return oracle_walk(g, query), "oracle-walk"
    if solver == "oracle-path":
        return oracle_path(g, query), "oracle-path"
    raise CliError(f"unknown solver {solver!r}")


def cmd_solve(args: argparse.Namespace) -> int:
    g, query = _load_instance(args.instance)
    stats: dict = {}
    started = time.perf_counter()
    try:
        witness, name = _run_solver(g, query, args.solver, args.backend, stats)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    if args.json:
        report = {
            "report_version": 1,
            "instance": {"n": g.n, "arcs": len(g.arcs), "s": g.s, "t": g.t},
            "query": {"r": query.r, "ell": query.ell, "mode": query.mode},
            "answer": witness is not None,
            "witness": list(witness.vertices) if witness else None,
            "length": witness.length if witness else None,
            "solver": name,
            "elapsed_ms": elapsed_ms,
            "stats": stats,
        }
        print(json.dumps(report, sort_keys=True))
    elif witness is None:
        print("NO")
    else:
        print(f"YES {witness.length} " + " ".join(str(v) for v in witness.vertices))
    return EXIT_YES if witness is not None else EXIT_NO


def _parse_witness_tokens(tokens: list[str]) -> tuple[int, ...]:
    if not tokens:
        raise CliError("empty witness")
    if tokens[0].upper() == "NO":
        raise CliError("answer line says NO; nothing to verify")
    if tokens[0].upper() == "YES":
        if len(tokens) < 3:
            raise CliError("malformed witness line; want 'YES L v0 ... vL'")
        tokens = tokens[2:]
    try:
        return tuple(int(tok) for tok in tokens)
    except ValueError:
        raise CliError("witness vertices must be integers") from None


def cmd_verify(args: argparse.Namespace) -> int:
    g, query = _load_instance(args.instance)
    raw = args.witness if args.witness is not None else sys.stdin.read()
    vertices = _parse_witness_tokens(raw.split())
    problems = verify_witness(g, query, vertices, require_path=args.path)
    if problems:
        for problem in problems:
            print(f"INVALID: {problem}")
        return EXIT_NO
    kind = "path" if args.path else "walk"
    print(f"VALID {kind} witness, length {len(vertices) - 1}")
    return EXIT_YES


def cmd_generate(args: argparse.Namespace) -> int:
    if args.kind == "random":
        g, query = gen_random(
            args.n, args.arc_probability, args.colors, args.r, args.ell, args.seed, args.mode
        )
    elif args.kind == "phs":
        try:
            inp = read_phs_sets(_read_text(args.file))
            g, query = gen_phs_instance(inp)
        except ValueError as exc:
            raise CliError(str(exc)) from None
    else:
        try:
            cnf = read_dimacs(_read_text(args.file))
            g, query = gen_3sat_instance(cnf)
        except ValueError as exc:
            raise CliError(str(exc)) from None
    text = write_instance(g, query)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)
    return EXIT_YES


def cmd_crosscheck(args: argparse.Namespace) -> int:
    g, query = _load_instance(args.instance)
    stats: dict = {}
    try:
        witness, name = _run_solver(g, query, args.solver, args.backend, stats)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    walk_semantics = name.startswith(("walk", "oracle-walk", "r1", "r0"))
    oracle_fn = oracle_walk if walk_semantics else oracle_path
    try:
        reference = oracle_fn(g, query)
    except ValueError as exc:
        raise CliError(f"oracle refused: {exc}") from None
    oracle_name = "oracle-walk" if walk_semantics else "oracle-path"
    print(f"solver {name}: {'YES' if witness else 'NO'}")
    print(f"oracle {oracle_name}: {'YES' if reference else 'NO'}")
    if (witness is None) == (reference is None):
        print("AGREE")
        return EXIT_YES
    print("DISAGREE")
    return EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rainbowpaths",
        description="Solvers for locally rainbow walks and paths in vertex-colored digraphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve an instance file ('-' for stdin)")
    solve.add_argument("instance")
    solve.add_argument(
        "--solver",
        default="auto",
        choices=[
            "auto",
            "walk",
            "any-walk",
            "path",
            "detour",
            "r1",
            "r2-symmetric",
            "oracle",
            "oracle-path",
        ],
    )
    solve.add_argument("--backend", default="cap", choices=["cap", "product"])
    solve.add_argument("--json", action="store_true", help="emit a JSON run report")
    solve.set_defaults(func=cmd_solve)

    verify = sub.add_parser("verify", help="check a witness (stdin or --witness)")
    verify.add_argument("instance")
    verify.add_argument("--witness", help="vertex ids, or a full 'YES L ...' line")
    verify.add_argument("--path", action="store_true", help="also require simplicity")
    verify.set_defaults(func=cmd_verify)

    generate = sub.add_parser("generate", help="emit an instance file")
    gen_sub = generate.add_subparsers(dest="kind", required=True)
    g_random = gen_sub.add_parser("random")
    g_random.add_argument("--n", type=int, required=True)
    g_random.add_argument("--arc-probability", type=float, required=True)
    g_random.add_argument("--colors", type=int, required=True)
    g_random.add_argument("--r", type=int, required=True)
    g_random.add_argument("--ell", type=int, required=True)
    g_random.add_argument("--seed", type=int, required=True)
    g_random.add_argument("--mode", default="atmost", choices=["atmost", "exact", "any"])
    g_random.add_argument("--output", default="-")
    g_random.set_defaults(func=cmd_generate, kind="random")
    g_phs = gen_sub.add_parser("phs")
    g_phs.add_argument("--file", required=True, help="pair families, one per line")
    g_phs.add_argument("--output", default="-")
    g_phs.set_defaults(func=cmd_generate, kind="phs")
    g_sat = gen_sub.add_parser("sat")
    g_sat.add_argument("--file", required=True, help="DIMACS CNF, 2+/2- occurrences per variable")
    g_sat.add_argument("--output", default="-")
    g_sat.set_defaults(func=cmd_generate, kind="sat")

    crosscheck = sub.add_parser("crosscheck", help="compare a solver against an oracle")
    crosscheck.add_argument("instance")
    crosscheck.add_argument(
        "--solver",
        default="auto",
        choices=[
            "auto",
            "walk",
            "any-walk",
            "path",
            "detour",
            "r1",
            "r2-symmetric",
        ],
    )
    crosscheck.add_argument("--backend", default="cap", choices=["cap", "product"])
    crosscheck.set_defaults(func=cmd_crosscheck)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
