"""Shared helpers for the test suite."""
from __future__ import annotations

import contextlib
import io
import random
import sys

from rainbowpaths import ColoredDigraph
from rainbowpaths.cli import main as cli_main


def run_cli(argv: list[str], stdin_text: str | None = None) -> tuple[int, str, str]:
    """Run the CLI in-process and capture (exit_code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    old_stdin = sys.stdin
    if stdin_text is not None:
        sys.stdin = io.StringIO(stdin_text)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = cli_main(argv)
    finally:
        sys.stdin = old_stdin
    return code, out.getvalue(), err.getvalue()


def symmetric_no_mono_graph(rng: random.Random, n: int, num_colors: int, edge_probability: float) -> ColoredDigraph | None:
    """Random symmetric digraph whose arcs never join same-colored vertices.

    Returns None when the sampled graph has no arc at all (the constructor
    would accept it, but such instances are useless for the tests).
    """
    colors = tuple(rng.randrange(num_colors) for _ in range(n))
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            if colors[u] != colors[v] and rng.random() < edge_probability:
                arcs.append((u, v))
                arcs.append((v, u))
    if not arcs:
        return None
    colors = tuple(c - min(colors) for c in colors) if min(colors) else colors
    used = sorted(set(colors))
    dense = {c: i for i, c in enumerate(used)}
    colors = tuple(dense[c] for c in colors)
    return ColoredDigraph(n, colors, tuple(arcs), 0, n - 1)


def compliant_cnf(rng: random.Random, n: int) -> list[tuple[int, int, int]]:
    """Random CNF with 3 distinct variables per clause and 2+/2- occurrences.

    n must be divisible by 3 so that m = 4n/3 is integral.
    """
    assert n % 3 == 0
    m = 4 * n // 3
    while True:
        deck = [v for v in range(1, n + 1) for _ in (0, 1)]
        deck += [-v for v in range(1, n + 1) for _ in (0, 1)]
        rng.shuffle(deck)
        clauses = [tuple(deck[3 * j: 3 * j + 3]) for j in range(m)]
        if all(len({abs(l) for l in c}) == 3 for c in clauses):
            return clauses
