"""Instance construction, generation, and the on-disk format.

Two reductions produce hard instances: one encodes permutation hitting
into the walk problem on a layered grid graph (the locality radius grows
with the permutation size), the other encodes 3-SAT into the radius-2
path problem via vertex sharing between variable and clause gadgets.
Random instances and a small line-oriented file format round things out.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

from .core import MODES, ColoredDigraph, Query

logger = logging.getLogger(__name__)

FORMAT_HEADER = "rainbow 1"


@dataclass(frozen=True)
class PHSInput:
    """Permutation hitting instance: families of (index, value) pairs over [1..k].

    A permutation phi of [1..k] hits a family when phi(i) = j for some
    pair (i, j) in it; the question is whether one permutation hits all
    families.
    """

    k: int
    sets: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be at least 1")
        canon = tuple(tuple(sorted(set(fam))) for fam in self.sets)
        object.__setattr__(self, "sets", canon)
        for fam in canon:
            for (i, j) in fam:
                if not (1 <= i <= self.k and 1 <= j <= self.k):
                    raise ValueError(f"pair {(i, j)} outside [1..{self.k}]^2")

    def as_pair_sets(self) -> list[set[tuple[int, int]]]:
        return [set(fam) for fam in self.sets]


@dataclass(frozen=True)
class CnfInput:
    """3-CNF with every variable occurring exactly twice positively and twice negatively.

    Clauses are DIMACS-style literal triples over variables 1..n with
    three distinct variables per clause. The occurrence discipline is
    what the path reduction's vertex sharing relies on; violations raise.
    """

    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        canon = tuple(tuple(cl) for cl in self.clauses)
        object.__setattr__(self, "clauses", canon)
        pos: dict[int, int] = {}
        neg: dict[int, int] = {}
        for idx, clause in enumerate(canon, start=1):
            if len(clause) != 3:
                raise ValueError(f"clause {idx} has {len(clause)} literals, want 3")
            if any(not isinstance(lit, int) or lit == 0 for lit in clause):
                raise ValueError(f"clause {idx} contains a zero or non-integer literal")
            if len({abs(lit) for lit in clause}) != 3:
                raise ValueError(f"clause {idx} repeats a variable")
            for lit in clause:
                side = pos if lit > 0 else neg
                side[abs(lit)] = side.get(abs(lit), 0) + 1
        variables = sorted(set(pos) | set(neg))
        if variables != list(range(1, len(variables) + 1)):
            raise ValueError("variables must be numbered consecutively from 1")
        for v in variables:
            if pos.get(v, 0) != 2 or neg.get(v, 0) != 2:
                raise ValueError(
                    f"variable {v} occurs {pos.get(v, 0)}+/{neg.get(v, 0)}-, want exactly 2+/2-"
                )

    @property
    def num_variables(self) -> int:
        return max((abs(lit) for cl in self.clauses for lit in cl), default=0)


def phs_layout(k: int, m: int) -> dict:
    """Vertex ids of the permutation-hitting construction.

    Returns a dict with "u" (list, u[q] for q in 1..m+1), and "v"/"w"
    (dicts keyed by (q, i, j), 1-based throughout).
    """
    u = {q: q - 1 for q in range(1, m + 2)}
    v: dict[tuple[int, int, int], int] = {}
    w: dict[tuple[int, int, int], int] = {}
    for q in range(1, m + 1):
        base = (m + 1) + (q - 1) * 2 * k * k
        for i in range(1, k + 1):
            for j in range(1, k + 1):
                v[(q, i, j)] = base + (i - 1) * k + (j - 1)
                w[(q, i, j)] = base + k * k + (i - 1) * k + (j - 1)
    return {"u": u, "v": v, "w": w}


def gen_phs_instance(inp: PHSInput) -> tuple[ColoredDigraph, Query]:
    """Encode permutation hitting as a locally rainbow walk question.

    The graph is a chain of m grid segments between anchor vertices; a
    walk crosses a segment by reading off a permutation, one column per
    row, and the anchor color windows force every segment to read the
    same permutation. Entering the second grid copy requires a pair from
    that segment's family, so a compliant walk exists iff one permutation
    hits every family.

    Returns:
        The graph plus the query (radius k, length m*(k+1), mode atmost);
        every compliant walk has exactly that length.
    """
    k, m = inp.k, len(inp.sets)
    if m == 0:
        raise ValueError("at least one family is required")
    lay = phs_layout(k, m)
    u, v, w = lay["u"], lay["v"], lay["w"]
    n = (m + 1) + 2 * k * k * m
    colors = [0] * n
    for q in range(1, m + 2):
        colors[u[q]] = k
    for q in range(1, m + 1):
        for i in range(1, k + 1):
            for j in range(1, k + 1):
                colors[v[(q, i, j)]] = j - 1
                colors[w[(q, i, j)]] = j - 1
    arcs: list[tuple[int, int]] = []
    for q in range(1, m + 1):
        fam = set(inp.sets[q - 1])
        for j in range(1, k + 1):
            arcs.append((u[q], v[(q, 1, j)]))
            if (1, j) in fam:
                arcs.append((u[q], w[(q, 1, j)]))
            arcs.append((w[(q, k, j)], u[q + 1]))
        for i in range(1, k):
            for j in range(1, k + 1):
                for jj in range(1, k + 1):
                    arcs.append((v[(q, i, j)], v[(q, i + 1, jj)]))
                    arcs.append((w[(q, i, j)], w[(q, i + 1, jj)]))
        for i in range(2, k + 1):
            for j in range(1, k + 1):
                if (i, j) in fam:
                    for jj in range(1, k + 1):
                        arcs.append((v[(q, i - 1, jj)], w[(q, i, j)]))
    g = ColoredDigraph(n, tuple(colors), tuple(arcs), u[1], u[m + 1])
    return g, Query(r=k, ell=m * (k + 1), mode="atmost")


def sat_layout(cnf: CnfInput) -> dict:
    """Vertex ids of the 3-SAT construction.

    Per variable i (1-based): "var" (entry), "pos1", "pos2", "neg1",
    "neg2" (branch internals), "join", "after_join", "exit". Globals
    "conn_a", "conn_b". Per clause j: "w" (chain, j in 1..m+1) and
    "fresh" keyed by (j, slot) for slot in 0..2.
    """
    n = cnf.num_variables
    m = len(cnf.clauses)
    names = ["var", "pos1", "pos2", "neg1", "neg2", "join", "after_join", "exit"]
    per_var = {
        (i, name): (i - 1) * 8 + off for i in range(1, n + 1) for off, name in enumerate(names)
    }
    conn_a = 8 * n
    conn_b = 8 * n + 1
    w = {j: 8 * n + 2 + (j - 1) for j in range(1, m + 2)}
    fresh_base = 8 * n + m + 3
    fresh = {
        (j, slot): fresh_base + (j - 1) * 3 + slot
        for j in range(1, m + 1)
        for slot in range(3)
    }
    return {"per_var": per_var, "conn_a": conn_a, "conn_b": conn_b, "w": w, "fresh": fresh}


def gen_3sat_instance(cnf: CnfInput) -> tuple[ColoredDigraph, Query]:
    """Encode a compliant 3-CNF as a radius-2 locally rainbow path question.

    Variable gadgets offer two three-step branches; the branch a path
    avoids marks the satisfying value. Clause gadgets are two-step
    bypasses whose one shared internal vertex sits on a variable branch:
    the bypass is usable iff that branch was avoided. A unique connector
    color separates the two phases. The path question at the returned
    exact-phase length is equivalent to satisfiability.
    """
    n = cnf.num_variables
    m = len(cnf.clauses)
    lay = sat_layout(cnf)
    per_var, w, fresh = lay["per_var"], lay["w"], lay["fresh"]
    conn_a, conn_b = lay["conn_a"], lay["conn_b"]
    total = 8 * n + 4 * m + 3
    colors = [0] * total
    for i in range(1, n + 1):
        colors[per_var[(i, "var")]] = 0
        colors[per_var[(i, "pos1")]] = 1
        colors[per_var[(i, "pos2")]] = 2
        colors[per_var[(i, "neg1")]] = 1
        colors[per_var[(i, "neg2")]] = 2
        colors[per_var[(i, "join")]] = 0
        colors[per_var[(i, "after_join")]] = 1
        colors[per_var[(i, "exit")]] = 2
    colors[conn_a] = 3
    colors[conn_b] = 1
    for j in range(1, m + 2):
        colors[w[j]] = 0
    for j in range(1, m + 1):
        for slot in range(3):
            colors[fresh[(j, slot)]] = 0  # overwritten below per occurrence kind
    arcs: list[tuple[int, int]] = []
    for i in range(1, n + 1):
        arcs.append((per_var[(i, "var")], per_var[(i, "pos1")]))
        arcs.append((per_var[(i, "pos1")], per_var[(i, "pos2")]))
        arcs.append((per_var[(i, "pos2")], per_var[(i, "join")]))
        arcs.append((per_var[(i, "var")], per_var[(i, "neg1")]))
        arcs.append((per_var[(i, "neg1")], per_var[(i, "neg2")]))
        arcs.append((per_var[(i, "neg2")], per_var[(i, "join")]))
        arcs.append((per_var[(i, "join")], per_var[(i, "after_join")]))
        arcs.append((per_var[(i, "after_join")], per_var[(i, "exit")]))
        nxt = per_var[(i + 1, "var")] if i < n else conn_a
        arcs.append((per_var[(i, "exit")], nxt))
    arcs.append((conn_a, conn_b))
    arcs.append((conn_b, w[1]))
    seen_occurrences: dict[int, int] = {}
    for j, clause in enumerate(cnf.clauses, start=1):
        for slot, lit in enumerate(clause):
            var = abs(lit)
            key = lit
            occ = seen_occurrences.get(key, 0) + 1
            seen_occurrences[key] = occ
            branch = "pos" if lit > 0 else "neg"
            shared = per_var[(var, f"{branch}{occ}")]
            spare = fresh[(j, slot)]
            if occ == 1:
                # shared vertex has color 1: it is the second hop of the bypass
                colors[spare] = 2
                first, second = spare, shared
            else:
                # shared vertex has color 2: it is the first hop of the bypass
                colors[spare] = 1
                first, second = shared, spare
            arcs.append((w[j], first))
            arcs.append((first, second))
            arcs.append((second, w[j + 1]))
    g = ColoredDigraph(
        total, tuple(colors), tuple(arcs), per_var[(1, "var")], w[m + 1]
    )
    return g, Query(r=2, ell=6 * n + 3 * m + 2, mode="atmost")


def gen_random(
    n: int,
    arc_probability: float,
    colors: int,
    r: int,
    ell: int,
    seed: int,
    mode: str = "atmost",
) -> tuple[ColoredDigraph, Query]:
    """Random instance: uniform vertex colors, independent arcs, s=0, t=n-1.

    Color labels are compacted to a dense range after sampling, so the
    effective palette may be smaller than requested.
    """
    if n < 2:
        raise ValueError("need at least two vertices")
    if not 0.0 <= arc_probability <= 1.0:
        raise ValueError("arc_probability must lie in [0, 1]")
    if colors < 1:
        raise ValueError("need at least one color")
    rng = random.Random(seed)
    raw = [rng.randrange(colors) for _ in range(n)]
    relabel = {c: i for i, c in enumerate(sorted(set(raw)))}
    palette = tuple(relabel[c] for c in raw)
    arcs = tuple(
        (u, v)
        for u in range(n)
        for v in range(n)
        if u != v and rng.random() < arc_probability
    )
    g = ColoredDigraph(n, palette, arcs, 0, n - 1)
    return g, Query(r=r, ell=ell, mode=mode)


def parse_instance(text: str) -> tuple[ColoredDigraph, Query]:
    """Parse the line-oriented instance format.

    Layout: a header line "rainbow 1"; "n m"; n vertex colors; m arc
    lines "u v"; a final line "s t r ell mode". Text after '#' and blank
    lines are ignored. Errors carry the 1-based line number.
    """
    entries: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            entries.append((lineno, stripped))

    def fail(lineno: int, msg: str) -> ValueError:
        return ValueError(f"line {lineno}: {msg}")

    if not entries:
        raise ValueError("empty instance")
    if entries[0][1] != FORMAT_HEADER:
        raise fail(entries[0][0], f"expected header {FORMAT_HEADER!r}, got {entries[0][1]!r}")
    if len(entries) < 2:
        raise ValueError("missing size line")
    lineno, size_line = entries[1]
    parts = size_line.split()
    if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
        raise fail(lineno, f"expected 'n m', got {size_line!r}")
    n, m = int(parts[0]), int(parts[1])
    expected = 3 + m + 1
    if len(entries) != expected:
        raise ValueError(
            f"expected {expected} content lines for n={n}, m={m}, got {len(entries)}"
        )
    lineno, color_line = entries[2]
    color_parts = color_line.split()
    if len(color_parts) != n:
        raise fail(lineno, f"expected {n} colors, got {len(color_parts)}")
    try:
        palette = tuple(int(p) for p in color_parts)
    except ValueError:
        raise fail(lineno, "colors must be integers") from None
    arcs: list[tuple[int, int]] = []
    seen_arcs: set[tuple[int, int]] = set()
    for lineno, arc_line in entries[3 : 3 + m]:
        parts = arc_line.split()
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise fail(lineno, f"expected arc 'u v', got {arc_line!r}")
        arc = (int(parts[0]), int(parts[1]))
        if arc in seen_arcs:
            logger.warning("line %d: duplicate arc %s collapsed", lineno, arc)
            continue
        seen_arcs.add(arc)
        arcs.append(arc)
    lineno, query_line = entries[3 + m]
    parts = query_line.split()
    if len(parts) != 5:
        raise fail(lineno, f"expected 's t r ell mode', got {query_line!r}")
    if parts[4] not in MODES:
        raise fail(lineno, f"mode must be one of {MODES}, got {parts[4]!r}")
    try:
        s, t, r, ell = (int(p) for p in parts[:4])
    except ValueError:
        raise fail(lineno, "s, t, r, ell must be integers") from None
    try:
        g = ColoredDigraph(n, palette, tuple(arcs), s, t)
        query = Query(r=r, ell=ell, mode=parts[4])
    except ValueError as exc:
        raise ValueError(f"line {lineno}: {exc}") from None
    return g, query


def write_instance(g: ColoredDigraph, query: Query) -> str:
    """Serialize an instance; parse_instance inverts this exactly."""
    lines = [
        FORMAT_HEADER,
        f"{g.n} {len(g.arcs)}",
        " ".join(str(c) for c in g.colors),
    ]
    lines.extend(f"{u} {v}" for u, v in g.arcs)
    lines.append(f"{g.s} {g.t} {query.r} {query.ell} {query.mode}")
    return "\n".join(lines) + "\n"


def read_dimacs(text: str) -> CnfInput:
    """Read a DIMACS CNF (subset: 'c' comments, 'p cnf' header, 0-terminated clauses)."""
    literals: list[int] = []
    clauses: list[tuple[int, int, int]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("p"):
            continue
        for token in line.split():
            value = int(token)
            if value == 0:
                if literals:
                    clauses.append(tuple(literals))  # type: ignore[arg-type]
                    literals = []
            else:
                literals.append(value)
    if literals:
        clauses.append(tuple(literals))  # type: ignore[arg-type]
    return CnfInput(tuple(clauses))


def read_phs_sets(text: str) -> PHSInput:
    """Read a permutation-hitting instance.

    First content line: k. Each following line is one family given as an
    even-length list of integers "i1 j1 i2 j2 ...". '#' comments allowed.
    """
    rows: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise ValueError(f"line {lineno}: expected integers, got {line!r}") from None
    if not rows or len(rows[0]) != 1:
        raise ValueError("first content line must be the single integer k")
    k = rows[0][0]
    sets = []
    for row in rows[1:]:
        if len(row) % 2 != 0:
            raise ValueError(f"family {row} has an odd number of integers")
        sets.append(tuple(zip(row[::2], row[1::2])))
    return PHSInput(k, tuple(sets))
