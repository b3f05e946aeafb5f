"""Vertex-colored digraphs and locally rainbow color-sequence primitives.

A walk is locally rainbow with locality ``r`` if within every window of
min(r + 1, length) consecutive vertices all colors are pairwise distinct.
This module provides the instance substrate (graph, query, witness), the
window compatibility test used by every solver, the slot encoding that turns
compatibility into set disjointness, and small shared graph utilities.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

logger = logging.getLogger(__name__)

ColorSeq = tuple[int, ...]
Arc = tuple[int, int]

MODES = ("atmost", "exact", "any")


@dataclass(frozen=True)
class ColoredDigraph:
    """A digraph with one color per vertex and two terminals.

    Invariants enforced at construction: no self-loops, no duplicate arcs,
    all ids in range, s != t, and dense colors (every color in
    [0, num_colors) is used by at least one vertex).
    """

    n: int
    colors: tuple[int, ...]
    arcs: tuple[Arc, ...]
    s: int
    t: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "colors", tuple(self.colors))
        object.__setattr__(self, "arcs", tuple((int(u), int(v)) for u, v in self.arcs))
        if self.n < 2:
            raise ValueError("graph needs at least two vertices")
        if len(self.colors) != self.n:
            raise ValueError(f"expected {self.n} colors, got {len(self.colors)}")
        if any(c < 0 for c in self.colors):
            raise ValueError("colors must be non-negative")
        used = set(self.colors)
        if used != set(range(max(used) + 1)):
            raise ValueError("colors must form a dense range starting at 0")
        for u, v in self.arcs:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc ({u}, {v}) out of range")
        if len(set(self.arcs)) != len(self.arcs):
            raise ValueError("duplicate arcs")
        for name in ("s", "t"):
            vid = getattr(self, name)
            if not (0 <= vid < self.n):
                raise ValueError(f"{name}={vid} out of range")
        if self.s == self.t:
            raise ValueError("terminals must differ")

    @cached_property
    def num_colors(self) -> int:
        return max(self.colors) + 1

    @cached_property
    def out_neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            adj[u].append(v)
        return tuple(tuple(a) for a in adj)

    @cached_property
    def in_neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            adj[v].append(u)
        return tuple(tuple(a) for a in adj)

    @cached_property
    def arc_set(self) -> frozenset[Arc]:
        return frozenset(self.arcs)

    def is_symmetric(self) -> bool:
        return all((v, u) in self.arc_set for u, v in self.arcs)

    def has_monochromatic_arc(self) -> bool:
        return any(self.colors[u] == self.colors[v] for u, v in self.arcs)


@dataclass(frozen=True)
class Query:
    """What to look for: locality r, length budget ell, and a length mode.

    mode "atmost" accepts lengths up to ell, "exact" only ell itself, and
    "any" ignores ell entirely.
    """

    r: int
    ell: int
    mode: str = "atmost"

    def __post_init__(self) -> None:
        if self.r < 0:
            raise ValueError("locality r must be non-negative")
        if self.ell < 0:
            raise ValueError("length budget must be non-negative")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")


@dataclass(frozen=True)
class Witness:
    """An explicit vertex sequence returned by a solver, replayable for checks."""

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def is_path(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)


def is_locally_rainbow(colors: Sequence[int], r: int) -> bool:
    """Check the locality constraint on a color sequence.

    Every window of min(r + 1, len(colors)) consecutive entries must be
    pairwise distinct; sequences shorter than r + 1 must therefore be
    entirely distinct. The empty sequence is vacuously fine.
    """
    if r < 0:
        raise ValueError("locality r must be non-negative")
    seq = tuple(colors)
    w = min(r + 1, len(seq))
    if w <= 1:
        return True
    for i in range(len(seq) - w + 1):
        if len(set(seq[i : i + w])) != w:
            return False
    return True


def r_compatible(first: Sequence[int], second: Sequence[int], r: int) -> bool:
    """Decide whether ``second`` may follow ``first`` without breaking locality r.

    For each j in [1, r], the last j entries of ``first`` must avoid the
    first min(r - j + 1, len(second)) entries of ``second``. When both parts
    are individually locally rainbow this is equivalent to their
    concatenation being locally rainbow.
    """
    n, m = len(first), len(second)
    for j in range(1, r + 1):
        tail = set(first[max(0, n - j) :])
        head = set(second[: min(r - j + 1, m)])
        if tail & head:
            return False
    return True


def blocked_slots(window: Sequence[int], r: int) -> frozenset[tuple[int, int]]:
    """Encode a stored suffix window as the (color, position) slots it blocks.

    Position i in [1, r] is blocked by color a_j for every j in
    [p - (r - i), p] (1-based, clipped at 1), where p = len(window). A
    continuation is compatible with the window exactly when its claimed
    slots avoid all blocked ones.
    """
    p = len(window)
    if p < 1:
        raise ValueError("window must be nonempty")
    out: set[tuple[int, int]] = set()
    for i in range(1, r + 1):
        for j in range(max(1, p - (r - i)), p + 1):
            out.add((window[j - 1], i))
    return frozenset(out)


def claimed_slots(prefix: Sequence[int], r: int) -> frozenset[tuple[int, int]]:
    """Encode a continuation's first entries as the (color, position) slots it claims."""
    return frozenset((prefix[i - 1], i) for i in range(1, min(r, len(prefix)) + 1))


def decode_blocked_slots(slots: Iterable[tuple[int, int]], r: int) -> ColorSeq:
    """Invert :func:`blocked_slots` for windows of length at most r.

    Windows that short have pairwise distinct entries, which makes the
    encoding injective: the color blocking position r is the last entry, the
    colors blocking position r - 1 are the last two, and so on. Raises
    ValueError if the slots are not a consistent image.
    """
    by_pos: dict[int, set[int]] = {}
    for color, pos in slots:
        by_pos.setdefault(pos, set()).add(color)
    if not by_pos:
        raise ValueError("empty slot set has no preimage")
    p = len(by_pos.get(1, set()))
    seq: list[int | None] = [None] * p
    seen: set[int] = set()
    for idx in range(p, 0, -1):
        pos = r - (p - idx)
        fresh = by_pos.get(pos, set()) - seen
        if len(fresh) != 1:
            raise ValueError("slot set is not the image of a short window")
        color = fresh.pop()
        seq[idx - 1] = color
        seen.add(color)
    out = tuple(seq)  # type: ignore[arg-type]
    if blocked_slots(out, r) != frozenset(slots):
        raise ValueError("slot set is not the image of a short window")
    return out


def encoded_slot_index(color: int, position: int, r: int) -> int:
    """Flatten slot (color, position) with position in [1, r] to a single integer."""
    return color * r + (position - 1)


def dist_to_target(g: ColoredDigraph) -> list[int | None]:
    """Shortest directed distance from each vertex to g.t; None if t is unreachable."""
    dist: list[int | None] = [None] * g.n
    dist[g.t] = 0
    queue = deque([g.t])
    while queue:
        v = queue.popleft()
        for u in g.in_neighbors[v]:
            if dist[u] is None:
                dist[u] = dist[v] + 1  # type: ignore[operator]
                queue.append(u)
    return dist


def dist_from_source(g: ColoredDigraph, source: int | None = None) -> list[int | None]:
    """Shortest directed distance from ``source`` (default g.s) to each vertex."""
    src = g.s if source is None else source
    dist: list[int | None] = [None] * g.n
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in g.out_neighbors[u]:
            if dist[v] is None:
                dist[v] = dist[u] + 1  # type: ignore[operator]
                queue.append(v)
    return dist


def prune_to_target(g: ColoredDigraph) -> list[int | None]:
    """Distances to t, logging how many vertices the solvers will ignore.

    Vertices that cannot reach t can never appear on a witness; solvers skip
    them rather than erroring out.
    """
    dist = dist_to_target(g)
    dead = sum(1 for d in dist if d is None)
    if dead:
        logger.info("ignoring %d of %d vertices that cannot reach t", dead, g.n)
    return dist


def verify_witness(
    g: ColoredDigraph,
    query: Query,
    vertices: Sequence[int],
    *,
    require_path: bool = False,
) -> list[str]:
    """Replay a claimed witness and collect violations (empty list = valid).

    Args:
        g: instance graph.
        query: the query the witness claims to answer.
        vertices: the claimed walk, first entry s and last entry t.
        require_path: additionally demand pairwise distinct vertices.

    Returns:
        Human-readable violation messages, first offense first.
    """
    problems: list[str] = []
    walk = tuple(int(v) for v in vertices)
    if not walk:
        return ["witness is empty"]
    if any(not (0 <= v < g.n) for v in walk):
        return [f"vertex id out of range in {walk}"]
    if walk[0] != g.s:
        problems.append(f"witness starts at {walk[0]}, expected s={g.s}")
    if walk[-1] != g.t:
        problems.append(f"witness ends at {walk[-1]}, expected t={g.t}")
    for i in range(len(walk) - 1):
        if (walk[i], walk[i + 1]) not in g.arc_set:
            problems.append(f"missing arc ({walk[i]}, {walk[i + 1]}) at step {i}")
            break
    seq = tuple(g.colors[v] for v in walk)
    w = min(query.r + 1, len(seq))
    if w > 1:
        for i in range(len(seq) - w + 1):
            if len(set(seq[i : i + w])) != w:
                problems.append(
                    f"window at offset {i} repeats a color: {seq[i:i + w]}"
                )
                break
    length = len(walk) - 1
    if query.mode == "atmost" and length > query.ell:
        problems.append(f"length {length} exceeds budget {query.ell}")
    elif query.mode == "exact" and length != query.ell:
        problems.append(f"length {length} differs from required {query.ell}")
    if require_path and len(set(walk)) != len(walk):
        problems.append("vertices repeat but a path was required")
    return problems
