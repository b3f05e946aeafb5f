"""Locally rainbow path solvers.

The path dynamic program tracks, per level and endpoint, pairs of
(visited vertex set, trailing color window). Three devices keep cells
small: a distance gate toward the target, a projection dedupe that
identifies members agreeing on the forward-reachable part of their
visited set, and representative-family pruning over a flattened universe
mixing vertices with blocked color slots. The same engine runs on the
auxiliary graphs used by the detour solver's segment queries, and a
radius-2 shortcut handles symmetric instances at shortest-path length.
"""

from __future__ import annotations

from collections import deque
from typing import Any, Sequence

from .core import (
    ColorSeq,
    ColoredDigraph,
    Query,
    Witness,
    blocked_slots,
    encoded_slot_index,
)
from .repfam import LabeledSetFamily, algebraic_width, partial_representative

PRUNE_THRESHOLD = 4096
WEDGE_WIDTH_LIMIT = 200_000

Member = tuple[tuple[int, ...], ColorSeq]
ParentEntry = tuple[int, Member] | None
PathCells = dict[int, dict[Member, ParentEntry]]


def _bfs_rows(n: int, adj: Sequence[Sequence[int]]) -> list[list[int | None]]:
    """BFS distance row from every vertex along the given adjacency."""
    rows: list[list[int | None]] = []
    for src in range(n):
        dist: list[int | None] = [None] * n
        dist[src] = 0
        queue = deque([src])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if dist[u] is None:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        rows.append(dist)
    return rows


def _dedupe_cell(
    cell: dict[Member, ParentEntry],
    reach_row: Sequence[int | None],
    remaining: int,
) -> dict[Member, ParentEntry]:
    """Keep one member per (forward-relevant visited set, window) projection.

    Two members whose visited sets agree on the vertices reachable within
    the remaining budget admit exactly the same completions, so dropping
    one of them loses nothing.
    """
    kept: dict[Member, ParentEntry] = {}
    seen: set[tuple[tuple[int, ...], ColorSeq]] = set()
    for member, parent in cell.items():
        visited, window = member
        key = (
            tuple(x for x in visited if reach_row[x] is not None and reach_row[x] <= remaining),
            window,
        )
        if key in seen:
            continue
        seen.add(key)
        kept[member] = parent
    return kept


def _prune_cell(
    cell: dict[Member, ParentEntry],
    n: int,
    num_colors: int,
    r: int,
    budget: int,
    stats: dict | None,
) -> dict[Member, ParentEntry]:
    """Representative-family pruning over the vertex + blocked-slot universe."""
    if len(cell) <= PRUNE_THRESHOLD:
        return cell
    assert budget >= 0
    universe = n + num_colors * r
    flat = []
    tags = []
    for member in cell:
        visited, window = member
        slot_part = (
            tuple(sorted(n + encoded_slot_index(c, i, r) for c, i in blocked_slots(window, r)))
            if r >= 1
            else ()
        )
        flat.append(visited + slot_part)
        tags.append(member)
    set_size = len(flat[0])
    if algebraic_width(set_size, budget, universe) > WEDGE_WIDTH_LIMIT:
        return cell
    family = LabeledSetFamily(universe, tuple(flat), tuple(tags))
    kept = partial_representative(family, budget, backend="algebraic")
    if stats is not None:
        stats["rep_calls"] = stats.get("rep_calls", 0) + 1
    return {member: cell[member] for member in kept.tags}


def _dp_levels(
    n: int,
    colors: Sequence[int],
    out_adj: Sequence[Sequence[int]],
    source: int,
    target: int,
    r: int,
    ell: int,
    stats: dict | None = None,
) -> list[PathCells]:
    """Run the prefix DP for ell levels; levels[p][v] maps members to parents."""
    in_adj: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        for u in out_adj[v]:
            in_adj[u].append(v)
    dist_t: list[int | None] = [None] * n
    dist_t[target] = 0
    queue = deque([target])
    while queue:
        v = queue.popleft()
        for u in in_adj[v]:
            if dist_t[u] is None:
                dist_t[u] = dist_t[v] + 1
                queue.append(u)
    reach = _bfs_rows(n, out_adj)
    start_window: ColorSeq = (colors[source],) if r >= 1 else ()
    levels: list[PathCells] = [{source: {((source,), start_window): None}}]
    if dist_t[source] is None or dist_t[source] > ell:
        return levels
    for p in range(1, ell + 1):
        nxt: PathCells = {}
        for v in sorted(levels[p - 1]):
            for member in levels[p - 1][v]:
                visited, window = member
                for u in out_adj[v]:
                    if u in visited:
                        continue
                    if dist_t[u] is None or dist_t[u] > ell - p:
                        continue
                    if r >= 1:
                        c = colors[u]
                        if c in window:
                            continue
                        new_window = (window + (c,))[-r:]
                    else:
                        new_window = ()
                    new_member = (tuple(sorted(visited + (u,))), new_window)
                    cell = nxt.setdefault(u, {})
                    if new_member not in cell:
                        cell[new_member] = (v, member)
        for u in list(nxt):
            cell = _dedupe_cell(nxt[u], reach[u], ell - p)
            cell = _prune_cell(cell, n, max(colors, default=0) + 1, r, r + ell - p, stats)
            nxt[u] = cell
        levels.append(nxt)
        if stats is not None:
            stats["levels"] = p
            stats["total_members"] = stats.get("total_members", 0) + sum(
                len(c) for c in nxt.values()
            )
            if nxt:
                stats["max_cell"] = max(
                    stats.get("max_cell", 0), max(len(c) for c in nxt.values())
                )
        if not nxt:
            break
    return levels


def _backtrack(levels: list[PathCells], level: int, v: int, member: Member) -> list[int]:
    vertices = [v]
    parent = levels[level][v][member]
    p = level
    while parent is not None:
        p -= 1
        v, member = parent
        vertices.append(v)
        parent = levels[p][v][member]
    assert p == 0
    vertices.reverse()
    return vertices


def solve_path(g: ColoredDigraph, query: Query, *, stats: dict | None = None) -> Witness | None:
    """Decide existence of a locally rainbow s-t path within a length bound.

    Mode "exact" asks for length exactly ell, "atmost" for any length up
    to ell, and "any" for any length at all (equivalent to atmost n-1).

    Returns:
        A witness path, or None.
    """
    r = query.r
    if query.mode == "any":
        ell, exact = g.n - 1, False
    elif query.mode == "atmost":
        ell, exact = min(query.ell, g.n - 1), False
    else:
        ell, exact = query.ell, True
        if ell > g.n - 1:
            return None
    levels = _dp_levels(g.n, g.colors, g.out_neighbors, g.s, g.t, r, ell, stats)
    if exact:
        if len(levels) > ell and g.t in levels[ell]:
            member = next(iter(levels[ell][g.t]))
            return Witness(tuple(_backtrack(levels, ell, g.t, member)))
        return None
    for p in range(1, len(levels)):
        if g.t in levels[p]:
            member = next(iter(levels[p][g.t]))
            return Witness(tuple(_backtrack(levels, p, g.t, member)))
    return None


def segment_window_family(
    g: ColoredDigraph,
    u: int,
    v: int,
    band: Any,
    q: int,
    tau: ColorSeq,
    r: int,
) -> list[tuple[ColorSeq, tuple[int, ...]]]:
    """Windows of u-to-v path segments through a band, under a color context.

    Builds an auxiliary graph consisting of u, v, the band's vertices, and
    a fresh chain carrying the context colors ``tau`` (the colors walked
    immediately before u), then runs the path DP for exact length
    len(tau) + q. Every returned window is therefore valid as the
    continuation of any prefix that ends with ``tau`` followed by u's
    color.

    Args:
        g: the original graph.
        u: segment start vertex.
        v: segment end vertex.
        band: the allowed interior vertex set (an object with a
            ``vertices`` attribute, or any iterable of vertex ids).
        q: number of arcs in the segment, at least 1.
        tau: colors immediately preceding u on the prefix, possibly empty.
        r: locality radius.

    Returns:
        Pairs (window, segment vertices u..v); windows are the trailing
        min(q+1, r) colors of the full context walk, one pair per distinct
        window.
    """
    if q < 1:
        raise ValueError("a segment needs at least one arc")
    interior = frozenset(getattr(band, "vertices", band)) - {u, v}
    real = [u, v] + sorted(interior)
    aux_id = {orig: i for i, orig in enumerate(real)}
    n_aux = len(real) + len(tau)
    colors = [g.colors[orig] for orig in real] + list(tau)
    out_adj: list[list[int]] = [[] for _ in range(n_aux)]
    allowed = interior | {v}
    for orig in [u] + sorted(interior):
        for w in g.out_neighbors[orig]:
            if w in allowed:
                out_adj[aux_id[orig]].append(aux_id[w])
    chain_base = len(real)
    for i in range(len(tau)):
        nxt = chain_base + i + 1 if i + 1 < len(tau) else aux_id[u]
        out_adj[chain_base + i].append(nxt)
    source = chain_base if tau else aux_id[u]
    length = len(tau) + q
    levels = _dp_levels(n_aux, colors, out_adj, source, aux_id[v], r, length)
    results: list[tuple[ColorSeq, tuple[int, ...]]] = []
    seen: set[ColorSeq] = set()
    if len(levels) <= length or aux_id[v] not in levels[length]:
        return results
    for member in levels[length][aux_id[v]]:
        window = member[1][-min(q + 1, r):] if r >= 1 else ()
        if window in seen:
            continue
        seen.add(window)
        aux_path = _backtrack(levels, length, aux_id[v], member)
        segment = tuple(real[x] for x in aux_path[len(tau):])
        results.append((window, segment))
    return results


def solve_r2_symmetric(g: ColoredDigraph, ell: int, *, stats: dict | None = None) -> Witness | None:
    """Radius-2 shortcut for symmetric graphs at shortest-path length.

    Searches the product of vertices with the predecessor's color; a walk
    of length exactly dist(s, t) is automatically simple, so the result
    answers the path question.

    Raises:
        ValueError: if the graph is not symmetric, has a monochromatic
            arc, or ell differs from the s-t distance.
    """
    if not g.is_symmetric():
        raise ValueError("shortcut requires a symmetric graph")
    if g.has_monochromatic_arc():
        raise ValueError("shortcut requires no monochromatic arc")
    dist: dict[int, int] = {g.s: 0}
    queue = deque([g.s])
    while queue:
        v = queue.popleft()
        for u in g.out_neighbors[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    if g.t not in dist or dist[g.t] != ell:
        raise ValueError("shortcut requires ell equal to the s-t distance")
    # state: (vertex, color of the previous vertex); None before any step
    start = (g.s, -1)
    parent: dict[tuple[int, int], tuple[int, int] | None] = {start: None}
    frontier = [start]
    steps = 0
    while frontier and steps < ell:
        steps += 1
        nxt = []
        for state in frontier:
            v, prev_color = state
            for u in g.out_neighbors[v]:
                if g.colors[u] == prev_color or g.colors[u] == g.colors[v]:
                    continue
                new_state = (u, g.colors[v])
                if new_state in parent:
                    continue
                parent[new_state] = state
                if u == g.t and steps == ell:
                    vertices = [u]
                    cur = state
                    while cur is not None:
                        vertices.append(cur[0])
                        cur = parent[cur]
                    return Witness(tuple(reversed(vertices)))
                nxt.append(new_state)
        frontier = nxt
        if stats is not None:
            stats["levels"] = steps
    return None
