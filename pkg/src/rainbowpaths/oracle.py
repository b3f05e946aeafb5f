"""Brute-force reference solvers.

Small-instance oracles used to validate the dynamic programs and the
hardness constructions: a product-graph search for walks, an exhaustive
DFS for simple paths, and direct enumeration for permutation hitting and
3-SAT. All are deliberately simple and guarded by size ceilings.
"""

from __future__ import annotations

from itertools import permutations

from .core import ColoredDigraph, Query, Witness

STATE_CEILING = 10**7


def _state_budget(g: ColoredDigraph, r: int) -> int:
    return g.n * max(1, g.num_colors) ** min(r, g.n + 1)


def _start_window(g: ColoredDigraph, r: int) -> tuple[int, ...]:
    return (g.colors[g.s],) if r >= 1 else ()


def _extend_window(window: tuple[int, ...], color: int, r: int) -> tuple[int, ...] | None:
    """New trailing window after appending a color, or None if not rainbow."""
    if r == 0:
        return ()
    if color in window:
        return None
    return (window + (color,))[-r:]


def oracle_walk(g: ColoredDigraph, query: Query) -> Witness | None:
    """Search the product of the graph with trailing color windows.

    States are (vertex, window of the last min(r, steps+1) colors); a
    breadth-first search layered by walk length finds the earliest witness.
    Mode "any" ignores the length bound and explores every reachable state.

    Raises:
        ValueError: if the state space exceeds STATE_CEILING.
    """
    if _state_budget(g, query.r) > STATE_CEILING:
        raise ValueError(
            f"product state space {_state_budget(g, query.r)} exceeds {STATE_CEILING}"
        )
    start = (g.s, _start_window(g, query.r))
    if query.mode == "any":
        return _walk_any(g, query.r, start)
    # parents[p] maps each state reachable by a p-step walk to its predecessor
    parents: list[dict[tuple[int, tuple[int, ...]], tuple[int, tuple[int, ...]] | None]] = [
        {start: None}
    ]
    for step in range(1, query.ell + 1):
        layer: dict[tuple[int, tuple[int, ...]], tuple[int, tuple[int, ...]] | None] = {}
        for (v, window) in parents[step - 1]:
            for u in g.out_neighbors[v]:
                new_window = _extend_window(window, g.colors[u], query.r)
                if new_window is None:
                    continue
                state = (u, new_window)
                if state not in layer:
                    layer[state] = (v, window)
        parents.append(layer)
        if query.mode == "atmost":
            hit = next((st for st in layer if st[0] == g.t), None)
            if hit is not None:
                return _reconstruct(parents, step, hit)
    if query.mode == "exact":
        hit = next((st for st in parents[query.ell] if st[0] == g.t), None)
        if hit is not None:
            return _reconstruct(parents, query.ell, hit)
    return None


def _walk_any(
    g: ColoredDigraph, r: int, start: tuple[int, tuple[int, ...]]
) -> Witness | None:
    parent: dict[tuple[int, tuple[int, ...]], tuple[int, tuple[int, ...]] | None] = {
        start: None
    }
    frontier = [start]
    while frontier:
        next_frontier = []
        for (v, window) in frontier:
            for u in g.out_neighbors[v]:
                new_window = _extend_window(window, g.colors[u], r)
                if new_window is None:
                    continue
                state = (u, new_window)
                if state in parent:
                    continue
                parent[state] = (v, window)
                if u == g.t:
                    vertices = [u]
                    cur = (v, window)
                    while cur is not None:
                        vertices.append(cur[0])
                        cur = parent[cur]
                    return Witness(tuple(reversed(vertices)))
                next_frontier.append(state)
        frontier = next_frontier
    return None


def _reconstruct(
    parents: list[dict],
    level: int,
    state: tuple[int, tuple[int, ...]],
) -> Witness:
    vertices = []
    cur: tuple[int, tuple[int, ...]] | None = state
    for p in range(level, -1, -1):
        assert cur is not None
        vertices.append(cur[0])
        cur = parents[p][cur]
    assert cur is None
    return Witness(tuple(reversed(vertices)))


def oracle_path(g: ColoredDigraph, query: Query) -> Witness | None:
    """Exhaustive DFS over simple locally rainbow s-t paths."""
    ell = g.n - 1 if query.mode == "any" else query.ell
    exact = query.mode == "exact"
    colors = g.colors
    out = g.out_neighbors
    found: list[tuple[int, ...]] = []

    def dfs(v: int, window: tuple[int, ...], visited: set[int], seq: list[int]) -> bool:
        if v == g.t:
            if not exact or len(seq) - 1 == ell:
                found.append(tuple(seq))
                return True
            return False
        if len(seq) - 1 >= ell:
            return False
        for u in out[v]:
            if u in visited:
                continue
            new_window = _extend_window(window, colors[u], query.r)
            if new_window is None:
                continue
            visited.add(u)
            seq.append(u)
            if dfs(u, new_window, visited, seq):
                return True
            seq.pop()
            visited.remove(u)
        return False

    dfs(g.s, _start_window(g, query.r), {g.s}, [g.s])
    return Witness(found[0]) if found else None


def oracle_phs(k: int, sets: list[set[tuple[int, int]]]) -> tuple[int, ...] | None:
    """Find a permutation of [1..k] hitting every pair family, if one exists.

    Each family is a set of (index, value) pairs over [1..k]; a permutation
    phi hits a family when phi(index) = value for some pair in it. Returns
    phi as a tuple with phi(i) = result[i-1], or None.
    """
    if k > 8:
        raise ValueError(f"permutation enumeration is limited to k <= 8, got {k}")
    for perm in permutations(range(1, k + 1)):
        if all(any(perm[i - 1] == j for (i, j) in family) for family in sets):
            return perm
    return None


def oracle_3sat(clauses: list[tuple[int, ...]]) -> dict[int, bool] | None:
    """Exhaustively solve a CNF given as DIMACS-style literal tuples."""
    variables = sorted({abs(lit) for clause in clauses for lit in clause})
    if len(variables) > 20:
        raise ValueError(f"assignment enumeration is limited to 20 variables, got {len(variables)}")
    for bits in range(1 << len(variables)):
        assignment = {v: bool(bits >> i & 1) for i, v in enumerate(variables)}
        if all(
            any(assignment[abs(lit)] == (lit > 0) for lit in clause) for clause in clauses
        ):
            return assignment
    return None
