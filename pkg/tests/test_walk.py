"""Layered walk DP, the any-length wrapper, and the r=1 shortcut."""
from __future__ import annotations

import random

import pytest

from rainbowpaths import (
    ColoredDigraph,
    Query,
    Witness,
    any_length_cap,
    gen_random,
    is_ordered_representative,
    oracle_walk,
    ordered_bound,
    solve_r1,
    solve_walk,
    solve_walk_any_length,
    verify_witness,
)
from rainbowpaths.repfam import SeqFamily
from rainbowpaths.walk import prune_window_cell


def chain(colors):
    n = len(colors)
    arcs = tuple((i, i + 1) for i in range(n - 1))
    return ColoredDigraph(n, tuple(colors), arcs, 0, n - 1)


def test_chain_walk():
    g = chain((0, 1, 2))
    assert solve_walk(g, Query(2, 2, "exact")) == Witness((0, 1, 2))
    assert solve_walk(g, Query(2, 2, "atmost")) == Witness((0, 1, 2))
    assert solve_walk(g, Query(2, 1, "atmost")) is None


def test_chain_color_repeat_blocks():
    assert solve_walk(chain((0, 0, 1)), Query(1, 2, "atmost")) is None
    assert solve_walk(chain((0, 1, 0)), Query(1, 2, "atmost")) == Witness((0, 1, 2))


def test_r_zero_is_plain_reachability():
    g = chain((0, 0, 0))
    assert solve_walk(g, Query(0, 2, "atmost")) == Witness((0, 1, 2))


def test_any_mode_rejected():
    with pytest.raises(ValueError):
        solve_walk(chain((0, 1)), Query(1, 0, "any"))


def test_walk_matches_oracle_randomized():
    rng = random.Random(21)
    for trial in range(150):
        g, q = gen_random(
            rng.randint(2, 8),
            rng.choice((0.2, 0.4)),
            rng.randint(1, 4),
            rng.randint(1, 3),
            rng.randint(0, 9),
            seed=5000 + trial,
            mode=rng.choice(("atmost", "exact")),
        )
        mine = solve_walk(g, q)
        ref = oracle_walk(g, q)
        assert (mine is None) == (ref is None), (trial, q)
        if mine is not None:
            assert verify_witness(g, q, mine.vertices) == []


def test_prune_cell_keeps_small_cells_verbatim():
    cell = {(0, 1): "a", (1, 0): "b"}
    assert prune_window_cell(cell, 2) == cell


def test_prune_cell_output_is_representative():
    r = 1
    cell = {(c,): c for c in range(6)}
    kept = prune_window_cell(cell, r)
    assert len(kept) <= ordered_bound(r)
    for window, value in kept.items():
        assert cell[window] == value
    full = SeqFamily(r, tuple(sorted(cell)), tuple(range(6)))
    sub = SeqFamily(r, tuple(sorted(kept)), tuple(range(len(kept))))
    assert is_ordered_representative(sub, full, r)


def test_any_length_cap_value():
    assert any_length_cap(5, 0) == 5
    assert any_length_cap(5, 1) == 5
    assert any_length_cap(4, 2) == 4 * 3


def test_any_length_backends_agree():
    rng = random.Random(31)
    for trial in range(120):
        g, _ = gen_random(rng.randint(2, 7), 0.35, rng.randint(1, 4), 0, 0, seed=7000 + trial)
        r = rng.randint(0, 3)
        cap = solve_walk_any_length(g, r, backend="cap")
        product = solve_walk_any_length(g, r, backend="product")
        assert (cap is None) == (product is None), trial
        if cap is not None:
            q = Query(r, 0, "any")
            assert verify_witness(g, q, cap.vertices) == []
            assert verify_witness(g, q, product.vertices) == []


def test_any_length_requires_lap_around_cycle():
    # The exit color 0 clashes with the first window at vertex 1, so the
    # walk must loop 1 -> 2 -> 3 -> 1 before leaving; length 5 > n - 1.
    g = ColoredDigraph(
        5, (0, 1, 2, 3, 0), ((0, 1), (1, 2), (2, 3), (3, 1), (1, 4)), 0, 4
    )
    w = solve_walk_any_length(g, 2)
    assert w == Witness((0, 1, 2, 3, 1, 4))
    assert solve_walk_any_length(g, 2, backend="product") is not None


def test_any_length_no_instance_terminates_quickly():
    g = chain((0, 0, 1))
    assert solve_walk_any_length(g, 1) is None
    assert solve_walk_any_length(g, 1, backend="product") is None


def test_any_length_budget_refusal():
    n = 400
    arcs = tuple((i, i + 1) for i in range(n - 1))
    g = ColoredDigraph(n, tuple(i % 5 for i in range(n)), arcs, 0, n - 1)
    with pytest.raises(ValueError):
        solve_walk_any_length(g, 4, backend="cap")


def test_solve_r1_matches_walk():
    rng = random.Random(41)
    for trial in range(100):
        g, _ = gen_random(rng.randint(2, 8), 0.4, rng.randint(1, 4), 0, 0, seed=9000 + trial)
        ell = rng.randint(0, 8)
        mine = solve_r1(g, ell)
        ref = solve_walk(g, Query(1, ell, "atmost"))
        assert (mine is None) == (ref is None)
        if mine is not None:
            assert verify_witness(g, Query(1, ell, "atmost"), mine.vertices) == []


def test_stats_are_recorded():
    stats: dict = {}
    solve_walk(chain((0, 1, 2)), Query(2, 2, "atmost"), stats=stats)
    assert stats
