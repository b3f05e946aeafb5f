"""Instance generators, reductions, and the file format."""
from __future__ import annotations

import random

import pytest

import helpers
from rainbowpaths import (
    CnfInput,
    ColoredDigraph,
    PHSInput,
    Query,
    dist_from_source,
    gen_3sat_instance,
    gen_phs_instance,
    gen_random,
    oracle_3sat,
    oracle_phs,
    parse_instance,
    phs_layout,
    read_dimacs,
    read_phs_sets,
    sat_layout,
    solve_path,
    solve_walk,
    verify_witness,
    write_instance,
)


def test_phs_input_canonicalizes():
    inp = PHSInput(2, (((2, 1), (1, 1)), ((1, 2),)))
    assert inp.sets[0] == ((1, 1), (2, 1))
    with pytest.raises(ValueError):
        PHSInput(0, ())
    with pytest.raises(ValueError):
        PHSInput(2, (((3, 1),),))


def test_phs_layout_counts():
    k, m = 3, 2
    lay = phs_layout(k, m)
    assert len(lay["u"]) == m + 1
    assert len(lay["v"]) == len(lay["w"]) == m * k * k
    ids = list(lay["u"].values()) + list(lay["v"].values()) + list(lay["w"].values())
    assert sorted(ids) == list(range((m + 1) + 2 * k * k * m))


def test_phs_instance_shape():
    inp = PHSInput(3, (((1, 2), (2, 2)), ((2, 1),)))
    g, q = gen_phs_instance(inp)
    k, m = 3, 2
    assert g.n == (m + 1) + 2 * k * k * m
    assert q == Query(k, m * (k + 1), "atmost")
    # anchors carry the extra color k, grid vertices colors 0..k-1
    lay = phs_layout(k, m)
    assert all(g.colors[i] == k for i in lay["u"].values())
    assert all(g.colors[x] == j - 1 for (qq, i, j), x in lay["v"].items())
    assert all(g.colors[x] == j - 1 for (qq, i, j), x in lay["w"].items())
    # every route crosses k grid rows per segment, so the budget is tight
    assert dist_from_source(g)[g.t] == q.ell


def test_phs_singleton_yes():
    g, q = gen_phs_instance(PHSInput(1, (((1, 1),),)))
    w = solve_walk(g, q)
    assert w is not None
    assert verify_witness(g, q, w.vertices, require_path=True) == []


def test_phs_conflicting_pins_no():
    g, q = gen_phs_instance(PHSInput(2, (((1, 1),), ((1, 2),))))
    assert oracle_phs(2, [{(1, 1)}, {(1, 2)}]) is None
    assert solve_walk(g, q) is None


def decode_permutation(witness, lay, k, m):
    """Extract the row choice per column from the grid vertices visited."""
    rev = {}
    for grid in ("v", "w"):
        for (qq, i, j), x in lay[grid].items():
            rev[x] = (grid, qq, i, j)
    per_segment = []
    for qq in range(1, m + 1):
        cols = {}
        hit_rows = []
        for x in witness:
            if x in rev and rev[x][1] == qq:
                grid, _, i, j = rev[x]
                cols[i] = j
                if grid == "w":
                    hit_rows.append(i)
        per_segment.append((cols, min(hit_rows) if hit_rows else None))
    return per_segment


def test_phs_worked_example():
    sets = (
        ((1, 2), (2, 2)),
        ((1, 1), (2, 2), (2, 3), (3, 3)),
        ((2, 1), (3, 1), (3, 2)),
    )
    inp = PHSInput(3, sets)
    g, q = gen_phs_instance(inp)
    w = solve_walk(g, q)
    assert w is not None
    assert verify_witness(g, q, w.vertices, require_path=True) == []
    lay = phs_layout(3, 3)
    segments = decode_permutation(w.vertices, lay, 3, 3)
    perms = []
    for cols, entry_row in segments:
        assert sorted(cols) == [1, 2, 3]
        assert sorted(cols.values()) == [1, 2, 3]
        perms.append(tuple(cols[i] for i in (1, 2, 3)))
        assert entry_row is not None
    # one permutation across all segments, and it hits every family
    assert len(set(perms)) == 1
    pi = perms[0]
    for fam, (cols, entry_row) in zip(sets, segments):
        assert (entry_row, pi[entry_row - 1]) in set(fam)
    assert oracle_phs(3, [set(f) for f in sets]) is not None

    # Hand-build the walk for the assignment {1: 2, 2: 1, 3: 3}, which
    # meets family q at row entry[q - 1]; it must be a valid simple path
    # that switches from the plain grid to the marked grid at that row.
    phi = (2, 1, 3)
    entry = (1, 3, 2)
    walk = [lay["u"][1]]
    for seg in (1, 2, 3):
        for row in (1, 2, 3):
            grid = "w" if row >= entry[seg - 1] else "v"
            walk.append(lay[grid][(seg, row, phi[row - 1])])
        walk.append(lay["u"][seg + 1])
    walk = tuple(walk)
    assert verify_witness(g, q, walk, require_path=True) == []
    assert len(walk) - 1 == q.ell
    assert lay["w"][(1, 2, 1)] in walk
    assert lay["v"][(2, 1, 2)] in walk
    assert lay["w"][(2, 3, 3)] in walk


def test_phs_random_round_trip():
    rng = random.Random(5)
    for trial in range(25):
        k = rng.randint(1, 2)
        m = rng.randint(1, 3)
        pairs = [(i, j) for i in range(1, k + 1) for j in range(1, k + 1)]
        sets = tuple(
            tuple(sorted(rng.sample(pairs, rng.randint(1, len(pairs)))))
            for _ in range(m)
        )
        g, q = gen_phs_instance(PHSInput(k, sets))
        got = solve_walk(g, q)
        ref = oracle_phs(k, [set(f) for f in sets])
        assert (got is None) == (ref is None), (k, sets)


def test_cnf_input_validation():
    with pytest.raises(ValueError):
        CnfInput(((1, 2, 2), (1, 2, 3), (-1, -2, -3), (-1, -2, 3), (1, -3, 2)))
    with pytest.raises(ValueError):
        CnfInput(((1, 2, 4), (1, 2, 4), (-1, -2, -4), (-1, -2, -4)))
    with pytest.raises(ValueError):
        CnfInput(((1, 2, 3), (1, 2, 3), (-1, -2, -3), (-1, -2, 3)))


def test_sat_instance_shape():
    cnf = CnfInput(((1, 2, 3), (1, 2, 3), (-1, -2, -3), (-1, -2, -3)))
    g, q = gen_3sat_instance(cnf)
    n, m = 3, 4
    assert g.n == 8 * n + 4 * m + 3
    assert q == Query(2, 6 * n + 3 * m + 2, "atmost")
    # exactly one vertex wears the connector color 3
    assert sum(1 for c in g.colors if c == 3) == 1
    lay = sat_layout(cnf)
    assert g.colors[lay["conn_a"]] == 3


def test_sat_round_trip_agrees_with_oracle():
    rng = random.Random(17)
    for trial in range(4):
        clauses = helpers.compliant_cnf(rng, 3)
        cnf = CnfInput(tuple(clauses))
        g, q = gen_3sat_instance(cnf)
        got = solve_path(g, q)
        ref = oracle_3sat(clauses)
        assert (got is None) == (ref is None)
        if got is not None:
            assert verify_witness(g, q, got.vertices, require_path=True) == []
            assert got.length == q.ell


def test_sat_path_length_is_rigid():
    # Any s-t path in the reduction has length exactly ell, so the
    # at-most budget ell - 1 must answer no.
    rng = random.Random(23)
    clauses = helpers.compliant_cnf(rng, 3)
    g, q = gen_3sat_instance(CnfInput(tuple(clauses)))
    assert solve_path(g, q) is not None
    assert solve_path(g, Query(q.r, q.ell - 1, "atmost")) is None


def test_sat_connector_is_load_bearing():
    rng = random.Random(29)
    clauses = helpers.compliant_cnf(rng, 3)
    cnf = CnfInput(tuple(clauses))
    g, q = gen_3sat_instance(cnf)
    lay = sat_layout(cnf)
    cut = tuple(a for a in g.arcs if a != (lay["conn_a"], lay["conn_b"]))
    assert len(cut) == len(g.arcs) - 1
    g2 = ColoredDigraph(g.n, g.colors, cut, g.s, g.t)
    assert solve_path(g2, q) is None


def test_gen_random_is_deterministic():
    a = gen_random(7, 0.4, 3, 2, 5, seed=42)
    b = gen_random(7, 0.4, 3, 2, 5, seed=42)
    assert write_instance(*a) == write_instance(*b)
    c = gen_random(7, 0.4, 3, 2, 5, seed=43)
    assert write_instance(*a) != write_instance(*c)


def test_write_parse_round_trip():
    rng = random.Random(33)
    for trial in range(20):
        g, q = gen_random(
            rng.randint(2, 9),
            0.4,
            rng.randint(1, 4),
            rng.randint(0, 3),
            rng.randint(0, 9),
            seed=19000 + trial,
            mode=rng.choice(("atmost", "exact", "any")),
        )
        text = write_instance(g, q)
        g2, q2 = parse_instance(text)
        assert g2 == g and q2 == q
        assert write_instance(g2, q2) == text


def test_parse_rejects_bad_header():
    with pytest.raises(ValueError):
        parse_instance("rainbow 9\n")


def test_parse_errors_carry_line_numbers():
    g, q = gen_random(4, 0.5, 2, 1, 3, seed=1)
    lines = write_instance(g, q).splitlines()
    lines[2] = "not numbers"
    with pytest.raises(ValueError) as exc:
        parse_instance("\n".join(lines) + "\n")
    assert "line" in str(exc.value)


def test_parse_allows_comments():
    g, q = gen_random(4, 0.5, 2, 1, 3, seed=2)
    text = "# a comment\n" + write_instance(g, q)
    g2, q2 = parse_instance(text)
    assert g2 == g and q2 == q


def test_read_dimacs():
    cnf = read_dimacs("c comment\np cnf 3 4\n1 2 3 0\n1 2 3 0\n-1 -2 -3 0\n-1 -2 -3 0\n")
    assert cnf.clauses == ((1, 2, 3), (1, 2, 3), (-1, -2, -3), (-1, -2, -3))


def test_read_phs_sets():
    inp = read_phs_sets("2\n1 1 2 2\n2 1\n")
    assert inp.k == 2
    assert inp.sets == (((1, 1), (2, 2)), ((2, 1),))
