"""Nerves, joins, and reduced mod-2 homology."""

from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistcert import nervecplx as nc


def test_nerve_triangle_boundary():
    # three pairwise-meeting sets with empty triple intersection
    n = nc.nerve([{1, 2}, {2, 3}, {1, 3}])
    assert n == nc.boundary_simplex(2)
    assert not n.has_simplex({0, 1, 2})


def test_nerve_intervals_full_simplex():
    n = nc.nerve([set(range(0, 3)), set(range(1, 4)), set(range(2, 5))])
    assert n == nc.full_simplex(2)


def test_nerve_empty_family():
    assert nc.nerve([]).is_empty()


def test_nerve_empty_member_is_isolated():
    n = nc.nerve([{1}, set(), {1, 2}])
    assert n.vertex_labels == (0, 1, 2)
    assert not n.has_simplex({1})
    assert n.has_simplex({0, 2})


def test_join_dimension_example():
    j = nc.join(nc.full_simplex(1), nc.SimplicialComplex([["x", "y", "z"]]))
    assert j.dim == 4


def test_join_with_empty():
    k = nc.boundary_simplex(2)
    assert nc.join(k, nc.SimplicialComplex([])) == k
    assert nc.join(nc.SimplicialComplex([]), k) == k


def test_join_requires_disjoint_labels():
    with pytest.raises(ValueError):
        nc.join(nc.full_simplex(1), nc.full_simplex(1))


def test_join_s0_s0_is_circle():
    sq = nc.join(nc.boundary_simplex(1), nc.SimplicialComplex([["x"], ["y"]]))
    assert sorted(len(f) for f in sq.maximal_faces) == [2, 2, 2, 2]
    assert nc.is_homology_sphere(sq, 1)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_join_dimension_formula(data):
    def random_complex(tag):
        n_verts = data.draw(st.integers(1, 5))
        verts = [f"{tag}{i}" for i in range(n_verts)]
        n_faces = data.draw(st.integers(1, 4))
        faces = [
            data.draw(st.sets(st.sampled_from(verts), min_size=1, max_size=n_verts))
            for _ in range(n_faces)
        ]
        return nc.SimplicialComplex(faces)

    k1, k2 = random_complex("u"), random_complex("v")
    assert nc.join(k1, k2).dim == k1.dim + k2.dim + 1


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_nerve_union_contained_in_join(data):
    """One-sided containment holds for arbitrary families."""
    ground = list(range(8))
    n1 = data.draw(st.integers(1, 4))
    n2 = data.draw(st.integers(1, 4))
    fam1 = [data.draw(st.sets(st.sampled_from(ground), max_size=5)) for _ in range(n1)]
    fam2 = [data.draw(st.sets(st.sampled_from(ground), max_size=5)) for _ in range(n2)]
    union_nerve = nc.nerve(fam1 + fam2)
    nerve1 = nc.nerve(fam1)
    nerve2 = nc.SimplicialComplex(
        [{v + n1 for v in m} for m in nc.nerve(fam2).maximal_faces],
        vertex_labels=tuple(range(n1, n1 + n2)),
    )
    joined = nc.join(nerve1, nerve2)
    for m in union_nerve.maximal_faces:
        assert joined.has_simplex(m), (fam1, fam2, sorted(m))


def test_betti_boundary_3_simplex():
    assert nc.betti_z2(nc.boundary_simplex(3)).values == (0, 0, 1)


def test_betti_cone_trivial():
    assert nc.betti_z2(nc.full_simplex(5)).values == (0, 0, 0, 0, 0, 0)


def test_betti_two_points():
    two = nc.SimplicialComplex([["p"], ["q"]])
    assert nc.betti_z2(two).values == (1,)
    assert nc.is_homology_sphere(two, 0)


def test_betti_join_of_two_sphere_boundaries():
    b2 = nc.boundary_simplex(2)
    b2b = nc.SimplicialComplex([{f"x{i}", f"x{j}"} for i, j in combinations(range(3), 2)])
    jj = nc.join(b2, b2b)
    assert nc.betti_z2(jj).values == (0, 0, 0, 1)
    assert nc.is_homology_sphere(jj, 3)


def test_torus_complex_not_sphere():
    # 3x3 grid torus (diagonally split squares): betti (0, 2, 1) mod 2
    def v(r, c):
        return (r % 3) * 3 + (c % 3)

    faces = []
    for r in range(3):
        for c in range(3):
            faces.append({v(r, c), v(r + 1, c), v(r, c + 1)})
            faces.append({v(r + 1, c), v(r, c + 1), v(r + 1, c + 1)})
    torus = nc.SimplicialComplex(faces)
    assert torus.euler_characteristic() == 0
    assert nc.betti_z2(torus).values == (0, 2, 1)
    assert not nc.is_homology_sphere(torus, 2)


def test_sphere_joins_small():
    for parts in [(1,), (2,), (1, 1), (2, 1), (3, 2), (1, 1, 1)]:
        factors = []
        offset = 0
        for k in parts:
            verts = range(offset, offset + k + 1)
            factors.append(nc.SimplicialComplex(combinations(verts, k)))
            offset += k + 1
        joined = nc.join_all(factors)
        assert nc.is_homology_sphere(joined, sum(parts) - 1), parts


def test_commuting_nerve_model_agrees_for_product_oracle():
    fix = [
        [frozenset({1, 2}), frozenset({2, 3}), frozenset({9})],
        [frozenset({5}), frozenset({5, 6})],
    ]
    oracle = nc.product_fix_oracle(fix)
    ok, witness = nc.commuting_nerve_model([["s", "t", "u"], ["v", "w"]], oracle)
    assert ok and witness is None


def test_commuting_nerve_model_single_family():
    fix = [[frozenset({1}), frozenset({2})]]
    ok, witness = nc.commuting_nerve_model([["s", "t"]], nc.product_fix_oracle(fix))
    assert ok and witness is None


def test_commuting_nerve_model_reports_violation():
    fix = [[frozenset({1, 2}), frozenset({2, 3})], [frozenset({5}), frozenset({5, 6})]]
    base = nc.product_fix_oracle(fix)

    def broken(selection):
        chosen = [(fi, m) for fi, ms in enumerate(selection) for m in ms]
        if (0, 0) in chosen and (1, 0) in chosen:
            return False  # breaks the commuting-union closure
        return base(selection)

    ok, witness = nc.commuting_nerve_model([["s", "t"], ["v", "w"]], broken)
    assert not ok
    assert witness == frozenset({(0, 0), (1, 0)})


def test_helly_dimension_one_random():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(2, 6)
        fam = []
        for _ in range(n):
            a = rng.randint(0, 10)
            fam.append(frozenset(range(a, a + rng.randint(0, 5) + 1)))
        nv = nc.nerve(fam)
        if all(nv.has_simplex({i, j}) for i in range(n) for j in range(i + 1, n)):
            assert nv.has_simplex(range(n))
