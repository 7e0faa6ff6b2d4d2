"""Independent homological oracles for the surface machinery.

The complement census and neighbourhood reports are produced by face
tracing and sector bookkeeping.  These tests recompute two of their
headline numbers by a completely different route, mod-2 homology of the
capped complex:

* the number of complement components of a curve union equals
  1 + dim( Z_1(union) intersect B_1(surface) ), and
* the genus of a connected union's neighbourhood equals half the rank
  of the crossing-parity matrix, because the curve classes span the
  neighbourhood's first homology and the intersection form of the
  capped-off neighbourhood is nondegenerate.
"""

from __future__ import annotations

from twistcert import lickorish as lk
from twistcert import surface as sf
from twistcert.nervecplx import gf2_rank


def _arc_vectors(rg):
    """Per-curve cycle vectors and per-face boundary vectors over the
    arc index set, as bitmasks."""
    curve_vec: dict[str, int] = {}
    for idx, arc in enumerate(rg.arcs):
        curve_vec[arc.curve] = curve_vec.get(arc.curve, 0) ^ (1 << idx)
    face_vecs = []
    for cycle in rg.faces:
        vec = 0
        for d in cycle:
            vec ^= 1 << rg._dart_arc[d]
        face_vecs.append(vec)
    return curve_vec, face_vecs


def _intersection_dim(span_a: list[int], span_b: list[int]) -> int:
    ra = gf2_rank(span_a)
    rb = gf2_rank(span_b)
    rab = gf2_rank(span_a + span_b)
    return ra + rb - rab


def test_component_count_matches_homology():
    """Census component count against 1 + dim(Z_1 cap B_1)."""
    for g in (2, 3, 4):
        rg = sf.lickorish_surface(g)
        curve_vec, face_vecs = _arc_vectors(rg)
        names = lk.curve_names(g)
        for mask in range(1, 1 << len(names)):
            members = [names[i] for i in range(len(names)) if mask >> i & 1]
            cycles = [curve_vec[n] for n in members]
            expected = 1 + _intersection_dim(cycles, face_vecs)
            census = sf.complement_census(rg, members, fill=False)
            assert len(census) == expected, (g, members, census, expected)


def test_raw_genus_matches_intersection_form_rank():
    """Raw neighbourhood genus against half the crossing-parity rank."""
    for g in (2, 3, 4):
        rg = sf.lickorish_surface(g)
        names = lk.curve_names(g)
        adj = lk.adjacency(g)
        for mask in range(1, 1 << len(names)):
            if not lk.is_connected_mask(g, mask):
                continue
            members = [names[i] for i in range(len(names)) if mask >> i & 1]
            pos = {n: p for p, n in enumerate(members)}
            rows = []
            for n in members:
                row = 0
                for other in adj[n]:
                    if other in pos:
                        row |= 1 << pos[other]
                rows.append(row)
            rank = gf2_rank(rows)
            assert rank % 2 == 0
            rep = sf.min_enclosing_subsurface(rg, members, fill=False)
            assert rep.genus == rank // 2, (g, members, rep.genus, rank)


def test_curve_cycles_independent():
    """The per-curve cycles are linearly independent, so they are a basis
    of the union's first homology (the crossing graph is a forest)."""
    for g in (2, 3, 5):
        rg = sf.lickorish_surface(g)
        curve_vec, _ = _arc_vectors(rg)
        assert gf2_rank(list(curve_vec.values())) == 3 * g - 1
