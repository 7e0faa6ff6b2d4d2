"""Syntactic layer: curve ids, connectivity, chains, intervals, claims."""

from __future__ import annotations

import pytest

from twistcert import lickorish as lk


def cs(g, *names):
    return lk.CurveSet.of(g, names)


def test_lambda_counts():
    for g in range(2, 8):
        lam = lk.lam(g)
        assert len(lam) == 3 * g - 1
        pairs = lk.intersecting_pairs(g)
        assert len(pairs) == 3 * g - 2
        assert len(set(pairs)) == len(pairs)


def test_lambda_g2_examples():
    assert len(lk.lam(2)) == 5
    assert len(lk.intersecting_pairs(2)) == 4
    adj = lk.adjacency(2)
    assert "g1" not in adj["a1"]
    assert "b1" in adj["a1"]


def test_lambda_g3_pair_count():
    # g + 2(g-1) crossings
    assert len(lk.intersecting_pairs(3)) == 7
    assert len(lk.lam(3)) == 8


def test_genus_validation():
    with pytest.raises(lk.LickorishError):
        lk.lam(1)
    with pytest.raises(lk.LickorishError):
        lk.curve_names(0)
    with pytest.raises(lk.LickorishError):
        lk.CurveSet.of(2, ["a3"])
    with pytest.raises(lk.LickorishError):
        lk.CurveSet.of(3, ["g3"])


def test_curve_index_round_trip():
    for g in (2, 3, 5):
        names = lk.curve_names(g)
        assert [lk.curve_index(n, g) for n in names] == list(range(3 * g - 1))
        mask = lk.lam(g).mask()
        assert mask == (1 << (3 * g - 1)) - 1
        assert lk.CurveSet.from_mask(g, mask) == lk.lam(g)


def test_connectivity():
    assert lk.is_connected(cs(2, "a1", "b1", "g1"))
    parts = lk.components(cs(2, "a1", "a2"))
    assert len(parts) == 2
    assert lk.is_connected(lk.CurveSet.of(2, []))  # vacuously
    assert lk.components(lk.CurveSet.of(2, [])) == []


def test_connectivity_masks_agree():
    g = 3
    for mask in range(1, 1 << (3 * g - 1)):
        s = lk.CurveSet.from_mask(g, mask)
        assert lk.is_connected_mask(g, mask) == lk.is_connected(s)


def test_chain_order_examples():
    assert lk.chain_order(cs(3, "a1", "b1", "g1")) == ["a1", "b1", "g1"]
    assert lk.chain_order(cs(3, "a2", "b2", "g1", "g2")) is None  # b2 has degree 3
    assert lk.chain_order(cs(3, "b1", "g1", "b2", "g2", "b3")) == ["b1", "g1", "b2", "g2", "b3"]
    assert lk.chain_order(cs(3, "a1")) == ["a1"]
    assert lk.chain_order(cs(3, "a1", "a2")) is None  # disconnected
    with pytest.raises(lk.LickorishError):
        lk.chain_order(lk.CurveSet.of(3, []))


def test_interval_literal_sets():
    # [b1,b2] at any genus >= 2: the interior-a block is empty
    iv = lk.Interval(lk.IntervalKind.BB, 1, 2)
    assert lk.interval_set(iv, 3).members == frozenset({"b1", "b2", "g1"})

    iv = lk.Interval(lk.IntervalKind.GG, 1, 2)
    assert lk.interval_set(iv, 3).members == frozenset({"b2", "g1", "g2"})
    assert lk.extended_support(iv, 3).members == frozenset({"a2", "b2", "g1", "g2"})

    iv = lk.Interval(lk.IntervalKind.AA, 1, 3)
    assert lk.interval_set(iv, 3).members == frozenset(
        {"a1", "b1", "g1", "a2", "b2", "g2", "b3", "a3"}
    )


def test_interval_chain_lengths():
    assert lk.Interval(lk.IntervalKind.AA, 1, 3).chain_length_m == 7  # 2(j-i)+3
    assert lk.Interval(lk.IntervalKind.BB, 1, 3).chain_length_m == 5
    assert lk.Interval(lk.IntervalKind.GB, 1, 3).chain_length_m == 4
    assert lk.Interval(lk.IntervalKind.AB, 1, 1).chain_length_m == 2
    # the literal set of an interval whose interior-a block is empty is a
    # chain of exactly that length
    for iv in lk.all_intervals(4):
        s = lk.interval_set(iv, 4)
        if iv.j - iv.i <= 1:
            order = lk.chain_order(s)
            assert order is not None and len(order) == iv.chain_length_m, iv.label()


def test_interval_validation():
    with pytest.raises(lk.LickorishError):
        lk.interval_set(lk.Interval(lk.IntervalKind.GG, 1, 3), 3)  # g3 missing
    with pytest.raises(lk.LickorishError):
        lk.interval_set(lk.Interval(lk.IntervalKind.AA, 1, 4), 3)
    with pytest.raises(lk.LickorishError):
        lk.Interval(lk.IntervalKind.AA, 2, 2)  # degenerate


def test_extended_support_contains_literal():
    for g in (3, 4, 5):
        for iv in lk.all_intervals(g):
            assert lk.interval_set(iv, g).members <= lk.extended_support(iv, g).members, iv.label()


def test_enclosing_interval_star():
    s = cs(3, "a2", "b2", "g1", "g2")
    iv, m = lk.enclosing_interval(s)
    assert (iv.kind, iv.i, iv.j, m) == (lk.IntervalKind.GG, 1, 2, 3)


def test_enclosing_interval_rejects_chains():
    with pytest.raises(lk.LickorishError):
        lk.enclosing_interval(cs(3, "a1", "b1", "g1", "b2"))  # a path, hence a chain


def test_enclosing_interval_minimality_and_m_bound():
    for g in (3, 4):
        for mask in range(1, 1 << (3 * g - 1)):
            if not lk.is_connected_mask(g, mask):
                continue
            s = lk.CurveSet.from_mask(g, mask)
            if lk.chain_order(s) is not None:
                continue
            iv, m = lk.enclosing_interval(s)
            assert m < len(s)
            assert s.members <= lk.extended_support(iv, g).members


def test_classify_chain_examples():
    assert lk.classify_chain(cs(2, "a1", "b1"), 2) == lk.EnclosureClaim(1, 1, True, "chain-even")
    claim = lk.classify_chain(cs(2, "a1", "b1", "g1", "b2", "a2"), 2)
    assert (claim.genus_bound, claim.boundary_bound) == (2, 1)
    assert claim.case_tag == "chain-odd-separating"
    claim = lk.classify_chain(cs(3, "b1", "g1", "b2"), 3)
    assert (claim.genus_bound, claim.boundary_bound) == (1, 2)
    with pytest.raises(lk.LickorishError):
        lk.classify_chain(cs(3, "a2", "b2", "g1", "g2"), 3)


def test_separating_chain_form():
    assert lk.separating_chain_form(cs(2, "a1", "b1", "g1", "b2", "a2")) == (1, 2)
    # deleting the interior a from [a1,a3] leaves the separating 7-chain
    s = cs(3, "a1", "b1", "g1", "b2", "g2", "b3", "a3")
    assert lk.separating_chain_form(s) == (1, 3)
    assert lk.separating_chain_form(cs(3, "b1", "g1", "b2")) is None


def test_size_classify_examples():
    claim = lk.size_classify(cs(3, "a2", "b2", "g1", "g2"), 3)
    assert (claim.genus_bound, claim.boundary_bound) == (1, 3)
    assert claim.nonseparating_required

    claim = lk.size_classify(cs(2, "a1", "b1", "g1", "b2", "a2"), 2)
    assert (claim.genus_bound, claim.boundary_bound) == (2, 1)

    claim = lk.size_classify(cs(2, "a1", "b1"), 2)
    assert (claim.genus_bound, claim.boundary_bound) == (1, 1)


def test_size_classify_full_set():
    # the whole generator set is enclosed by the widest b-window
    for g in (3, 4, 5):
        claim = lk.size_classify(lk.lam(g), g)
        assert (claim.genus_bound, claim.boundary_bound) == (g, 1)


def test_claims_fit_clauses():
    for g in (2, 3, 4):
        for mask in range(1, 1 << (3 * g - 1)):
            if not lk.is_connected_mask(g, mask):
                continue
            s = lk.CurveSet.from_mask(g, mask)
            claim = lk.size_classify(s, g)
            assert lk.claim_fits_clause(claim, len(s)), (g, s.sorted_members(), claim)


def test_badchains_m_arithmetic():
    # j = i + (m-3)/2 for the separating family
    for g in (3, 4, 5):
        for mask in range(1, 1 << (3 * g - 1)):
            if not lk.is_connected_mask(g, mask):
                continue
            s = lk.CurveSet.from_mask(g, mask)
            order = lk.chain_order(s)
            if order is None:
                continue
            form = lk.separating_chain_form(s)
            if form is not None:
                i, j = form
                assert j == i + (len(order) - 3) // 2
