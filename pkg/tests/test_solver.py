"""Depth search: decision procedure, witnesses, and the exactness sweep."""

import pytest

from skeindepth import (
    SkeinBranch,
    SkeinLeaf,
    SolveContext,
    canonical_code,
    compute_td,
    depth_at_most,
    extract_tree,
    parse_braid,
    parse_pd,
    simplify,
    smooth,
    switch,
    tree_depth,
    verify_tree,
)

from conftest import FIXTURE_PDS

INF = 10**9


def brute_min_height(d, cap):
    """Minimum height over every resolution tree with crossingless
    leaves — no memo, no pruning, no recognizer.  The independent oracle
    for diagram_upper on small inputs."""
    d = simplify(d)
    if d.is_crossingless():
        return 0
    if cap == 0:
        return INF
    best = INF
    for i in range(d.crossing_count):
        a = brute_min_height(switch(d, i), cap - 1)
        if a >= INF:
            continue
        b = brute_min_height(smooth(d, i), cap - 1)
        best = min(best, 1 + max(a, b))
    return best


def test_depth_ladder_hopf():
    ctx = SolveContext()
    hopf = parse_pd(FIXTURE_PDS["hopf+"][0])
    assert depth_at_most(hopf, -1, ctx=ctx) is False
    assert depth_at_most(hopf, 0, ctx=ctx) is False
    assert depth_at_most(hopf, 1, ctx=ctx) is True
    assert depth_at_most(hopf, 7, ctx=ctx) is True


def test_depth_ladder_trefoil():
    ctx = SolveContext()
    tref = parse_pd(FIXTURE_PDS["trefoil"][0])
    assert depth_at_most(tref, 1, ctx=ctx) is False
    assert depth_at_most(tref, 2, ctx=ctx) is True


def test_crossingless_is_depth_zero():
    ctx = SolveContext()
    assert depth_at_most(parse_pd("O"), 0, ctx=ctx) is True
    assert depth_at_most(parse_pd("O;O;O"), 0, ctx=ctx) is True
    assert depth_at_most(parse_pd("X[2,2,1,1]"), 0, ctx=ctx) is True


def test_budget_exhaustion_returns_none_and_is_not_cached():
    tref = parse_pd(FIXTURE_PDS["trefoil"][0])
    ctx = SolveContext()
    assert depth_at_most(tref, 2, budget=0, ctx=ctx) is None
    # the same context must still be able to answer once given budget
    assert depth_at_most(tref, 2, ctx=ctx) is True


def test_failed_search_memoizes_refutation():
    ctx = SolveContext()
    tref = parse_pd(FIXTURE_PDS["trefoil"][0])
    assert depth_at_most(tref, 1, ctx=ctx) is False
    code = canonical_code(simplify(tref))
    lo, hi = ctx.memo[code]
    assert lo >= 2


def test_extract_and_verify_trefoil_witness():
    ctx = SolveContext()
    tref = parse_pd(FIXTURE_PDS["trefoil"][0])
    tree = extract_tree(tref, 2, ctx=ctx)
    assert tree_depth(tree) == 2
    assert verify_tree(tree) == 2
    assert isinstance(tree, SkeinBranch)
    # the recorded crossing really resolves this diagram
    assert 0 <= tree.crossing < tree.diagram.crossing_count


def test_extract_tree_without_witness_raises():
    ctx = SolveContext()
    hopf = parse_pd(FIXTURE_PDS["hopf+"][0])
    with pytest.raises(LookupError):
        extract_tree(hopf, 0, ctx=ctx)


def test_verify_tree_rejects_tampering():
    ctx = SolveContext()
    tref = parse_pd(FIXTURE_PDS["trefoil"][0])
    tree = extract_tree(tref, 2, ctx=ctx)
    # a leaf claiming the wrong component count
    bad_leaf = SkeinLeaf(parse_pd("O;O"), 1)
    with pytest.raises(ValueError):
        verify_tree(bad_leaf)
    # a branch whose children were swapped
    swapped = SkeinBranch(tree.diagram, tree.crossing, tree.smoothed, tree.switched)
    with pytest.raises(ValueError):
        verify_tree(swapped)
    # a leaf that is not an unlink at all
    with pytest.raises(ValueError):
        verify_tree(SkeinLeaf(parse_pd(FIXTURE_PDS["trefoil"][0]), 1))


def test_compute_td_trivial_cases():
    for text in ("O", "O;O", "O;O;O;O", "X[2,2,1,1]"):
        res = compute_td(parse_pd(text))
        assert res.status == "Exact(0)"
        assert isinstance(res.witness, SkeinLeaf)
        assert verify_tree(res.witness) == 0


def test_compute_td_exact_rows():
    expected = {
        "hopf+": 1,
        "trefoil": 2,
        "fig8": 2,
        "L4a1{1}": 3,
        "K5a2": 4,
        "L5a1": 3,
    }
    ctx = SolveContext()
    for name, want in expected.items():
        res = compute_td(parse_pd(FIXTURE_PDS[name][0]), ctx=ctx)
        assert res.is_exact and res.value == want, (name, res.status)
        assert verify_tree(res.witness) == want == res.diagram_upper


def test_compute_td_interval_rows():
    # zero in-scope lower bound reaches these links' true depths; the
    # result must stay an honest interval with a verified witness upper
    ctx = SolveContext()
    for name, (lo, hi) in {"L4a1{0}": (1, 2), "K5a1": (2, 3)}.items():
        res = compute_td(parse_pd(FIXTURE_PDS[name][0]), ctx=ctx)
        assert not res.is_exact
        assert (res.link_lower, res.diagram_upper) == (lo, hi), name
        assert verify_tree(res.witness) == hi
        assert res.render() == f"[{lo}, {hi}]"
        with pytest.raises(ValueError):
            res.value


def test_compute_td_brute_oracle_small():
    """diagram_upper agrees with full-tree enumeration on every fixture
    with at most 4 crossings."""
    ctx = SolveContext()
    for name, (text, _) in FIXTURE_PDS.items():
        d = parse_pd(text)
        if d.crossing_count > 4:
            continue
        s = simplify(d)
        cap = max(s.crossing_count - 1, 0)
        want = brute_min_height(d, cap)
        res = compute_td(d, ctx=ctx)
        assert res.diagram_upper == want, name


def test_formula_path_survives_starved_budget():
    w = parse_braid("p=2: 1 1 1 1 1 1 1")
    from skeindepth import braid_closure

    res = compute_td(braid_closure(w), braid_words=[w], budget=3, ctx=SolveContext())
    assert res.is_exact and res.value == 6
    assert not res.budget_exhausted


def test_starved_budget_flags_interval():
    res = compute_td(
        parse_pd(FIXTURE_PDS["K5a1"][0]), budget=2, ctx=SolveContext()
    )
    assert not res.is_exact
    assert res.budget_exhausted
    # exhaustion widens, never falsifies: the honest answer fits inside
    assert res.link_lower <= 3 <= res.diagram_upper


def test_max_depth_caps_search_not_claim():
    res = compute_td(
        parse_pd(FIXTURE_PDS["K5a2"][0]), max_depth=1, ctx=SolveContext()
    )
    assert (res.link_lower, res.diagram_upper) == (4, 4)  # bounds already meet


def test_timeout_produces_interval():
    res = compute_td(
        parse_pd(FIXTURE_PDS["K5a1"][0]), timeout_secs=0.0, ctx=SolveContext()
    )
    assert res.budget_exhausted and not res.is_exact


def test_persisted_interval_answers_without_witness():
    ctx1 = SolveContext()
    tref = parse_pd(FIXTURE_PDS["trefoil"][0])
    assert depth_at_most(tref, 2, ctx=ctx1) is True
    code = canonical_code(simplify(tref))
    ctx2 = SolveContext()
    ctx2.persisted[code] = ctx1.memo[code]
    assert depth_at_most(tref, 2, budget=0, ctx=ctx2) is True
    res = compute_td(tref, ctx=ctx2)
    assert res.is_exact and res.value == 2 and res.witness is None


def test_result_rendering():
    res = compute_td(parse_pd(FIXTURE_PDS["trefoil"][0]), ctx=SolveContext())
    assert res.render() == "2"
    assert res.status == "Exact(2)"
