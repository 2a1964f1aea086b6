"""Perversities, allowability, intersection homology, and the clot-star
decomposition, checked against the literal-inequality oracle and against
frozen values computed by hand on the small members."""

import pytest
from hypothesis import given, settings, strategies as st

from stratihom.core_complex import (
    Stratum,
    clot_join,
    clots,
    residual_complex,
)
from stratihom.corpus import corpus, corpus_member, extended_corpus
from stratihom.exact_algebra import INTEGERS, HomologyResult, RingSpec
from stratihom.extint import NEG_INF, POS_INF, ExtInt
from stratihom.intersection_chains import (
    IntersectionChainComplex,
    Perversity,
    RelativeIntersectionComplex,
    allowable_simplices,
    intersection_homology,
    is_allowable,
    is_intersection_chain,
    join_case_label,
    join_homology_prediction,
    join_rim,
    lower_middle_perversity,
    ordinary_homology,
    relative_intersection_homology,
    residual_decomposition_check,
    simplex_perverse_degree,
    top_perversity,
    truncated_homology,
    upper_middle_perversity,
    zero_perversity,
)
from stratihom.core_complex import StructuralError

import oracles


PRESETS = (
    zero_perversity(),
    top_perversity(),
    lower_middle_perversity(),
    upper_middle_perversity(),
)

MOD2 = RingSpec(2)


def oracle_values(K, pbar):
    """Perversity values keyed the oracle's way, by stratum vertex set."""
    out = {}
    for level, vertices, codim in oracles.stratum_data(K):
        if codim == 0:
            continue
        v = next(iter(vertices))
        out[vertices] = pbar.of_stratum(K.stratum_of((v,))).finite_value()
    return out


def as_pairs(groups):
    return {k: (g.rank, tuple(g.torsion)) for k, g in groups.items()}


# -- perversity values -------------------------------------------------------


def stratum_of_codim(k):
    return Stratum(
        level=0, index=0, codim=k, simplices=frozenset({(0,)}), regular=False
    )


def test_preset_values_on_small_codimensions():
    zero, top, lower, upper = PRESETS
    for k in range(2, 9):
        S = stratum_of_codim(k)
        assert top.of_stratum(S) == ExtInt(k - 2)
        assert zero.of_stratum(S) == ExtInt(0)
        assert lower.of_stratum(S) == ExtInt((k - 2) // 2)
        assert upper.of_stratum(S) == ExtInt(k - 2 - (k - 2) // 2)
        assert lower.of_stratum(S) + upper.of_stratum(S) == ExtInt(k - 2)


def test_middle_perversities_are_dual_to_each_other():
    lower, upper = lower_middle_perversity(), upper_middle_perversity()
    dual = lower.dual()
    for k in range(2, 9):
        S = stratum_of_codim(k)
        assert dual.of_stratum(S) == upper.of_stratum(S)


def test_zero_and_top_are_dual():
    dual = zero_perversity().dual()
    for k in range(2, 9):
        assert dual.of_stratum(stratum_of_codim(k)) == ExtInt(k - 2)


def test_double_dual_is_identity_on_tables():
    K = corpus_member("suspension-of-triangle").complex
    values = {S.key: 1 + S.index for S in K.singular_strata()}
    pbar = Perversity.from_table(K, values)
    again = pbar.dual().dual()
    for S in K.singular_strata():
        assert again.of_stratum(S) == pbar.of_stratum(S)
        assert pbar.dual().of_stratum(S) == ExtInt(S.codim - 2) - ExtInt(
            values[S.key]
        )


def test_from_table_requires_every_singular_stratum():
    K = corpus_member("suspension-of-triangle").complex
    keys = [S.key for S in K.singular_strata()]
    assert len(keys) == 2
    with pytest.raises(KeyError):
        Perversity.from_table(K, {keys[0]: 0})
    with pytest.raises(ValueError, match="unknown strata"):
        Perversity.from_table(K, {keys[0]: 0, keys[1]: 0, (5, 5): 0})


def test_perversity_rejects_regular_strata():
    K = corpus_member("torus-7").complex
    (S,) = K.strata()
    with pytest.raises(ValueError):
        zero_perversity().of_stratum(S)


def test_constant_perversity_accepts_infinities():
    pbar = Perversity.constant(POS_INF)
    K = corpus_member("cone-circle").complex
    (S,) = K.singular_strata()
    assert pbar.of_stratum(S) == POS_INF


def test_induced_table_perversity_follows_strata():
    K = corpus_member("suspension-of-triangle").complex
    strata = sorted(K.singular_strata(), key=lambda S: S.key)
    pbar = Perversity.from_table(
        K, {strata[0].key: 3, strata[1].key: 7}
    )
    pole = strata[0].min_simplex()
    J = clot_join(K, pole)
    induced = pbar.induced(K, J)
    (S,) = J.singular_strata()
    assert induced.of_stratum(S) == ExtInt(3)


def test_codim_perversities_transport_as_themselves():
    pbar = lower_middle_perversity()
    K = corpus_member("cone-circle").complex
    assert pbar.induced(K, residual_complex(K)) is pbar


# -- perverse degree and allowability ----------------------------------------


def test_perverse_degree_on_the_suspension():
    K = corpus_member("suspension-of-triangle").complex
    poles = sorted(K.singular_strata(), key=lambda S: S.key)
    S0, S1 = poles
    sigma = (0, 2, 3)  # a pole joined with an equator edge
    assert simplex_perverse_degree(K, sigma, S0) == ExtInt(0)
    assert simplex_perverse_degree(K, sigma, S1) is NEG_INF
    assert simplex_perverse_degree(K, (2, 3), S0) is NEG_INF


def test_apex_vertex_is_not_zero_allowable():
    K = corpus_member("cone-circle").complex
    assert not is_allowable(K, zero_perversity(), (0,))
    assert is_allowable(K, zero_perversity(), (1,))
    assert allowable_simplices(K, zero_perversity(), 0) == (
        (1,), (2,), (3,),
    )


def test_allowability_matches_the_stratum_inequality():
    for member in corpus():
        K = member.complex
        strata = oracles.stratum_data(K)
        levels = oracles.vertex_levels(K)
        for pbar in PRESETS:
            values = oracle_values(K, pbar)
            for s in K.simplices:
                assert is_allowable(K, pbar, s) == oracles.is_allowable(
                    s, strata, levels, values
                ), (member.name, pbar.name, s)


def test_allowable_simplex_whose_boundary_is_not():
    K = corpus_member("suspension-of-triangle").complex
    pbar = zero_perversity()
    sigma = (0, 2, 3)
    assert is_allowable(K, pbar, sigma)
    assert not is_allowable(K, pbar, (0, 2))
    assert not is_intersection_chain(K, pbar, {sigma: 1})


def test_cancellation_makes_the_cone_chain_admissible():
    K = corpus_member("suspension-of-triangle").complex
    pbar = zero_perversity()
    cone = {(0, 2, 3): 1, (0, 2, 4): -1, (0, 3, 4): 1}
    assert is_intersection_chain(K, pbar, cone)


# -- homology against the oracle ---------------------------------------------


def test_ordinary_homology_of_the_closed_surfaces():
    for name in ("boundary-3-simplex", "torus-7", "projective-plane-6"):
        K = corpus_member(name).complex
        facets = [s for s in K.simplices if len(s) == 3]
        for ring, p in ((INTEGERS, None), (MOD2, 2)):
            got = as_pairs(ordinary_homology(K, ring))
            expected = oracles.simplicial_homology(facets, p)
            for k, pair in expected.items():
                assert got[k] == pair, (name, p, k)


def test_projective_plane_torsion_is_visible():
    K = corpus_member("projective-plane-6").complex
    h = ordinary_homology(K)
    assert (h[1].rank, tuple(h[1].torsion)) == (0, (2,))
    assert h[2].rank == 0
    over_2 = ordinary_homology(K, MOD2)
    assert (over_2[1].rank, over_2[2].rank) == (1, 1)


@pytest.mark.parametrize(
    "pbar",
    PRESETS + (Perversity.constant(1), Perversity.constant(2)),
    ids=lambda p: p.name,
)
def test_intersection_homology_matches_the_oracle(pbar):
    for member in corpus():
        K = member.complex
        values = oracle_values(K, pbar)
        for ring, p in ((INTEGERS, None), (MOD2, 2)):
            got = as_pairs(intersection_homology(K, pbar, ring))
            expected = oracles.intersection_homology_ranks(K, values, p)
            for k, pair in expected.items():
                assert got.get(k, (0, ())) == pair, (member.name, p, k)


def test_cone_kills_the_rim_cycle_at_zero_perversity():
    K = corpus_member("cone-circle").complex
    h = intersection_homology(K, zero_perversity())
    assert [h[k].rank for k in (0, 1, 2)] == [1, 0, 0]
    assert all(not h[k].torsion for k in h)


def test_pinched_torus_middle_perversity_sees_the_normalization():
    K = corpus_member("pinched-torus").complex
    h = intersection_homology(K, lower_middle_perversity())
    assert [h[k].rank for k in (0, 1, 2)] == [1, 0, 1]


def test_zero_perversity_chain_group_rank_on_the_suspension():
    K = corpus_member("suspension-of-triangle").complex
    cx = IntersectionChainComplex(K, zero_perversity())
    assert cx.lattice_rank(0) == 3
    assert cx.as_complex().check_squares_to_zero()


# -- relative pairs ------------------------------------------------------------


def test_relative_pair_against_cone_minus_rim():
    K = corpus_member("cone-circle").complex
    rim = [s for s in K.simplices if 0 not in s]
    for pbar in PRESETS:
        rel = relative_intersection_homology(K, rim, pbar)
        absolute = intersection_homology(K, pbar)
        chi_rel = sum((-1) ** k * g.rank for k, g in rel.items())
        chi_abs = sum((-1) ** k * g.rank for k, g in absolute.items())
        # the rim is a circle made of allowable simplices: chi = 0
        assert chi_rel == chi_abs


def test_suspension_pair_with_its_one_skeleton():
    K = corpus_member("suspension-of-triangle").complex
    sub = [s for s in K.simplices if len(s) <= 2]
    rel = relative_intersection_homology(K, sub, zero_perversity())
    assert (rel[2].rank, tuple(rel[2].torsion)) == (2, ())
    assert rel[0].rank == 0 and rel[1].rank == 0


def test_relative_complex_validates_the_subcomplex():
    K = corpus_member("cone-circle").complex
    with pytest.raises(StructuralError, match="misses the face"):
        RelativeIntersectionComplex(K, [(1, 2)], zero_perversity())
    with pytest.raises(StructuralError, match="not a simplex"):
        RelativeIntersectionComplex(K, [(7,)], zero_perversity())


def test_empty_subcomplex_gives_absolute_homology():
    K = corpus_member("singular-path").complex
    pbar = top_perversity()
    rel = relative_intersection_homology(K, [], pbar)
    assert as_pairs(rel) == as_pairs(intersection_homology(K, pbar))


# -- the clot-star decomposition ----------------------------------------------


def test_residual_decomposition_on_the_cone():
    K = corpus_member("cone-circle").complex
    report = residual_decomposition_check(K, zero_perversity())
    assert report.bijective
    assert report.clots == ((0,),)
    assert all(v.star_rank == v.pair_rank for v in report.degrees)


def test_residual_decomposition_with_several_clots():
    K = corpus_member("suspension-of-triangle").complex
    for pbar in PRESETS:
        report = residual_decomposition_check(K, pbar)
        assert report.bijective, pbar.name
        assert len(report.clots) == 2


def test_decomposition_of_a_trivial_complex_uses_top_cells():
    K = corpus_member("boundary-3-simplex").complex
    report = residual_decomposition_check(K, zero_perversity())
    assert report.bijective
    assert len(report.clots) == 4


# -- the join formula -----------------------------------------------------------


def test_join_case_labels_cover_all_branches():
    cone = corpus_member("cone-circle").complex
    sphere = corpus_member("boundary-3-simplex").complex
    two_piece = corpus_member("sphere-and-point").complex
    apex, lone = (0,), (9,)
    assert join_case_label(sphere, zero_perversity(), (0, 1, 2)) == "regular"
    assert join_case_label(cone, zero_perversity(), apex) == "truncate"
    assert join_case_label(cone, Perversity.constant(1), apex) == "h0-nonzero"
    assert join_case_label(cone, Perversity.constant(2), apex) == "point"
    assert (
        join_case_label(two_piece, Perversity.constant(1), lone) == "h0-zero"
    )


def test_join_prediction_matches_direct_computation():
    cases = [
        ("cone-circle", zero_perversity()),
        ("cone-circle", Perversity.constant(1)),
        ("cone-circle", Perversity.constant(2)),
        ("pinched-torus", lower_middle_perversity()),
        ("sphere-and-point", Perversity.constant(1)),
        ("suspension-of-torus", lower_middle_perversity()),
    ]
    for name, pbar in cases:
        K = corpus_member(name).complex
        for beta in clots(K):
            J = clot_join(K, beta)
            predicted = join_homology_prediction(K, pbar, beta)
            direct = intersection_homology(J, pbar.induced(K, J))
            for k in set(predicted) | set(direct):
                a = predicted.get(k, HomologyResult(0))
                b = direct.get(k, HomologyResult(0))
                assert (a.rank, tuple(a.torsion)) == (
                    b.rank,
                    tuple(b.torsion),
                ), (name, pbar.name, beta, k)


def test_h0_zero_case_really_kills_degree_zero():
    K = corpus_member("sphere-and-point").complex
    predicted = join_homology_prediction(K, Perversity.constant(1), (9,))
    assert all(g.rank == 0 and not g.torsion for g in predicted.values())


def test_truncated_homology_cuts_at_the_given_degree():
    groups = {0: HomologyResult(1), 1: HomologyResult(2), 2: HomologyResult(1)}
    cut = truncated_homology(groups, ExtInt(1))
    assert cut[0].rank == 1 and cut[1].rank == 2 and cut[2].rank == 0
    none = truncated_homology(groups, NEG_INF)
    assert all(g.rank == 0 for g in none.values())


def test_join_rim_drops_exactly_the_clot_cone():
    K = corpus_member("cone-circle").complex
    J = clot_join(K, (0,))
    rim = join_rim(J, (0,))
    assert all(0 not in s for s in rim)
    assert set(rim) | {s for s in J.simplices if 0 in s} == set(J.simplices)
