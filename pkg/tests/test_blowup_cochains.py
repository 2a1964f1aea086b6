"""The blown-up cochain complex: the local tensor model, the glued class
basis, perverse degrees, and the cohomology theories built on them.  Class
counts are cross-checked against an independent union-find gluing."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from stratihom.blowup_cochains import (
    BlownUpIntersectionComplex,
    GlobalBlownUpComplex,
    RelativeBlownUpComplex,
    blown_up_cohomology,
    blown_up_join_prediction,
    class_constraints,
    class_coboundary,
    class_degree,
    class_local_element,
    class_perverse_degree,
    cone_face_dim,
    cone_faces,
    element_class,
    element_degree,
    face_perverse_degree,
    is_class_allowable,
    local_coboundary,
    local_elements,
    relative_decomposition_sides,
    restriction_matrix,
    restriction_surjectivity,
    valid_eps_patterns,
)
from stratihom.core_complex import clot_join, clots, residual_complex
from stratihom.corpus import corpus, corpus_member
from stratihom.exact_algebra import ZERO_GROUP, RingSpec
from stratihom.extint import NEG_INF, ExtInt
from stratihom.intersection_chains import (
    Perversity,
    lower_middle_perversity,
    top_perversity,
    zero_perversity,
)

import oracles


MOD2 = RingSpec(2)


def pairs(groups):
    return {k: (g.rank, tuple(g.torsion)) for k, g in groups.items()}


def padded_equal(a, b):
    keys = set(a) | set(b)
    za = {k: a.get(k, ZERO_GROUP) for k in keys}
    zb = {k: b.get(k, ZERO_GROUP) for k in keys}
    return pairs(za) == pairs(zb)


# random decomposed simplices: disjoint parts with a nonempty last one
@st.composite
def part_tuples(draw):
    n = draw(st.integers(min_value=1, max_value=3))
    pool = iter(range(10))
    parts = []
    for i in range(n + 1):
        size = draw(
            st.integers(min_value=0 if i < n else 1, max_value=2)
        )
        parts.append(tuple(itertools.islice(pool, size)))
    return tuple(parts)


# -- the local model ----------------------------------------------------------


def test_cone_face_dimensions():
    assert cone_face_dim((), 1) == 0
    assert cone_face_dim((3,), 0) == 0
    assert cone_face_dim((3,), 1) == 1
    assert cone_face_dim((3, 4), 1) == 2
    with pytest.raises(ValueError):
        cone_face_dim((), 0)


def test_cone_faces_of_a_vertex():
    assert set(cone_faces((3,), True)) == {((), 1), ((3,), 0), ((3,), 1)}
    assert cone_faces((3,), False) == [((3,), 0)]


def test_local_model_of_an_edge():
    parts = ((5,), (7,))
    elems = local_elements(parts)
    assert len(elems) == 3
    by_degree = {}
    for e in elems:
        by_degree.setdefault(element_degree(e), []).append(e)
    assert sorted(by_degree) == [0, 1]
    assert len(by_degree[0]) == 2 and len(by_degree[1]) == 1
    apex = (((), 1), ((7,), 0))
    flat = (((5,), 0), ((7,), 0))
    coned = (((5,), 1), ((7,), 0))
    assert local_coboundary(parts, apex) == {coned: 1}
    assert local_coboundary(parts, flat) == {coned: -1}
    assert local_coboundary(parts, coned) == {}


def test_local_model_requires_a_regular_part():
    with pytest.raises(ValueError):
        local_elements(((1,), ()))


@given(part_tuples())
@settings(max_examples=60, deadline=None)
def test_local_coboundary_squares_to_zero(parts):
    for elem in local_elements(parts):
        once = local_coboundary(parts, elem)
        twice: dict = {}
        for target, c in once.items():
            for t2, c2 in local_coboundary(parts, target).items():
                twice[t2] = twice.get(t2, 0) + c * c2
        assert all(v == 0 for v in twice.values())


@given(part_tuples())
@settings(max_examples=60, deadline=None)
def test_local_coboundary_raises_degree_by_one(parts):
    for elem in local_elements(parts):
        d = element_degree(elem)
        for target in local_coboundary(parts, elem):
            assert element_degree(target) == d + 1


def test_element_class_forgets_cone_faces_keep_flags():
    elem = (((1,), 1), ((), 1), ((4, 5), 0))
    assert element_class(elem) == ((1, 4, 5), (1, 1))


# -- global classes -------------------------------------------------------------


def test_class_counts_match_the_union_find_oracle():
    for member in corpus():
        K = member.complex
        G = GlobalBlownUpComplex(K)
        got = {k: G.dim(k) for k in G.degrees()}
        expected = {
            k: v
            for k, v in oracles.blown_up_class_counts(K).items()
            if v
        }
        assert got == expected, member.name


def test_forced_coning_of_empty_parts():
    parts = ((), (3,), (7,))
    assert valid_eps_patterns(parts, 2) == [(1, 0), (1, 1)]
    assert valid_eps_patterns(((), (), (7,)), 2) == [(1, 1)]


def test_class_degree_agrees_with_its_representative():
    K = corpus_member("suspension-of-triangle").complex
    G = GlobalBlownUpComplex(K)
    for k in G.degrees():
        for label in G.labels(k):
            assert class_degree(K, label) == k
            elem = class_local_element(K, label)
            assert element_degree(elem) == k
            assert element_class(elem) == label


def test_global_coboundary_squares_to_zero():
    for name in ("cone-circle", "singular-path", "pinched-torus"):
        K = corpus_member(name).complex
        assert GlobalBlownUpComplex(K).as_complex().check_squares_to_zero()


def test_class_coboundary_carrier_only_grows():
    K = corpus_member("cone-circle").complex
    G = GlobalBlownUpComplex(K)
    for k in G.degrees():
        for label in G.labels(k):
            for target in class_coboundary(K, label):
                assert set(label[0]) <= set(target[0])


# -- perverse degrees ------------------------------------------------------------


def test_face_perverse_degree_of_local_elements():
    elem = (((1,), 0), ((), 1), ((4, 5), 0))
    # codim 1 names the last singular factor, which is coned
    assert face_perverse_degree(elem, 1) is NEG_INF
    # codim 2 names the first factor: dims above it are 0 + 1
    assert face_perverse_degree(elem, 2) == ExtInt(1)
    with pytest.raises(ValueError):
        face_perverse_degree(elem, 3)


def test_class_perverse_degree_on_the_cone():
    K = corpus_member("cone-circle").complex
    label = ((0, 1, 2), (0, 1))
    assert class_perverse_degree(K, label, 0) == ExtInt(1)
    coned = ((0, 1, 2), (1, 1))
    assert class_perverse_degree(K, coned, 0) is NEG_INF
    assert class_perverse_degree(K, label, 5) is NEG_INF


def test_class_constraints_name_the_met_strata():
    K = corpus_member("cone-circle").complex
    (S,) = K.singular_strata()
    label = ((0, 1, 2), (0, 1))
    assert class_constraints(K, label) == [(0, S.key, ExtInt(1))]
    assert class_constraints(K, ((0, 1, 2), (1, 1))) == []


def test_allowability_is_monotone_in_the_perversity():
    # pairs ordered pointwise in every codimension, including codim one
    ordered = (
        (zero_perversity(), Perversity.constant(3)),
        (lower_middle_perversity(), top_perversity()),
        (top_perversity(), Perversity.constant(3)),
    )
    for small, big in ordered:
        for name in ("cone-circle", "singular-path", "suspension-of-triangle"):
            K = corpus_member(name).complex
            G = GlobalBlownUpComplex(K)
            for k in G.degrees():
                for label in G.labels(k):
                    if is_class_allowable(K, small, label):
                        assert is_class_allowable(K, big, label)


def test_lattices_grow_with_the_perversity():
    K = corpus_member("singular-path").complex
    G = GlobalBlownUpComplex(K)
    small = BlownUpIntersectionComplex(K, zero_perversity(), ambient=G)
    big = BlownUpIntersectionComplex(K, Perversity.constant(4), ambient=G)
    for k in G.degrees():
        assert small.lattice_rank(k) <= big.lattice_rank(k)


# -- cohomology -------------------------------------------------------------------


def test_trivial_filtrations_give_ordinary_cohomology():
    expected = {
        "torus-7": {0: (1, ()), 1: (2, ()), 2: (1, ())},
        "projective-plane-6": {0: (1, ()), 1: (0, ()), 2: (0, (2,))},
        "boundary-3-simplex": {0: (1, ()), 1: (0, ()), 2: (1, ())},
    }
    for name, groups in expected.items():
        K = corpus_member(name).complex
        assert pairs(blown_up_cohomology(K, zero_perversity())) == groups


def test_cone_is_blown_up_acyclic_at_every_preset():
    K = corpus_member("cone-circle").complex
    for pbar in (zero_perversity(), top_perversity(),
                 lower_middle_perversity()):
        h = blown_up_cohomology(K, pbar)
        assert pairs(h) == {0: (1, ()), 1: (0, ()), 2: (0, ())}


def test_suspension_cohomology_at_zero_perversity():
    K = corpus_member("suspension-of-triangle").complex
    h = blown_up_cohomology(K, zero_perversity())
    assert pairs(h) == {0: (1, ()), 1: (0, ()), 2: (1, ())}


def test_out_of_range_degrees_are_zero():
    K = corpus_member("cone-circle").complex
    N = BlownUpIntersectionComplex(K, zero_perversity())
    assert N.cohomology(-1) is ZERO_GROUP
    assert N.cohomology(99) is ZERO_GROUP


def test_mod_two_cohomology_of_the_pinched_torus():
    K = corpus_member("pinched-torus").complex
    pbar = lower_middle_perversity()
    over_z = blown_up_cohomology(K, pbar)
    # no torsion here, so mod-2 ranks equal integral ranks
    over_2 = blown_up_cohomology(K, pbar, MOD2)
    assert {k: g.rank for k, g in over_2.items()} == {
        k: g.rank for k, g in over_z.items()
    }
    assert all(not g.torsion for g in over_z.values())


# -- restriction and the relative theory --------------------------------------------


def test_restriction_matrix_requires_an_induced_subcomplex():
    K = corpus_member("cone-circle").complex
    G = GlobalBlownUpComplex(K)
    other = GlobalBlownUpComplex(corpus_member("torus-7").complex)
    with pytest.raises(ValueError, match="upstairs"):
        restriction_matrix(G, other, 0)


def test_restriction_onto_the_residual_is_surjective():
    for name in ("cone-circle", "pinched-torus", "sphere-and-point"):
        K = corpus_member(name).complex
        for pbar in (zero_perversity(), top_perversity()):
            ranks = restriction_surjectivity(K, pbar)
            assert all(a == b for a, b in ranks.values()), (name, pbar.name)


def test_relative_decomposition_sides_agree():
    for name in ("pinched-torus", "singular-path"):
        K = corpus_member(name).complex
        lhs, rhs = relative_decomposition_sides(K, lower_middle_perversity())
        assert padded_equal(lhs, rhs), name


def test_relative_complex_drops_residual_carriers():
    K = corpus_member("cone-circle").complex
    rel = RelativeBlownUpComplex(
        K, residual_complex(K), zero_perversity()
    )
    res = set(residual_complex(K).simplices)
    for k in rel.ambient.degrees():
        for label in rel.allowed_labels(k):
            assert label[0] not in res


def test_join_prediction_matches_the_direct_computation():
    cases = [
        ("cone-circle", zero_perversity()),
        ("cone-circle", Perversity.constant(1)),
        ("pinched-torus", top_perversity()),
        ("sphere-and-point", zero_perversity()),
        ("boundary-3-simplex", zero_perversity()),
    ]
    for name, pbar in cases:
        K = corpus_member(name).complex
        for beta in clots(K):
            predicted = blown_up_join_prediction(K, pbar, beta)
            J = clot_join(K, beta)
            direct = blown_up_cohomology(J, pbar.induced(K, J))
            assert padded_equal(predicted, direct), (name, pbar.name, beta)


def test_empty_link_prediction_is_zero_everywhere():
    K = corpus_member("sphere-and-point").complex
    predicted = blown_up_join_prediction(K, zero_perversity(), (9,))
    assert all(g.rank == 0 and not g.torsion for g in predicted.values())
