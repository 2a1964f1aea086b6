"""Cup products on ordered simplicial cochains and on blown-up cochains,
and the blow-up of face indicators: algebra laws checked exhaustively at
small sizes, plus the bijectivity of the blow-up map on decomposed
simplices."""

import pytest

from stratihom.blowup_cochains import GlobalBlownUpComplex
from stratihom.core_complex import FilteredComplex
from stratihom.corpus import corpus_member
from stratihom.exact_algebra import mat_mul
from stratihom.intersection_chains import zero_perversity
from stratihom.products import (
    OrderedCochainComplex,
    blown_up_unit,
    class_cup,
    cone_face_cup,
    enumerate_decompositions,
    global_cup_vector,
    local_element_cup,
    pi_star_cochain_map_check,
    pi_star_local,
    pi_star_matrices,
    verify_blow_up_map,
)
from stratihom.blowup_cochains import (
    BlownUpIntersectionComplex,
    decomposed_simplex_complex,
)


def indicator(n, i):
    out = [0] * n
    out[i] = 1
    return out


def apply_matrix(m, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in m]


# -- the ordered front/back product ----------------------------------------------


def test_front_back_product_on_an_edge():
    K = FilteredComplex.trivial([(0, 1)], n=0)
    N = OrderedCochainComplex(K)
    assert N.basis_cup((0,), (0, 1)) == (0, 1)
    assert N.basis_cup((0, 1), (1,)) == (0, 1)
    assert N.basis_cup((1,), (0, 1)) is None
    assert N.basis_cup((0, 1), (0,)) is None
    assert N.basis_cup((0,), (1,)) is None


def test_cup_respects_the_filtration_order():
    # the apex is a level-zero vertex, so it is first in the order even
    # though its id is not the smallest
    K = FilteredComplex(
        {(3,): 0, (1,): 1, (1, 3): 1}, n=1
    )
    N = OrderedCochainComplex(K)
    assert N.basis_cup((3,), (1, 3)) == (1, 3)
    assert N.basis_cup((1, 3), (1,)) == (1, 3)
    assert N.basis_cup((1,), (1, 3)) is None


def ordered_laws(K):
    """delta squared, unit, Leibniz, associativity, exhaustively."""
    N = OrderedCochainComplex(K)
    assert N.as_complex().check_squares_to_zero()
    top = N.top_degree()
    unit = N.unit()
    for k in range(top + 1):
        for i in range(N.dim(k)):
            e = indicator(N.dim(k), i)
            assert N.cup(0, unit, k, e) == e
            assert N.cup(k, e, 0, unit) == e
    for ka in range(top + 1):
        for kb in range(top + 1 - ka):
            if ka + kb + 1 > top:
                continue
            for i in range(N.dim(ka)):
                a = indicator(N.dim(ka), i)
                da = apply_matrix(N.coboundary_matrix(ka), a)
                for j in range(N.dim(kb)):
                    b = indicator(N.dim(kb), j)
                    db = apply_matrix(N.coboundary_matrix(kb), b)
                    lhs = apply_matrix(
                        N.coboundary_matrix(ka + kb), N.cup(ka, a, kb, b)
                    )
                    sign = -1 if ka % 2 else 1
                    rhs = [
                        x + sign * y
                        for x, y in zip(
                            N.cup(ka + 1, da, kb, b),
                            N.cup(ka, a, kb + 1, db),
                        )
                    ]
                    assert lhs == rhs
    for ka in range(top + 1):
        for kb in range(top + 1 - ka):
            for kc in range(top + 1 - ka - kb):
                for i in range(N.dim(ka)):
                    a = indicator(N.dim(ka), i)
                    for j in range(N.dim(kb)):
                        b = indicator(N.dim(kb), j)
                        ab = N.cup(ka, a, kb, b)
                        for l in range(N.dim(kc)):
                            c = indicator(N.dim(kc), l)
                            bc = N.cup(kb, b, kc, c)
                            assert N.cup(ka + kb, ab, kc, c) == N.cup(
                                ka, a, kb + kc, bc
                            )


def test_ordered_algebra_laws_on_a_triangle():
    ordered_laws(FilteredComplex.trivial([(0, 1, 2)], n=2))


def test_ordered_algebra_laws_on_the_cone():
    ordered_laws(corpus_member("cone-circle").complex)


# -- the blown-up product -----------------------------------------------------------


def test_cone_face_products():
    apex = ((), 1)
    assert cone_face_cup(apex, apex) == ((), 1)
    # only faces ending at the apex absorb it, and those are the coned ones
    assert cone_face_cup(((3,), 0), apex) is None
    assert cone_face_cup(((3,), 1), apex) == ((3,), 1)
    assert cone_face_cup(apex, ((3,), 0)) is None
    assert cone_face_cup(((3,), 0), ((3, 4), 0)) == ((3, 4), 0)
    assert cone_face_cup(((3, 4), 0), ((4,), 0)) == ((3, 4), 0)
    assert cone_face_cup(((4,), 0), ((3,), 0)) is None
    assert cone_face_cup(((3,), 1), ((3,), 0)) is None


def test_local_cup_carries_the_koszul_sign():
    x = (((3,), 1), ((7,), 0))  # degrees 1 and 0
    y = (((), 1), ((7, 8), 0))  # degrees 0 and 1
    got = local_element_cup(x, y)
    assert got is not None
    sign, z = got
    assert z == (((3,), 1), ((7, 8), 0))
    # the right factor of odd degree moves past nothing of odd degree
    assert sign == 1
    swapped = local_element_cup(
        (((), 1), ((7,), 0)), (((3,), 1), ((7, 8), 0))
    )
    assert swapped is None  # ((),1) only absorbs the bare apex


def test_local_cup_rejects_mismatched_lengths():
    with pytest.raises(ValueError):
        local_element_cup((((3,), 0),), (((3,), 0), ((4,), 0)))


def test_class_cup_needs_a_common_simplex():
    K = corpus_member("torus-7").complex
    a = ((0, 1), (1, 1))
    b = ((4, 5), (1, 1))
    assert (0, 1, 4, 5) not in K
    assert class_cup(K, a, b) is None


def blown_up_laws(K):
    G = GlobalBlownUpComplex(K)
    assert G.as_complex().check_squares_to_zero()
    unit = blown_up_unit(G)
    assert all(
        x == 0 for x in apply_matrix(G.coboundary_matrix(0), unit)
    )
    degrees = G.degrees()
    top = max(degrees)
    for k in degrees:
        for i in range(G.dim(k)):
            e = indicator(G.dim(k), i)
            assert global_cup_vector(G, 0, unit, k, e) == e
            assert global_cup_vector(G, k, e, 0, unit) == e
    for ka in degrees:
        for kb in degrees:
            if ka + kb + 1 > top:
                continue
            for i in range(G.dim(ka)):
                a = indicator(G.dim(ka), i)
                da = apply_matrix(G.coboundary_matrix(ka), a)
                for j in range(G.dim(kb)):
                    b = indicator(G.dim(kb), j)
                    db = apply_matrix(G.coboundary_matrix(kb), b)
                    lhs = apply_matrix(
                        G.coboundary_matrix(ka + kb),
                        global_cup_vector(G, ka, a, kb, b),
                    )
                    sign = -1 if ka % 2 else 1
                    rhs = [
                        x + sign * y
                        for x, y in zip(
                            global_cup_vector(G, ka + 1, da, kb, b),
                            global_cup_vector(G, ka, a, kb + 1, db),
                        )
                    ]
                    assert lhs == rhs
    for ka in degrees:
        for kb in degrees:
            for kc in degrees:
                if ka + kb + kc > top:
                    continue
                for i in range(G.dim(ka)):
                    a = indicator(G.dim(ka), i)
                    for j in range(G.dim(kb)):
                        b = indicator(G.dim(kb), j)
                        ab = global_cup_vector(G, ka, a, kb, b)
                        for l in range(G.dim(kc)):
                            c = indicator(G.dim(kc), l)
                            bc = global_cup_vector(G, kb, b, kc, c)
                            assert global_cup_vector(
                                G, ka + kb, ab, kc, c
                            ) == global_cup_vector(G, ka, a, kb + kc, bc)


def test_blown_up_algebra_laws_on_the_cone():
    blown_up_laws(corpus_member("cone-circle").complex)


# -- the blow-up of face indicators ---------------------------------------------------


def test_local_pullback_on_an_edge():
    parts = ((5,), (7,))
    assert pi_star_local(parts, (5,)) == [
        (1, (((5,), 0), ((7,), 0)))
    ]
    assert pi_star_local(parts, (7,)) == [(1, (((), 1), ((7,), 0)))]
    assert pi_star_local(parts, (5, 7)) == [(1, (((5,), 1), ((7,), 0)))]


def test_local_pullback_spreads_over_upper_factors():
    parts = ((5,), (7, 8))
    got = pi_star_local(parts, (5,))
    assert sorted(elem for _, elem in got) == [
        (((5,), 0), ((7,), 0)),
        (((5,), 0), ((8,), 0)),
    ]
    assert all(sign == 1 for sign, _ in got)


def test_enumerate_decompositions_shape():
    layouts = enumerate_decompositions(4, 2)
    assert all(parts[-1] for parts in layouts)
    assert all(
        sum(len(p) for p in parts) <= 4 for parts in layouts
    )
    seen = set(layouts)
    assert ((), (0,)) in seen
    assert ((0,), (1, 2)) in seen
    assert len(seen) == len(layouts)


def test_blow_up_map_is_the_identity_without_singular_parts():
    report = verify_blow_up_map(((0, 1, 2),))
    assert report.ok
    assert all(det == 1 for _, _, _, det in report.degrees)


def test_blow_up_map_on_small_decompositions():
    for parts in enumerate_decompositions(4, 2):
        report = verify_blow_up_map(parts)
        assert report.ok, parts
        for _, faces, lattice_rank, det in report.degrees:
            assert faces == lattice_rank and abs(det) == 1


def test_pullback_lands_in_the_zero_perversity_lattice():
    Delta = decomposed_simplex_complex(((0,), (1, 2)))
    target = BlownUpIntersectionComplex(Delta, zero_perversity())
    mats = pi_star_matrices(Delta, target)
    assert sorted(mats) == [0, 1, 2]
    assert pi_star_cochain_map_check(Delta, target)
