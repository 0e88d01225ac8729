from fractions import Fraction

import pytest
import hypothesis.strategies as st
from hypothesis import assume, given, settings

from app.combinatorics import GroundSet, mask_of, members, size
from app.divisors import (
    DivisorClass,
    GroundMismatchError,
    HassettClass,
    boundary_keys,
    canonical_class,
    collapsed_coefficient,
    delta,
    delta_prime,
    difference,
    exceptional_part,
    jsum_coefficient,
    psi_class,
    pullback_pushforward,
    pushforward,
    total_boundary,
    total_psi,
)
from app.weights import RegimeError, WeightDatum, contracted_collection

F = Fraction


@st.composite
def weight_data(draw, total="interior", min_n=4, max_n=7):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    d = draw(st.integers(min_value=2, max_value=12))
    if total == "interior":
        ks = draw(st.lists(st.integers(min_value=1, max_value=d), min_size=n, max_size=n))
        assume(sum(ks) > 2 * d)
    else:
        # numerators summing to 2d, none above d
        assume(2 * d >= n)
        cuts = sorted(draw(st.lists(st.integers(min_value=1, max_value=2 * d - 1),
                                    min_size=n - 1, max_size=n - 1, unique=True)))
        ks = [b - a for a, b in zip([0] + cuts, cuts + [2 * d])]
        assume(max(ks) <= d)
    return WeightDatum(tuple(F(k, d) for k in ks))


def test_divisor_class_drops_non_boundary_and_merges_sides():
    ground = GroundSet(5)
    D = DivisorClass(ground, {mask_of([1]): 3, mask_of([1, 2]): 1, mask_of([3, 4, 5]): 2})
    assert D.coefficient(mask_of([1, 2])) == 3
    assert D.coefficient(mask_of([3, 4, 5])) == 3
    assert D.coefficient(mask_of([1])) == 0
    assert D.keys() == [mask_of([1, 2])]
    assert (D - D).is_zero()
    assert 2 * D == D + D


def test_classes_on_different_ground_sets_do_not_mix():
    with pytest.raises(GroundMismatchError):
        total_boundary(GroundSet(5)) + total_boundary(GroundSet(6))


def test_delta_all_ones_five_points():
    D = delta(WeightDatum.of([1] * 5))
    assert D.coefficient(mask_of([1, 2])) == 1
    assert D == total_boundary(GroundSet(5))


def test_delta_coefficient_matches_closed_form():
    datum = WeightDatum.of([1, 1, 1, F(2, 5), F(2, 5)])
    assert delta(datum).coefficient(mask_of([4, 5])) == F(2, 5)


@pytest.mark.parametrize("n", range(4, 11))
def test_total_psi_identity(n):
    ground = GroundSet(n)
    assert total_psi(ground) == canonical_class(ground) + 2 * total_boundary(ground)


@pytest.mark.parametrize("n", range(4, 9))
def test_symmetric_factorization(n):
    ground = GroundSet(n)
    K, D = canonical_class(ground), total_boundary(ground)
    for alpha in {F(p, q) for q in range(1, 13) for p in range(1, q + 1) if F(p, q) >= F(2, n)}:
        beta = 2 * alpha / (1 + alpha)
        assert delta(WeightDatum.symmetric(n, alpha)) == (1 + alpha) * (K + beta * D)


def test_psi_class_rejects_foreign_point():
    with pytest.raises(ValueError):
        psi_class(6, GroundSet(5))


def test_pushforward_drops_contracted_coordinates():
    datum = WeightDatum.of([1, 1, 1, F(2, 5), F(2, 5)])
    pushed = pushforward(delta(datum), datum)
    assert isinstance(pushed, HassettClass)
    assert pushed.divisor.coefficient(mask_of([4, 5])) == 0
    assert pushed.divisor.coefficient(mask_of([1, 2])) == delta(datum).coefficient(mask_of([1, 2]))
    assert len(pushed.divisor.keys()) == len(boundary_keys(5)) - 1


def test_pushforward_needs_interior_weights():
    datum = WeightDatum.of([F(1, 2)] * 4)
    with pytest.raises(RegimeError):
        pushforward(delta(datum), datum)
    with pytest.raises(RegimeError):
        pullback_pushforward(datum)
    with pytest.raises(RegimeError):
        difference(datum)


def test_difference_five_points_is_zero():
    # every boundary divisor at n=5 has a two-point side
    assert difference(WeightDatum.of([1, 1, 1, F(2, 5), F(2, 5)])).is_zero()


def test_difference_on_contracted_triple():
    datum = WeightDatum.of([1, 1, 1, F(1, 5), F(1, 5), F(1, 5)])
    triple = mask_of([4, 5, 6])
    assert delta(datum).coefficient(triple) == F(22, 25)
    assert pullback_pushforward(datum).coefficient(triple) == F(12, 25)
    assert collapsed_coefficient(triple, datum) == jsum_coefficient(triple, datum) == F(12, 25)
    assert difference(datum).terms(datum) == [(triple, F(2, 5))]


def test_delta_prime_examples():
    assert delta_prime(WeightDatum.of([F(1, 2)] * 4)).is_zero()
    sym = WeightDatum.symmetric(5, F(2, 5))
    assert delta_prime(sym).coefficient(mask_of([1, 2])) == F(1, 10)
    assert delta(sym) == delta_prime(sym)
    thirds = WeightDatum.symmetric(6, F(1, 3))
    assert delta_prime(thirds).coefficient(mask_of([1, 2])) == F(2, 15)

    datum = WeightDatum.of([1] + [F(1, 5)] * 5)
    assert delta_prime(datum).coefficient(mask_of([2, 3, 4])) == 0
    assert delta(datum).coefficient(mask_of([2, 3, 4])) == F(2, 5)
    with pytest.raises(RegimeError):
        delta_prime(WeightDatum.of([1] * 5))


@settings(max_examples=40, deadline=None)
@given(weight_data())
def test_delta_is_canonical_plus_weighted_psi(datum):
    ground = datum.ground
    expected = canonical_class(ground)
    for i, a in enumerate(datum.a, start=1):
        expected = expected + a * psi_class(i, ground)
    assert delta(datum) == expected


@settings(max_examples=40, deadline=None)
@given(weight_data())
def test_difference_identity_and_effectivity(datum):
    diff = delta(datum) - pullback_pushforward(datum)
    assert diff == difference(datum)
    assert diff.is_effective()
    allowed = {c.members for c in contracted_collection(datum)}
    assert all(rep in allowed for rep, _ in diff.terms(datum))


@settings(max_examples=40, deadline=None)
@given(weight_data())
def test_collapsed_and_summed_forms_agree(datum):
    assert pullback_pushforward(datum) == pullback_pushforward(datum, jsum_coefficient)


@settings(max_examples=40, deadline=None)
@given(weight_data())
def test_pushforward_support(datum):
    pushed = pushforward(delta(datum), datum)
    for canon in contracted_collection(datum):
        assert pushed.divisor.coefficient(canon.members) == 0


@settings(max_examples=40, deadline=None)
@given(weight_data(total="boundary"))
def test_boundary_identity_and_effectivity(datum):
    closed = delta(datum) - delta_prime(datum)
    assert closed == exceptional_part(datum)
    assert closed.is_effective()
    assert all(closed.coefficient(rep) == 0 for rep, _ in closed.terms(datum) if size(rep) == 2)


def test_terms_use_canonical_representatives():
    datum = WeightDatum.of([1, 1, 1, F(1, 5), F(1, 5), F(1, 5)])
    reps = [members(rep) for rep, _ in difference(datum).terms(datum)]
    assert reps == [(4, 5, 6)]
