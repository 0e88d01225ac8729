from fractions import Fraction

import pytest
import hypothesis.strategies as st
from hypothesis import assume, given, settings

from app.combinatorics import GroundSet, Partition4, enumerate_partitions4, mask_of
from app.divisors import delta, delta_prime, psi_class, pullback_pushforward, total_boundary
from app.picard import expected_picard_rank, pairing_rank
from app.vital_curves import (
    TABULATED_TYPES,
    ContractedCurveError,
    CurveType,
    UnlistedTypeError,
    VitalCurve,
    classify,
    delta_prime_pairing,
    enumerate_curves,
    is_contracted,
    pair,
    pair_boundary,
    table_summands,
    table_value,
)
from app.weights import RegimeError, WeightDatum

F = Fraction


def curve(datum, *blocks):
    return VitalCurve.build(Partition4.of(*blocks), datum)


def test_pair_boundary_rule():
    ground = GroundSet(5)
    c = curve(WeightDatum.of([1] * 5), [1], [2], [3], [4, 5])
    assert pair_boundary(mask_of([4, 5]), c, ground) == -1
    assert pair_boundary(mask_of([1, 2, 3]), c, ground) == -1
    assert pair_boundary(mask_of([1, 2]), c, ground) == 1
    assert pair_boundary(mask_of([2, 3]), c, ground) == 1
    assert pair_boundary(mask_of([1, 4]), c, ground) == 0
    assert pair_boundary(mask_of([1]), c, ground) == 0


def test_pair_delta_all_ones():
    # -1 on {4,5}, +1 on {1,2}, {1,3} and {1,4,5} ~ {2,3}
    datum = WeightDatum.of([1] * 5)
    c = curve(datum, [1], [2], [3], [4, 5])
    assert pair(delta(datum), c) == 2
    assert pair(total_boundary(GroundSet(5)), c) == 2


@pytest.mark.parametrize("i, expected", [(1, 1), (2, 1), (3, 1), (4, 0), (5, 0)])
def test_psi_degree_on_vital_curve(i, expected):
    datum = WeightDatum.of([1] * 5)
    c = curve(datum, [1], [2], [3], [4, 5])
    assert pair(psi_class(i, GroundSet(5)), c) == expected


def test_psi_degree_is_one_exactly_on_singleton_blocks():
    ground = GroundSet(7)
    datum = WeightDatum.of([1] * 7)
    psis = [psi_class(i, ground) for i in range(1, 8)]
    for partition in enumerate_partitions4(ground):
        c = VitalCurve.build(partition, datum)
        for i, psi in enumerate(psis, start=1):
            assert pair(psi, c) == (1 if mask_of([i]) in partition.blocks else 0)


def test_classify_all_ones():
    datum = WeightDatum.of([1] * 5)
    c = curve(datum, [1], [2], [3], [4, 5])
    curve_type = classify(c, datum)
    assert str(curve_type) == "(-,-,-,+,+,+,+)"
    assert table_value(curve_type, c, datum) == 2


def test_rare_type_all_halves_five_points():
    datum = WeightDatum.of([F(1, 2)] * 5)
    c = curve(datum, [1], [2], [3], [4, 5])
    curve_type = classify(c, datum)
    assert curve_type == CurveType.parse("(-,-,-,-,-,-,*)")
    assert table_value(curve_type, c, datum) == F(1, 2)
    assert pair(pullback_pushforward(datum), c) == F(1, 2)


def test_rare_type_all_halves_six_points():
    datum = WeightDatum.of([F(1, 2)] * 6)
    c = curve(datum, [1], [2], [3], [4, 5, 6])
    curve_type = classify(c, datum)
    assert str(curve_type) == "(-,-,-,+,-,-,*)"
    assert table_value(curve_type, c, datum) == F(1, 2)
    assert pair(pullback_pushforward(datum), c) == F(1, 2)


def test_contracted_curve_has_no_type():
    datum = WeightDatum.of([1, 1, F(1, 5), F(1, 5), F(1, 5)])
    c = curve(datum, [1, 2], [3], [4], [5])
    assert is_contracted(c, datum)
    with pytest.raises(ContractedCurveError):
        classify(c, datum)
    assert pair(pullback_pushforward(datum), c) == 0


def test_classify_needs_interior_weights():
    datum = WeightDatum.of([F(1, 2)] * 4)
    with pytest.raises(RegimeError):
        classify(curve(datum, [1], [2], [3], [4]), datum)


def test_unlisted_type_is_reported():
    datum = WeightDatum.of([1] * 5)
    c = curve(datum, [1], [2], [3], [4, 5])
    with pytest.raises(UnlistedTypeError) as info:
        table_summands(CurveType(("+",) * 6 + ("*",)), c, datum)
    assert info.value.symbols == ("+",) * 6 + ("*",)


def test_thirteen_tabulated_types():
    assert len(TABULATED_TYPES) == 13
    assert len(set(TABULATED_TYPES)) == 13
    assert CurveType.parse("(+,+,+,+,+,+,+)") in TABULATED_TYPES


def test_blocks_ordered_by_weight():
    datum = WeightDatum.of([1, 1, 1, F(2, 5), F(2, 5)])
    c = curve(datum, [1], [2], [3], [4, 5])
    assert c.weights == (F(4, 5), 1, 1, 1)
    assert c.sizes == (2, 1, 1, 1)


@st.composite
def interior_data(draw, min_n=5, max_n=7):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    d = draw(st.integers(min_value=2, max_value=10))
    ks = draw(st.lists(st.integers(min_value=1, max_value=d), min_size=n, max_size=n))
    assume(sum(ks) > 2 * d)
    return WeightDatum(tuple(F(k, d) for k in ks))


@settings(max_examples=30, deadline=None)
@given(interior_data())
def test_table_matches_direct_pairing(datum):
    divisor = pullback_pushforward(datum)
    for record in enumerate_curves(datum.ground, datum):
        direct = pair(divisor, record.curve)
        if record.contracted:
            assert direct == 0
            continue
        assert record.curve_type in TABULATED_TYPES
        summands = table_summands(record.curve_type, record.curve, datum)
        assert sum(summands) == direct
        assert direct > 0
        assert all(s >= 0 for s in summands) and summands[-1] > 0


@st.composite
def boundary_data(draw, min_n=4, max_n=7):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    d = draw(st.integers(min_value=max(2, (n + 1) // 2), max_value=10))
    cuts = sorted(draw(st.lists(st.integers(min_value=1, max_value=2 * d - 1),
                                min_size=n - 1, max_size=n - 1, unique=True)))
    ks = [b - a for a, b in zip([0] + cuts, cuts + [2 * d])]
    assume(max(ks) <= d)
    return WeightDatum(tuple(F(k, d) for k in ks))


@settings(max_examples=30, deadline=None)
@given(boundary_data())
def test_piecewise_boundary_pairing(datum):
    divisor = delta_prime(datum)
    for record in enumerate_curves(datum.ground, datum):
        assert delta_prime_pairing(record.curve, datum) == pair(divisor, record.curve)


def test_piecewise_boundary_branches():
    datum = WeightDatum.of([F(2, 5)] * 5)
    c = curve(datum, [1], [2], [3], [4, 5])
    assert delta_prime_pairing(c, datum) == F(1, 5) == pair(delta_prime(datum), c)

    datum = WeightDatum.of([1] + [F(1, 4)] * 4)
    c = curve(datum, [1], [2], [3], [4, 5])
    assert c.weights[3] == 1
    assert delta_prime_pairing(c, datum) == 0

    with pytest.raises(RegimeError):
        delta_prime_pairing(c, WeightDatum.of([1] * 5))


@pytest.mark.parametrize("n, rank", [(4, 1), (5, 5), (6, 16), (7, 42)])
def test_pairing_rank_is_picard_number(n, rank):
    assert expected_picard_rank(n) == rank
    assert pairing_rank(GroundSet(n)) == rank
