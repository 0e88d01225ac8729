from fractions import Fraction

import pytest

from app.combinatorics import GroundSetError, SubsetError, mask_of, members
from app.weights import (
    Regime,
    RegimeError,
    TotalWeightError,
    WeightDatum,
    WeightRangeError,
    WeightTooLargeError,
    canonicalize,
    contracted_collection,
    weight_of,
)

F = Fraction


def test_regimes():
    assert WeightDatum.of([1, 1, 1, F(2, 5), F(2, 5)]).regime is Regime.INTERIOR
    assert WeightDatum.of([F(1, 2)] * 4).regime is Regime.BOUNDARY
    assert WeightDatum.of([F(1, 2)] * 4).total == 2


@pytest.mark.parametrize("values, error", [
    ([1, 1, F(3, 10)], GroundSetError),
    ([0, 1, 1, 1, 1], WeightRangeError),
    ([F(-1, 2), 1, 1, 1], WeightRangeError),
    ([2, 1, 1, 1], WeightTooLargeError),
    ([F(1, 2), F(1, 2), F(1, 2), F(1, 4)], TotalWeightError),
])
def test_invalid_data(values, error):
    with pytest.raises(error):
        WeightDatum.of(values)


def test_weights_are_exact():
    datum = WeightDatum.of(["1/3", "1/3", "1/3", "1", "1"])
    assert datum.total == F(3)
    assert datum.as_strings() == ["1/3", "1/3", "1/3", "1/1", "1/1"]
    assert weight_of(mask_of([1, 2, 3]), datum) == 1


def test_canonical_side_prefers_lower_weight():
    datum = WeightDatum.of([1, 1, 1, F(2, 5), F(2, 5)])
    canon = canonicalize(mask_of([1, 2, 3]), datum)
    assert members(canon.members) == (4, 5)
    assert canon.weight == F(4, 5)
    assert canon.size == 2


def test_canonical_side_breaks_ties_by_size_then_point_one():
    # {1,2,3} and {4,5,6} both weigh 1 and have three points
    datum = WeightDatum.of([F(1, 3)] * 6)
    assert members(canonicalize(mask_of([4, 5, 6]), datum).members) == (1, 2, 3)
    # {1} weighs 1 like {2,3,4,5}; the smaller side wins
    datum = WeightDatum.of([1, F(1, 4), F(1, 4), F(1, 4), F(1, 4)])
    assert members(canonicalize(mask_of([2, 3, 4, 5]), datum).members) == (1,)


def test_canonicalize_rejects_improper_subsets():
    datum = WeightDatum.of([1] * 5)
    with pytest.raises(SubsetError):
        canonicalize(0, datum)
    with pytest.raises(SubsetError):
        canonicalize(datum.ground.full, datum)


def test_contracted_collection():
    datum = WeightDatum.of([1, 1, 1, F(2, 5), F(2, 5)])
    collection = {members(c.members) for c in contracted_collection(datum)}
    assert collection == {(1,), (2,), (3,), (4,), (5,), (4, 5)}

    # total weight 2: every canonical side weighs at most 1
    datum = WeightDatum.of([F(1, 2)] * 4)
    assert all(c.weight <= 1 for c in contracted_collection(datum))
    assert len(contracted_collection(datum)) == 7


def test_require_regime():
    with pytest.raises(RegimeError):
        WeightDatum.of([F(1, 2)] * 4).require(Regime.INTERIOR, "pushforward")


def test_symmetric():
    datum = WeightDatum.symmetric(8, F(1, 2))
    assert datum.is_symmetric
    assert datum.n == 8
    assert not WeightDatum.of([1, 1, 1, F(2, 5), F(2, 5)]).is_symmetric
