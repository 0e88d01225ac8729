"""
Weight data, subset weights and the canonical side of a complementary pair.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property

from app.combinatorics import GroundSet, check_subset, enumerate_subset_pairs, size


class WeightRangeError(ValueError):
    pass


class WeightTooLargeError(ValueError):
    pass


class TotalWeightError(ValueError):
    pass


class RegimeError(ValueError):
    pass


class Regime(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class WeightDatum:
    a: tuple
    total: Fraction = field(init=False)
    regime: Regime = field(init=False)

    def __post_init__(self):
        a = tuple(Fraction(x) for x in self.a)
        GroundSet(len(a))
        for i, x in enumerate(a, start=1):
            if x <= 0:
                raise WeightRangeError(f"weight a{i}={x} must be positive")
            if x > 1:
                raise WeightTooLargeError(f"weight a{i}={x} exceeds 1")
        total = sum(a, Fraction(0))
        if total < 2:
            raise TotalWeightError(f"total weight {total} is below 2")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "total", total)
        object.__setattr__(self, "regime", Regime.INTERIOR if total > 2 else Regime.BOUNDARY)

    @classmethod
    def of(cls, values):
        return cls(tuple(values))

    @classmethod
    def symmetric(cls, n, alpha):
        return cls((Fraction(alpha),) * n)

    @property
    def n(self):
        return len(self.a)

    @cached_property
    def ground(self):
        return GroundSet(self.n)

    @property
    def is_interior(self):
        return self.regime is Regime.INTERIOR

    @property
    def is_symmetric(self):
        return len(set(self.a)) == 1

    @cached_property
    def weight_table(self):
        # weight_table[mask] = w_I for every bit-set over [n]
        table = [Fraction(0)] * (1 << self.n)
        for mask in range(1, 1 << self.n):
            low = mask & -mask
            table[mask] = table[mask ^ low] + self.a[low.bit_length() - 1]
        return table

    def require(self, regime, operation):
        if self.regime is not regime:
            raise RegimeError(f"{operation} needs the {regime.value} regime, got total weight {self.total}")

    def as_strings(self):
        return [f"{x.numerator}/{x.denominator}" for x in self.a]


def weight_of(mask, datum):
    if mask < 0 or mask >> datum.n:
        raise ValueError(f"subset mask {mask} is outside [{datum.n}]")
    return datum.weight_table[mask]


@dataclass(frozen=True)
class CanonicalSubset:
    members: int
    weight: Fraction = field(compare=False)
    size: int = field(compare=False)


def _prefers(mask, other, datum):
    w, wc = datum.weight_table[mask], datum.weight_table[other]
    if w != wc:
        return w < wc
    k, kc = size(mask), size(other)
    if k != kc:
        return k < kc
    return bool(mask & 1)


def canonical_mask(mask, datum):
    """The side of {I, I^c} chosen by the weight / size / contains-1 tie-break."""
    other = datum.ground.full ^ mask
    return mask if _prefers(mask, other, datum) else other


def canonicalize(mask, datum):
    check_subset(mask, datum.ground)
    rep = canonical_mask(mask, datum)
    return CanonicalSubset(rep, datum.weight_table[rep], size(rep))


def contracted_collection(datum):
    """Every canonical subset of weight at most 1."""
    out = set()
    for mask, _ in enumerate_subset_pairs(datum.ground):
        canon = canonicalize(mask, datum)
        if canon.weight <= 1:
            out.add(canon)
    return frozenset(out)
