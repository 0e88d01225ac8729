"""
Divisor classes on the moduli space of n-pointed stable rational curves,
written in the boundary basis D_I.

A coordinate is a complementary pair {I, I^c} with both sides of size at
least 2; internally it is keyed by the side not containing point n, and the
representative shown to users is picked by the weight tie-break in
app.weights. Every formula below evaluates |I| and w_I on that
representative, so coefficients agree with the canonical-side expressions.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from app.combinatorics import GroundSet, enumerate_subset_pairs, size
from app.weights import Regime, canonical_mask, contracted_collection


class GroundMismatchError(ValueError):
    pass


def pair_key(mask, ground):
    if mask >> (ground.n - 1) & 1:
        return ground.full ^ mask
    return mask


@lru_cache(maxsize=None)
def boundary_keys(n):
    """Pair keys of all boundary coordinates, ascending."""
    return tuple(mask for mask, _ in enumerate_subset_pairs(GroundSet(n), boundary_only=True))


def _is_boundary(mask, ground):
    k = size(mask)
    return 2 <= k <= ground.n - 2


class DivisorClass:
    """Sparse exact-rational combination of boundary divisors."""

    __slots__ = ("ground", "_coeffs")

    def __init__(self, ground, coeffs=None):
        self.ground = ground
        clean = {}
        for mask, value in (coeffs or {}).items():
            if not _is_boundary(mask, ground):
                # D_I = 0 when one side is a single point
                continue
            value = Fraction(value)
            if value:
                key = pair_key(mask, ground)
                clean[key] = clean.get(key, Fraction(0)) + value
        self._coeffs = {k: v for k, v in clean.items() if v}

    @classmethod
    def zero(cls, ground):
        return cls(ground)

    def coefficient(self, mask):
        if not 0 < mask < self.ground.full:
            return Fraction(0)
        return self._coeffs.get(pair_key(mask, self.ground), Fraction(0))

    def keys(self):
        return sorted(self._coeffs)

    def items(self):
        return [(k, self._coeffs[k]) for k in sorted(self._coeffs)]

    def terms(self, datum=None):
        """(representative, coefficient) pairs; representatives follow the datum's tie-break when given."""
        out = []
        for key, value in self.items():
            rep = canonical_mask(key, datum) if datum is not None else key
            out.append((rep, value))
        return out

    def support(self):
        return frozenset(self._coeffs)

    def is_zero(self):
        return not self._coeffs

    def is_effective(self):
        return all(v >= 0 for v in self._coeffs.values())

    def lookup(self):
        """Coefficient table indexed by both sides of every nonzero pair."""
        full = self.ground.full
        table = dict(self._coeffs)
        for k, v in self._coeffs.items():
            table[full ^ k] = v
        return table

    def _check(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        if other.ground != self.ground:
            raise GroundMismatchError(f"classes live on n={self.ground.n} and n={other.ground.n}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        merged = dict(self._coeffs)
        for k, v in other._coeffs.items():
            merged[k] = merged.get(k, Fraction(0)) + v
        return DivisorClass(self.ground, merged)

    def __neg__(self):
        return DivisorClass(self.ground, {k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, DivisorClass):
            return NotImplemented
        scalar = Fraction(scalar)
        return DivisorClass(self.ground, {k: scalar * v for k, v in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self.ground == other.ground and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.ground, frozenset(self._coeffs.items())))

    def __repr__(self):
        inner = ", ".join(f"{k:b}:{v}" for k, v in self.items())
        return f"DivisorClass(n={self.ground.n}, {{{inner}}})"


@dataclass(frozen=True)
class HassettClass:
    """A class on the Hassett model, kept in ambient coordinates with contracted ones zeroed."""

    divisor: DivisorClass
    contracted: frozenset

    def __post_init__(self):
        for canon in self.contracted:
            if self.divisor.coefficient(canon.members):
                raise ValueError(f"coefficient on contracted subset {canon.members:b} must vanish")


def _build(ground, coefficient):
    return DivisorClass(ground, {key: coefficient(key) for key in boundary_keys(ground.n)})


def psi_class(i, ground):
    n = ground.n
    if not 1 <= i <= n:
        raise ValueError(f"marked point {i} is outside [{n}]")
    denom = (n - 1) * (n - 2)
    bit = 1 << (i - 1)

    def coefficient(key):
        k = size(key) if key & bit else n - size(key)
        return Fraction((n - k) * (n - k - 1), denom)

    return _build(ground, coefficient)


def canonical_class(ground):
    n = ground.n

    def coefficient(key):
        k = size(key)
        return Fraction(k * (n - k), n - 1) - 2

    return _build(ground, coefficient)


def total_boundary(ground):
    return _build(ground, lambda key: Fraction(1))


def total_psi(ground):
    n = ground.n
    return _build(ground, lambda key: Fraction(size(key) * (n - size(key)), n - 1))


def delta_coefficient(rep, datum):
    """Coefficient of D_I in K + sum a_i psi_i, on the representative I."""
    n = datum.n
    k = size(rep)
    w = datum.weight_table[rep]
    wc = datum.total - w
    denom = (n - 1) * (n - 2)
    return (Fraction(k * (n - k), n - 1) - 2
            + Fraction((n - k) * (n - k - 1), denom) * w
            + Fraction(k * (k - 1), denom) * wc)


def delta(datum):
    return _build(datum.ground, lambda key: delta_coefficient(canonical_mask(key, datum), datum))


def pushforward(divisor, datum):
    datum.require(Regime.INTERIOR, "pushforward")
    if divisor.ground != datum.ground:
        raise GroundMismatchError("class and weight datum have different n")
    contracted = contracted_collection(datum)
    dropped = {c.members for c in contracted}
    kept = {key: value for key, value in divisor.terms(datum) if key not in dropped}
    return HassettClass(DivisorClass(datum.ground, kept), contracted)


def collapsed_coefficient(rep, datum):
    """Coefficient of a contracted D_I in the pullback of the pushforward, collapsed form."""
    n = datum.n
    k = size(rep)
    w = datum.weight_table[rep]
    wc = datum.total - w
    denom = (n - 1) * (n - 2)
    return (comb(k, 2) * (Fraction(2 * (n - 2), n - 1) - 2)
            + Fraction((n - 3) * (k - 1), n - 1) * w
            + Fraction((k - 1) * (k - 2), denom) * w
            + Fraction(k * (k - 1), denom) * wc)


def jsum_coefficient(rep, datum):
    """Same coefficient as collapsed_coefficient, summed over the 2-subsets J of I."""
    n = datum.n
    denom = (n - 1) * (n - 2)
    base = Fraction(2 * (n - 2), n - 1) - 2
    points = [1 << i for i in range(n) if rep >> i & 1]
    total = Fraction(0)
    for x in range(len(points)):
        for y in range(x + 1, len(points)):
            wj = datum.weight_table[points[x] | points[y]]
            total += (base
                      + Fraction((n - 2) * (n - 3), denom) * wj
                      + Fraction(2, denom) * (datum.total - wj))
    return total


def _pullback_coefficient(rep, datum, contracted_form):
    if datum.weight_table[rep] <= 1:
        return contracted_form(rep, datum)
    return delta_coefficient(rep, datum)


def pullback_pushforward(datum, contracted_form=collapsed_coefficient):
    datum.require(Regime.INTERIOR, "pullback_pushforward")
    return _build(datum.ground,
                  lambda key: _pullback_coefficient(canonical_mask(key, datum), datum, contracted_form))


def exceptional_part(datum):
    """sum over canonical I with w_I <= 1 of (|I| - 2)(1 - w_I) D_I."""

    def coefficient(key):
        rep = canonical_mask(key, datum)
        w = datum.weight_table[rep]
        if w > 1:
            return Fraction(0)
        return (size(rep) - 2) * (1 - w)

    return _build(datum.ground, coefficient)


def difference(datum):
    datum.require(Regime.INTERIOR, "difference")
    return exceptional_part(datum)


def delta_prime(datum):
    datum.require(Regime.BOUNDARY, "delta_prime")
    n = datum.n
    denom = (n - 1) * (n - 2)

    def coefficient(key):
        rep = canonical_mask(key, datum)
        k = size(rep)
        w = datum.weight_table[rep]
        return (n - 4) * (-comb(k, 2) * Fraction(2, denom) + Fraction(k - 1, n - 2) * w)

    return _build(datum.ground, coefficient)
