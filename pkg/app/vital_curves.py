"""
Vital curves C(S1, S2, S3, S4), their pairing with boundary divisors, the
contraction test, the seven-symbol type of a non-contracted curve and the
closed-form intersection numbers of the pulled-back pushforward class.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from app.combinatorics import enumerate_partitions4, min_point, size
from app.divisors import GroundMismatchError
from app.weights import CanonicalSubset, Regime, RegimeError


class ContractedCurveError(ValueError):
    pass


class UnlistedTypeError(ValueError):
    def __init__(self, symbols):
        self.symbols = tuple(symbols)
        super().__init__(f"curve type {format_symbols(symbols)} is not one of the 13 tabulated types")


@dataclass(frozen=True)
class VitalCurve:
    partition: object
    ordered_blocks: tuple
    sizes: tuple
    weights: tuple
    total: Fraction

    @classmethod
    def build(cls, partition, datum):
        table = datum.weight_table
        ordered = tuple(sorted(partition.blocks, key=lambda b: (table[b], min_point(b))))
        return cls.with_order(partition, ordered, datum)

    @classmethod
    def with_order(cls, partition, ordered, datum):
        table = datum.weight_table
        return cls(partition, ordered,
                   tuple(size(b) for b in ordered),
                   tuple(table[b] for b in ordered),
                   datum.total)

    def admissible_orderings(self, datum):
        """Every block order with nondecreasing weights, this curve's own order first."""
        out = [self]
        for perm in permutations(range(4)):
            ws = [self.weights[p] for p in perm]
            if perm == (0, 1, 2, 3) or any(ws[j] > ws[j + 1] for j in range(3)):
                continue
            out.append(VitalCurve.with_order(self.partition, tuple(self.ordered_blocks[p] for p in perm), datum))
        return out


SYMBOLS = ("-", "+", "*")


def format_symbols(symbols):
    return "(" + ",".join(symbols) + ")"


@dataclass(frozen=True)
class CurveType:
    symbols: tuple

    def __post_init__(self):
        if len(self.symbols) != 7 or any(s not in SYMBOLS for s in self.symbols):
            raise ValueError(f"a curve type is seven symbols from {SYMBOLS}, got {self.symbols}")

    @classmethod
    def parse(cls, text):
        return cls(tuple(s.strip() for s in text.strip("()").split(",")))

    def __str__(self):
        return format_symbols(self.symbols)


def _mask(subset):
    return subset.members if isinstance(subset, CanonicalSubset) else subset


def _check_ground(curve, ground):
    if not curve.partition.covers(ground):
        raise GroundMismatchError(f"curve {curve.partition} is not a partition of [{ground.n}]")


def pair_boundary(subset, curve, ground):
    """D_I . C: -1 on a block, +1 on a union of two blocks, 0 otherwise (up to complement)."""
    _check_ground(curve, ground)
    mask = _mask(subset)
    k = size(mask)
    if k < 2 or k > ground.n - 2:
        return 0
    other = ground.full ^ mask
    b = curve.partition.blocks
    if mask in b or other in b:
        return -1
    if mask in (b[0] | b[1], b[0] | b[2], b[0] | b[3]) or other in (b[0] | b[1], b[0] | b[2], b[0] | b[3]):
        return 1
    return 0


def pair_table(table, blocks):
    """Pairing from a coefficient table holding both sides of every pair (DivisorClass.lookup)."""
    b0, b1, b2, b3 = blocks
    get = table.get
    zero = 0
    value = get(b0 | b1, zero) + get(b0 | b2, zero) + get(b0 | b3, zero)
    for b in blocks:
        value -= get(b, zero)
    return Fraction(value)


def pair(divisor, curve):
    _check_ground(curve, divisor.ground)
    return pair_table(divisor.lookup(), curve.partition.blocks)


def is_contracted(curve, datum):
    return curve.total - curve.weights[3] <= 1


def _symbol(x, upper):
    if x <= 1:
        return "-"
    if x >= upper:
        return "*"
    return "+"


def classify(curve, datum):
    if datum.regime is not Regime.INTERIOR:
        raise RegimeError("curve types are only defined for total weight above 2")
    if is_contracted(curve, datum):
        raise ContractedCurveError(f"curve {curve.partition} is contracted; it has no type")
    w1, w2, w3, w4 = curve.weights
    upper = curve.total - 1
    return CurveType(tuple(_symbol(x, upper) for x in (w1, w2, w3, w4, w1 + w2, w1 + w3, w1 + w4)))


def _rows():
    # each row returns its summands; the last one is the strictly positive term
    def r1(n, T, w, W):
        return [(n - 4) * w[0], T[0] * (W - 2)]

    def r2(n, T, w, W):
        return [(T[0] - 1) * (w[0] + w[1] + w[2] - 1), (T[1] + T[2] - 2) * w[0],
                (T[3] - 1) * (1 - w[3]), W - 2]

    def r3(n, T, w, W):
        return [(T[1] - 1) * w[0], (T[0] - 1) * w[1], (T[2] - 1) * (1 - w[2]),
                (T[3] - 1) * (1 - w[3]), W - 2]

    def r4(n, T, w, W):
        return [(T[j] - 1) * (1 - w[j]) for j in range(4)] + [W - 2]

    def r5(n, T, w, W):
        return [(T[1] + T[2] - 2) * w[0], T[0] * (w[0] + w[1] + w[2] - 1)]

    def r6(n, T, w, W):
        return [(T[1] - 1) * w[0], (T[0] - 1) * w[1], (T[2] - 1) * (1 - w[2]),
                w[0] + w[1] + w[2] - 1]

    def r7(n, T, w, W):
        return [(T[j] - 1) * (1 - w[j]) for j in range(3)] + [w[0] + w[1] + w[2] - 1]

    def r8(n, T, w, W):
        return [T[1] * w[0], T[0] * w[1]]

    def r9(n, T, w, W):
        return [(T[0] - 1) * (1 - w[0]), (T[1] - 1) * (1 - w[1]), w[0] + w[1]]

    def r10(n, T, w, W):
        return [(T[0] - 1) * (1 - w[0]), w[0], Fraction(1)]

    def r11(n, T, w, W):
        return [Fraction(2)]

    def r12(n, T, w, W):
        return [(T[0] + T[1] + T[2] - 3) * (w[0] + w[1] + w[2] - 1), (T[3] - 1) * (1 - w[3]), W - 2]

    def r13(n, T, w, W):
        return [(T[0] + T[1] + T[2] - 2) * (w[0] + w[1] + w[2] - 1)]

    rows = [
        ("-------", r1), ("------+", r2), ("-----++", r3), ("----+++", r4),
        ("---+--+", r5), ("---+-++", r6), ("---++++", r7), ("--++-++", r8),
        ("--+++++", r9), ("-++++++", r10), ("+++++++", r11), ("------*", r12),
        ("---+--*", r13),
    ]
    return {tuple(code): fn for code, fn in rows}


TABLE = _rows()
TABULATED_TYPES = tuple(CurveType(symbols) for symbols in TABLE)


def table_summands(curve_type, curve, datum):
    row = TABLE.get(curve_type.symbols)
    if row is None:
        raise UnlistedTypeError(curve_type.symbols)
    return [Fraction(x) for x in row(datum.n, curve.sizes, curve.weights, curve.total)]


def table_value(curve_type, curve, datum):
    return sum(table_summands(curve_type, curve, datum), Fraction(0))


@dataclass(frozen=True)
class CurveRecord:
    curve: VitalCurve
    contracted: bool
    curve_type: object = None


def enumerate_curves(ground, datum, prefix=()):
    if datum.ground != ground:
        raise GroundMismatchError(f"weight datum has n={datum.n}, ground set has n={ground.n}")
    interior = datum.regime is Regime.INTERIOR
    for partition in enumerate_partitions4(ground, prefix):
        curve = VitalCurve.build(partition, datum)
        contracted = is_contracted(curve, datum)
        curve_type = classify(curve, datum) if interior and not contracted else None
        yield CurveRecord(curve, contracted, curve_type)


def delta_prime_pairing(curve, datum):
    datum.require(Regime.BOUNDARY, "delta_prime_pairing")
    n = datum.n
    w1, w4 = curve.weights[0], curve.weights[3]
    if w4 >= 1:
        return Fraction(0)
    if w1 + w4 >= 1:
        return (n - 4) * (1 - w4)
    return (n - 4) * w1
