"""
Curve-by-curve checks for one weight datum.

Interior data: every non-contracted curve's tabulated intersection number is
compared with the direct pairing of the pulled-back pushforward class, its
summands are sign-checked, tied block orders are re-evaluated, and contracted
curves must pair to zero. Boundary data: the piecewise pairing of the
boundary-weight class is compared with its direct pairing.

Work is split into restricted-growth-string prefixes; chunk results merge in
prefix order, so the outcome does not depend on how many workers ran.
"""
import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial

from app.combinatorics import partition_prefixes
from app.config import CHUNK_PREFIX_LENGTH
from app.divisors import delta_prime, pullback_pushforward
from app.parallel import map_ordered
from app.vital_curves import (
    UnlistedTypeError,
    classify,
    delta_prime_pairing,
    enumerate_curves,
    pair_table,
    table_summands,
)
from app.weights import Regime

MAX_COUNTEREXAMPLES = 5

INTERIOR_CHECKS = (
    "table_agreement",
    "positivity",
    "summand_signs",
    "contracted_pairing_zero",
    "tie_robustness",
    "type_closure",
)
BOUNDARY_CHECKS = ("boundary_pairing_agreement",)


def fmt(x):
    return f"{x.numerator}/{x.denominator}"


@dataclass
class CurveRow:
    partition: list
    contracted: bool
    curve_type: str
    table_value: object
    direct_value: object
    match: bool


@dataclass
class AuditResult:
    curves: int = 0
    contracted: int = 0
    types: Counter = field(default_factory=Counter)
    failures: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)

    def fail(self, check, example):
        bucket = self.failures.setdefault(check, [])
        if len(bucket) < MAX_COUNTEREXAMPLES:
            bucket.append(example)

    def merge(self, other):
        self.curves += other.curves
        self.contracted += other.contracted
        self.types.update(other.types)
        for check, examples in other.failures.items():
            for example in examples:
                self.fail(check, example)
        self.rows.extend(other.rows)
        return self

    @property
    def ok(self):
        return not self.failures


def _example(datum, curve, expected, actual, **extra):
    example = {
        "n": datum.n,
        "weights": datum.as_strings(),
        "partition": curve.partition.as_lists(),
        "expected": fmt(expected),
        "actual": fmt(actual),
    }
    example.update(extra)
    return example


def _audit_interior_curve(result, datum, table, record, keep_rows):
    curve = record.curve
    direct = pair_table(table, curve.partition.blocks)
    if record.contracted:
        result.contracted += 1
        if direct != 0:
            result.fail("contracted_pairing_zero", _example(datum, curve, Fraction(0), direct))
        if keep_rows:
            result.rows.append(CurveRow(curve.partition.as_lists(), True, "contracted", None, direct, direct == 0))
        return
    curve_type = record.curve_type
    result.types[str(curve_type)] += 1
    try:
        summands = table_summands(curve_type, curve, datum)
    except UnlistedTypeError as e:
        result.fail("type_closure", {"n": datum.n, "weights": datum.as_strings(),
                                     "partition": curve.partition.as_lists(), "type": str(curve_type),
                                     "detail": str(e)})
        if keep_rows:
            result.rows.append(CurveRow(curve.partition.as_lists(), False, str(curve_type), None, direct, False))
        return
    value = sum(summands)
    if value != direct:
        result.fail("table_agreement", _example(datum, curve, direct, value, type=str(curve_type)))
    if value <= 0:
        example = _example(datum, curve, value, value, type=str(curve_type))
        example["expected"] = "> 0"
        result.fail("positivity", example)
    if any(s < 0 for s in summands) or summands[-1] <= 0:
        result.fail("summand_signs", {"n": datum.n, "weights": datum.as_strings(),
                                      "partition": curve.partition.as_lists(), "type": str(curve_type),
                                      "summands": [fmt(s) for s in summands]})
    if len(set(curve.weights)) < 4:
        for other in curve.admissible_orderings(datum)[1:]:
            other_type = classify(other, datum)
            try:
                other_value = sum(table_summands(other_type, other, datum))
            except UnlistedTypeError:
                other_value = None
            if other_value != value:
                result.fail("tie_robustness", {"n": datum.n, "weights": datum.as_strings(),
                                               "partition": curve.partition.as_lists(),
                                               "type": str(curve_type), "reordered_type": str(other_type),
                                               "expected": fmt(value),
                                               "actual": None if other_value is None else fmt(other_value)})
                break
    if keep_rows:
        result.rows.append(CurveRow(curve.partition.as_lists(), False, str(curve_type), value, direct, value == direct))


def _audit_boundary_curve(result, datum, table, record, keep_rows):
    curve = record.curve
    if record.contracted:
        result.contracted += 1
    direct = pair_table(table, curve.partition.blocks)
    value = delta_prime_pairing(curve, datum)
    if value != direct:
        result.fail("boundary_pairing_agreement", _example(datum, curve, direct, value))
    if keep_rows:
        result.rows.append(CurveRow(curve.partition.as_lists(), record.contracted, None, value, direct, value == direct))


def audit_chunk(datum, table, keep_rows, prefix):
    result = AuditResult()
    check = _audit_interior_curve if datum.is_interior else _audit_boundary_curve
    for record in enumerate_curves(datum.ground, datum, prefix):
        result.curves += 1
        check(result, datum, table, record, keep_rows)
    return result


def audit_datum(datum, jobs=1, keep_rows=False):
    start_time = time.time()
    if datum.regime is Regime.INTERIOR:
        divisor = pullback_pushforward(datum)
    else:
        divisor = delta_prime(datum)
    table = divisor.lookup()
    prefixes = partition_prefixes(datum.ground, CHUNK_PREFIX_LENGTH)
    chunks = map_ordered(partial(audit_chunk, datum, table, keep_rows), prefixes, jobs)
    result = AuditResult()
    for chunk in chunks:
        result.merge(chunk)
    logging.debug(f"Audited {result.curves} curves for {','.join(datum.as_strings())} "
                  f"in {time.time() - start_time:.2f}s")
    return result
