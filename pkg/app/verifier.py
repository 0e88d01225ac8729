import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction

from app.audit import BOUNDARY_CHECKS, INTERIOR_CHECKS, audit_datum, fmt
from app.combinatorics import (
    GroundSet,
    enumerate_partitions4,
    enumerate_subset_pairs,
    members,
    stirling2,
)
from app.config import DEFAULT_MAX_DENOMINATOR, RANK_N_RANGE
from app.divisors import (
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
from app.models import model_descriptor, symmetric_chamber
from app.picard import expected_picard_rank, pairing_rank
from app.sampling import sample_weights, structured_cases
from app.vital_curves import TABULATED_TYPES
from app.weights import Regime, WeightDatum, canonical_mask, contracted_collection

DATUM_CHECKS = (
    "delta_expansion",
    "pullback_forms_agree",
    "difference_identity",
    "effectivity",
    "pushforward_support",
) + INTERIOR_CHECKS + (
    "boundary_identity",
    "boundary_effectivity",
) + BOUNDARY_CHECKS

GROUND_CHECKS = (
    "stirling_count",
    "subset_pair_counts",
    "picard_rank",
    "psi_identity",
    "symmetric_factorization",
    "symmetric_boundary_factorization",
    "symmetric_chambers",
)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class CheckResult:
    status: str = SKIPPED
    runs: int = 0
    counterexamples: list = field(default_factory=list)

    def record(self, example=None):
        self.runs += 1
        if example is None:
            if self.status == SKIPPED:
                self.status = PASS
            return
        self.status = FAIL
        if len(self.counterexamples) < 5:
            self.counterexamples.append(example)

    def to_payload(self):
        return {"status": self.status, "runs": self.runs, "counterexamples": self.counterexamples}


@dataclass
class VerificationReport:
    n: int
    data: list
    checks: dict
    curves: int = 0
    contracted: int = 0
    types: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self):
        return all(c.status != FAIL for c in self.checks.values())

    @property
    def missing_types(self):
        return sorted(str(t) for t in TABULATED_TYPES if str(t) not in self.types)

    def to_payload(self, include_timing=False):
        payload = {
            "n": self.n,
            "data": self.data,
            "passed": self.passed,
            "checks": {name: result.to_payload() for name, result in self.checks.items()},
            "counts": {
                "data": len(self.data),
                "curves": self.curves,
                "contracted": self.contracted,
                "types_witnessed": dict(sorted(self.types.items())),
                "types_missing": self.missing_types,
            },
        }
        if include_timing:
            payload["timing"] = {"elapsed_seconds": f"{self.elapsed:.3f}"}
        return payload


def _first_difference(lhs, rhs, datum, label):
    """Counterexample at the first coordinate where two classes differ, else None."""
    for key in sorted(lhs.support() | rhs.support()):
        a, b = lhs.coefficient(key), rhs.coefficient(key)
        if a != b:
            rep = canonical_mask(key, datum) if datum is not None else key
            example = {"n": lhs.ground.n, "subset": list(members(rep)), "expected": fmt(b), "actual": fmt(a),
                       "identity": label}
            if datum is not None:
                example["weights"] = datum.as_strings()
            return example
    return None


def _delta_expansion(datum):
    ground = datum.ground
    rhs = canonical_class(ground)
    for i, a in enumerate(datum.a, start=1):
        rhs = rhs + a * psi_class(i, ground)
    return _first_difference(delta(datum), rhs, datum, "delta = K + sum a_i psi_i")


def _interior_algebra(checks, datum):
    contracted = contracted_collection(datum)
    for canon in sorted(contracted, key=lambda c: c.members):
        if 2 <= canon.size <= datum.n - 2:
            collapsed = collapsed_coefficient(canon.members, datum)
            summed = jsum_coefficient(canon.members, datum)
            if collapsed != summed:
                checks["pullback_forms_agree"].record({
                    "n": datum.n, "weights": datum.as_strings(), "subset": list(members(canon.members)),
                    "expected": fmt(summed), "actual": fmt(collapsed)})
                break
    else:
        checks["pullback_forms_agree"].record()

    full = delta(datum)
    pulled = pullback_pushforward(datum)
    diff = difference(datum)
    checks["difference_identity"].record(_first_difference(full - pulled, diff, datum, "delta - pullback = difference"))

    allowed = {c.members for c in contracted}
    bad = [(rep, v) for rep, v in diff.terms(datum) if v < 0 or rep not in allowed]
    checks["effectivity"].record(None if not bad else {
        "n": datum.n, "weights": datum.as_strings(), "subset": list(members(bad[0][0])),
        "actual": fmt(bad[0][1]), "expected": ">= 0 and supported on the contracted collection"})

    pushed = pushforward(full, datum).divisor
    kept = {rep: v for rep, v in full.terms(datum) if rep not in allowed}
    leaked = [rep for rep in pushed.keys() if canonical_mask(rep, datum) in allowed]
    mismatch = [rep for rep, v in kept.items() if pushed.coefficient(rep) != v]
    checks["pushforward_support"].record(None if not (leaked or mismatch) else {
        "n": datum.n, "weights": datum.as_strings(),
        "subset": list(members((leaked or mismatch)[0])),
        "expected": "delta coefficient off the contracted collection, 0 on it"})


def _boundary_algebra(checks, datum):
    full = delta(datum)
    prime = delta_prime(datum)
    closed = exceptional_part(datum)
    checks["boundary_identity"].record(_first_difference(full - prime, closed, datum, "delta - delta' = difference"))
    bad = [(rep, v) for rep, v in closed.terms(datum) if v < 0 or (len(members(rep)) == 2 and v != 0)]
    checks["boundary_effectivity"].record(None if not bad else {
        "n": datum.n, "weights": datum.as_strings(), "subset": list(members(bad[0][0])),
        "actual": fmt(bad[0][1]), "expected": ">= 0, and 0 on two-point subsets"})


def _symmetric_alphas(n):
    out = set()
    for q in range(1, 13):
        for p in range(1, q + 1):
            alpha = Fraction(p, q)
            if alpha > Fraction(2, n):
                out.add(alpha)
    return sorted(out)


def _symmetric_identity(ground, alpha, K, D):
    datum = WeightDatum.symmetric(ground.n, alpha)
    beta = 2 * alpha / (1 + alpha)
    return _first_difference(delta(datum), (1 + alpha) * (K + beta * D), datum,
                             "delta = (1 + a)(K + 2a/(1 + a) D)")


def _ground_checks(checks, ground, jobs):
    n = ground.n
    count = sum(1 for _ in enumerate_partitions4(ground))
    checks["stirling_count"].record(None if count == stirling2(n, 4) else {
        "n": n, "expected": stirling2(n, 4), "actual": count})

    pairs = list(enumerate_subset_pairs(ground))
    boundary = [p for p in pairs if 2 <= len(members(p[0])) <= n - 2]
    expected_pairs = (2 ** (n - 1) - 1, 2 ** (n - 1) - n - 1)
    checks["subset_pair_counts"].record(None if (len(pairs), len(boundary)) == expected_pairs else {
        "n": n, "expected": list(expected_pairs), "actual": [len(pairs), len(boundary)]})

    low, high = RANK_N_RANGE
    if low <= n <= high:
        rank = pairing_rank(ground)
        checks["picard_rank"].record(None if rank == expected_picard_rank(n) else {
            "n": n, "expected": expected_picard_rank(n), "actual": rank})

    K = canonical_class(ground)
    D = total_boundary(ground)
    checks["psi_identity"].record(_first_difference(total_psi(ground), K + 2 * D, None, "psi = K + 2D"))

    for alpha in _symmetric_alphas(n):
        checks["symmetric_factorization"].record(_symmetric_identity(ground, alpha, K, D))
    checks["symmetric_boundary_factorization"].record(_symmetric_identity(ground, Fraction(2, n), K, D))

    m = n // 2
    for k in range(1, m - 1):
        alpha = Fraction(1, m - k)
        info = symmetric_chamber(n, alpha)
        descriptor = model_descriptor(WeightDatum.symmetric(n, alpha), check_ample=False, jobs=jobs)
        expected_sizes = set(range(2, m - k + 1))
        sizes = {len(members(c)) for c in descriptor.collisions}
        ok = info.get("region") == "hassett-chamber" and info.get("k") == k and sizes == expected_sizes
        checks["symmetric_chambers"].record(None if ok else {
            "n": n, "alpha": fmt(alpha), "expected": {"k": k, "collision_sizes": sorted(expected_sizes)},
            "actual": {"chamber": info, "collision_sizes": sorted(sizes)}})


def run_suite(n, data, jobs=1):
    """Run every check on the given data plus the once-per-n checks; failures are recorded, never raised."""
    start_time = time.time()
    ground = GroundSet(n)
    checks = {name: CheckResult() for name in DATUM_CHECKS + GROUND_CHECKS}
    report = VerificationReport(n, [d.as_strings() for d in data], checks)
    types = {}

    logging.info(f"🚀 Verifying n={n} on {len(data)} weight data")
    for index, datum in enumerate(data, start=1):
        if datum.n != n:
            raise ValueError(f"weight datum {datum.as_strings()} has n={datum.n}, suite runs n={n}")
        logging.debug(f"Step {index}/{len(data)}: {','.join(datum.as_strings())} ({datum.regime.value})")
        checks["delta_expansion"].record(_delta_expansion(datum))
        if datum.is_interior:
            _interior_algebra(checks, datum)
        else:
            _boundary_algebra(checks, datum)

        result = audit_datum(datum, jobs)
        report.curves += result.curves
        report.contracted += result.contracted
        for name in (INTERIOR_CHECKS if datum.is_interior else BOUNDARY_CHECKS):
            examples = result.failures.get(name, [])
            if examples:
                for example in examples:
                    checks[name].record(example)
            else:
                checks[name].record()
        for curve_type, count in result.types.items():
            types[curve_type] = types.get(curve_type, 0) + count

    logging.info(f"🔍 Running once-per-n checks for n={n}")
    _ground_checks(checks, ground, jobs)

    report.types = types
    report.elapsed = time.time() - start_time
    failed = [name for name, c in checks.items() if c.status == FAIL]
    if failed:
        logging.error(f"❌ n={n}: {len(failed)} checks failed: {', '.join(failed)}")
    else:
        logging.info(f"✅ n={n}: all checks passed in {report.elapsed:.2f} seconds")
    if report.missing_types:
        logging.info(f"📊 Types not witnessed at n={n}: {', '.join(report.missing_types)}")
    return report


def suite_data(n, samples, seed, max_denominator=DEFAULT_MAX_DENOMINATOR, structured=True):
    """Structured cases first, then the seeded Interior and Boundary corpora (seed and seed + 1)."""
    data = []
    for offset, regime in enumerate((Regime.INTERIOR, Regime.BOUNDARY)):
        if structured:
            data.extend(structured_cases(n, regime))
        if samples:
            data.extend(sample_weights(n, regime, samples, seed + offset, max_denominator).entries)
    return data
