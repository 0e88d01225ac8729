"""
Which birational model a weight datum selects.

Total weight above 2 gives a Hassett space of weighted pointed curves, whose
collision collection is every subset of weight at most 1. Total weight 2
gives a GIT quotient of (P^1)^n linearized by the weights; it is atypical
when some subset weighs exactly 1. Symmetric data additionally get placed
in the symmetric chamber picture through beta = 2a/(1+a).
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from app.audit import audit_datum, fmt
from app.combinatorics import members, size, stirling2
from app.weights import Regime, WeightDatum, contracted_collection

CONDITIONAL = "conditional on the F-conjecture: positivity checked on non-contracted vital curves only"


@dataclass(frozen=True)
class ModelDescriptor:
    kind: str
    weights: tuple
    collisions: tuple = ()
    contracted_divisors: int = 0
    contracted_curves: int = 0
    verified_ample: object = None
    walls: tuple = ()
    atypical: bool = False
    symmetric: dict = field(default=None, compare=False)

    @property
    def chamber_key(self):
        return self.collisions if self.kind == "hassett" else self.walls

    def to_payload(self):
        payload = {
            "model": self.kind,
            "regime": "interior" if self.kind == "hassett" else "boundary",
            "weights": [fmt(x) for x in self.weights],
            "walls": [list(members(m)) for m in self.walls],
        }
        if self.kind == "hassett":
            payload.update({
                "collisions": [list(members(m)) for m in self.collisions],
                "contracted_divisors": self.contracted_divisors,
                "contracted_curves": self.contracted_curves,
                "verified_ample": self.verified_ample,
                "ample_note": CONDITIONAL,
            })
        else:
            payload.update({
                "linearization": [fmt(x) for x in self.weights],
                "atypical": self.atypical,
            })
        if self.symmetric is not None:
            payload["symmetric"] = self.symmetric
        return payload


def symmetric_chamber(n, alpha):
    """Place a symmetric datum (alpha, ..., alpha) in the chamber picture of K + beta D."""
    alpha = Fraction(alpha)
    beta = 2 * alpha / (1 + alpha)
    m = n // 2
    k = m + 1 - int(2 / beta)
    info = {"alpha": fmt(alpha), "beta": fmt(beta), "m": m}
    if 1 <= k <= m - 2:
        info.update({"region": "hassett-chamber", "k": k,
                     "epsilon_range": [fmt(Fraction(1, m + 1 - k)), fmt(Fraction(1, m - k))]})
    elif k >= m - 1:
        info.update({"region": "no-reduction"})
    elif beta >= Fraction(2, n - 1):
        low, high = Fraction(2, n - 1), Fraction(2, m + 1)
        # low == high only at n = 4, where the open lower end leaves no interval
        info.update({"region": "git", "beta_range": [fmt(low), fmt(high)], "degenerate": low == high})
    else:
        info.update({"region": "below-range"})
    return info


def walls(datum, min_size=1):
    """Every proper subset of weight exactly 1 with at least min_size points; both sides of a tied pair count."""
    table = datum.weight_table
    found = [mask for mask in range(1, datum.ground.full) if table[mask] == 1 and size(mask) >= min_size]
    return tuple(sorted(found, key=lambda mask: (size(mask), members(mask))))


def count_contracted_curves(datum):
    """
    Vital curves whose heaviest block leaves weight at most 1 elsewhere.

    With total weight above 2 at most one block of a curve can do that, so the
    count is a sum over light subsets M of the ways to split M into three blocks.
    """
    table = datum.weight_table
    return sum(stirling2(size(mask), 3) for mask in range(1, datum.ground.full)
               if size(mask) >= 3 and table[mask] <= 1)


def model_descriptor(datum, check_ample=True, jobs=1):
    symmetric = symmetric_chamber(datum.n, datum.a[0]) if datum.is_symmetric else None
    if datum.regime is Regime.BOUNDARY:
        wall_list = walls(datum)
        return ModelDescriptor("git", datum.a, walls=wall_list, atypical=bool(wall_list), symmetric=symmetric)
    collisions = tuple(sorted(c.members for c in contracted_collection(datum) if c.size >= 2))
    contracted_divisors = sum(1 for c in contracted_collection(datum) if 2 <= c.size <= datum.n - 2)
    if check_ample:
        result = audit_datum(datum, jobs)
        contracted_curves = result.contracted
        verified = not any(check in result.failures for check in
                           ("table_agreement", "positivity", "contracted_pairing_zero", "type_closure"))
    else:
        contracted_curves = count_contracted_curves(datum)
        verified = None
    return ModelDescriptor("hassett", datum.a, collisions=collisions,
                           walls=walls(datum, 2),
                           contracted_divisors=contracted_divisors, contracted_curves=contracted_curves,
                           verified_ample=verified, symmetric=symmetric)


def grid_data(n, grid):
    """Sorted weight tuples with entries k/grid and total at least 2."""
    steps = [Fraction(k, grid) for k in range(1, grid + 1)]
    out = []
    for a in combinations_with_replacement(steps, n):
        if sum(a) >= 2:
            out.append(WeightDatum(a))
    return out


def scan(data, check_ample=True, jobs=1):
    """Descriptors for many data plus a summary of the chambers they fall in."""
    descriptors = []
    chambers = {}
    on_walls = []
    for datum in data:
        descriptor = model_descriptor(datum, check_ample=check_ample, jobs=jobs)
        descriptors.append(descriptor)
        key = (descriptor.kind, descriptor.chamber_key)
        chambers[key] = chambers.get(key, 0) + 1
        if descriptor.walls:
            on_walls.append([fmt(x) for x in datum.a])
    logging.info(f"📊 Scanned {len(descriptors)} weight data across {len(chambers)} chambers")
    summary = {
        "data": len(descriptors),
        "chambers": [
            {"model": kind, "subsets": [list(members(m)) for m in key], "count": count}
            for (kind, key), count in sorted(chambers.items(), key=lambda item: (item[0][0], item[0][1]))
        ],
        "on_walls": on_walls,
        "curves_per_datum": stirling2(data[0].n, 4) if data else 0,
    }
    return descriptors, summary
