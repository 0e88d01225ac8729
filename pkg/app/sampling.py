"""
Seeded weight-data corpora plus the structured cases every suite run includes.
"""
import logging
import random
from dataclasses import dataclass
from fractions import Fraction

from app.combinatorics import GroundSet
from app.config import DEFAULT_MAX_DENOMINATOR, MAX_SAMPLE_ATTEMPTS
from app.weights import Regime, WeightDatum


class InfeasibleCorpusError(ValueError):
    pass


@dataclass(frozen=True)
class Corpus:
    n: int
    entries: tuple
    seed: int
    regime: Regime
    count: int
    max_denominator: int

    def regenerate(self):
        return sample_weights(self.n, self.regime, self.count, self.seed, self.max_denominator)


def _interior(rng, n, bound):
    for _ in range(MAX_SAMPLE_ATTEMPTS):
        d = rng.randint(2, bound)
        ks = [rng.randint(1, d) for _ in range(n)]
        if sum(ks) > 2 * d:
            return WeightDatum(tuple(Fraction(k, d) for k in ks))
    raise InfeasibleCorpusError(f"no interior datum found for n={n} after {MAX_SAMPLE_ATTEMPTS} draws")


def _boundary(rng, n, bound):
    # numerators k_i >= 1 summing to 2d: a random composition, rejected while some k_i > d
    low = max(2, (n + 1) // 2)
    for _ in range(MAX_SAMPLE_ATTEMPTS):
        d = rng.randint(low, bound)
        cuts = sorted(rng.sample(range(1, 2 * d), n - 1))
        ks = [b - a for a, b in zip([0] + cuts, cuts + [2 * d])]
        if max(ks) <= d:
            return WeightDatum(tuple(Fraction(k, d) for k in ks))
    raise InfeasibleCorpusError(f"no boundary datum found for n={n} after {MAX_SAMPLE_ATTEMPTS} draws")


def sample_weights(n, regime, count, seed, max_denominator=DEFAULT_MAX_DENOMINATOR):
    GroundSet(n)
    regime = Regime(regime)
    if max_denominator < 2:
        raise InfeasibleCorpusError("the denominator bound must be at least 2")
    if regime is Regime.BOUNDARY and 2 * max_denominator < n:
        raise InfeasibleCorpusError(
            f"total weight 2 needs n={n} numerators of at least 1/d, impossible with d <= {max_denominator}")
    rng = random.Random(seed)
    draw = _interior if regime is Regime.INTERIOR else _boundary
    entries = tuple(draw(rng, n, max_denominator) for _ in range(count))
    logging.debug(f"Sampled {count} {regime.value} weight data for n={n} (seed {seed})")
    return Corpus(n, entries, seed, regime, count, max_denominator)


def structured_cases(n, regime):
    """Hand-picked data hitting walls, chambers and every curve type the suites look for."""
    regime = Regime(regime)
    ones = Fraction(1)
    if regime is Regime.INTERIOR:
        m = n // 2
        raw = [
            (ones,) * n,
            (ones,) * (n - 2) + (Fraction(2, 5),) * 2,
            (ones,) * (n - 2) + (Fraction(1, 2),) * 2,
            (ones,) * 3 + (Fraction(1, 10),) * (n - 3),
            (Fraction(1, 2),) * n if n > 4 else (Fraction(3, 5),) * n,
        ]
        raw += [(Fraction(1, m - k),) * n for k in range(1, m - 1)]
    else:
        raw = [
            (Fraction(2, n),) * n,
            (ones,) + (Fraction(1, n - 1),) * (n - 1),
            (Fraction(1, 2),) * 2 + (Fraction(1, n - 2),) * (n - 2),
        ]
        if n >= 6:
            raw.append((Fraction(1, 3),) * 3 + (Fraction(1, n - 3),) * (n - 3))
    seen = []
    for a in raw:
        if a not in seen:
            seen.append(a)
    return [WeightDatum(a) for a in seen]
