"""
Pairing matrix between boundary divisors and vital curves, and its rank.

Boundary divisors span the Neron-Severi space and vital curves span the dual
space of curves, so the rank of the pairing matrix is the Picard number
2^(n-1) - C(n,2) - 1.
"""
import logging
import time
from math import comb

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from app.combinatorics import enumerate_partitions4
from app.divisors import boundary_keys


def expected_picard_rank(n):
    return 2 ** (n - 1) - comb(n, 2) - 1


def _row(partition, keys, full):
    b = partition.blocks
    minus = set(b) | {full ^ x for x in b}
    unions = (b[0] | b[1], b[0] | b[2], b[0] | b[3])
    plus = set(unions) | {full ^ x for x in unions}
    return [-1 if key in minus else 1 if key in plus else 0 for key in keys]


def pairing_matrix(ground):
    """Integer rows, one per vital curve in enumeration order, columns in boundary_keys order."""
    keys = boundary_keys(ground.n)
    return [_row(p, keys, ground.full) for p in enumerate_partitions4(ground)]


def pairing_rank(ground):
    start_time = time.time()
    rows = pairing_matrix(ground)
    ncols = len(boundary_keys(ground.n))
    logging.debug(f"📊 Pairing matrix for n={ground.n}: {len(rows)} x {ncols}")
    # rows are sparse (at most seven nonzeros), so hand sympy the dict form
    entries = {}
    for i, row in enumerate(rows):
        nonzero = {j: QQ(x) for j, x in enumerate(row) if x}
        if nonzero:
            entries[i] = nonzero
    rank = DomainMatrix(entries, (len(rows), ncols), QQ).rank()
    logging.debug(f"Rank {rank} computed in {time.time() - start_time:.2f}s")
    return rank
