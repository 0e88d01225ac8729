"""
Ground sets, subsets and 4-block partitions of [n] = {1, ..., n}.

Subsets are plain ints used as bit-sets: bit i-1 is set when point i is a
member. Partitions into four blocks are produced as restricted growth strings
(each point labelled by its block, blocks labelled in order of first
appearance), which is also the canonical "blocks sorted by minimum element"
form.
"""
from dataclasses import dataclass
from functools import lru_cache

from app.config import MAX_POINTS, MIN_POINTS


class GroundSetError(ValueError):
    pass


class SubsetError(ValueError):
    pass


@dataclass(frozen=True)
class GroundSet:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < MIN_POINTS:
            raise GroundSetError(f"need at least {MIN_POINTS} marked points, got n={self.n}")
        if self.n > MAX_POINTS:
            raise GroundSetError(f"n={self.n} exceeds the supported bit-set width of {MAX_POINTS}")

    @property
    def full(self):
        return (1 << self.n) - 1

    @property
    def points(self):
        return range(1, self.n + 1)


def mask_of(points):
    """Bit-set of an iterable of 1-based points."""
    mask = 0
    for p in points:
        mask |= 1 << (p - 1)
    return mask


def members(mask):
    """Ascending 1-based members of a bit-set."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def size(mask):
    return bin(mask).count("1")


def min_point(mask):
    return (mask & -mask).bit_length()


def check_subset(mask, ground):
    if mask <= 0 or mask >= ground.full or mask & ~ground.full:
        raise SubsetError(f"{list(members(mask))} is not a nonempty proper subset of [{ground.n}]")


def complement(mask, ground):
    check_subset(mask, ground)
    return ground.full ^ mask


def enumerate_subset_pairs(ground, boundary_only=False):
    """Yield every complementary pair (I, I^c) once.

    The first member is the side not containing n. With boundary_only, only
    pairs whose sides both have at least two points are yielded.
    """
    n = ground.n
    full = ground.full
    for mask in range(1, 1 << (n - 1)):
        if boundary_only:
            k = size(mask)
            if k < 2 or k > n - 2:
                continue
        yield mask, full ^ mask


@dataclass(frozen=True)
class Partition4:
    blocks: tuple

    def __post_init__(self):
        if len(self.blocks) != 4 or any(b <= 0 for b in self.blocks):
            raise SubsetError("a Partition4 needs four nonempty blocks")
        union = 0
        for b in self.blocks:
            if union & b:
                raise SubsetError("partition blocks must be disjoint")
            union |= b
        ordered = tuple(sorted(self.blocks, key=min_point))
        object.__setattr__(self, "blocks", ordered)

    @classmethod
    def of(cls, *blocks):
        return cls(tuple(mask_of(b) for b in blocks))

    @property
    def support(self):
        out = 0
        for b in self.blocks:
            out |= b
        return out

    def covers(self, ground):
        return self.support == ground.full

    def as_lists(self):
        return [list(members(b)) for b in self.blocks]

    def __str__(self):
        return "(" + ",".join("{" + ",".join(map(str, members(b))) + "}" for b in self.blocks) + ")"


def _grow(n, i, used, blocks):
    # blocks holds the masks of labels 0..used-1 built from points 1..i
    if i == n:
        if used == 4:
            yield Partition4(tuple(blocks))
        return
    bit = 1 << i
    remaining = n - i
    if remaining - 1 >= 4 - used:
        for label in range(used):
            blocks[label] |= bit
            yield from _grow(n, i + 1, used, blocks)
            blocks[label] ^= bit
    if used < 4:
        blocks.append(bit)
        yield from _grow(n, i + 1, used + 1, blocks)
        blocks.pop()


def _labels_to_blocks(labels):
    blocks = []
    for i, label in enumerate(labels):
        if label == len(blocks):
            blocks.append(0)
        elif label > len(blocks):
            raise SubsetError(f"{labels} is not a restricted growth string")
        blocks[label] |= 1 << i
    return blocks


def enumerate_partitions4(ground, prefix=()):
    """Yield all partitions of [n] into four nonempty blocks in RGS order.

    A non-empty prefix restricts the stream to partitions whose first
    len(prefix) points carry those block labels; concatenating the streams of
    partition_prefixes(ground, k) in order reproduces the full stream.
    """
    blocks = _labels_to_blocks(prefix)
    if len(blocks) > 4:
        return
    yield from _grow(ground.n, len(prefix), len(blocks), blocks)


def partition_prefixes(ground, length):
    """Restricted growth prefixes of the given length that extend to a partition."""
    n = ground.n
    length = min(length, n)
    out = []

    def walk(labels, used):
        i = len(labels)
        if i == length:
            out.append(tuple(labels))
            return
        remaining = n - i
        if remaining - 1 >= 4 - used:
            for label in range(used):
                walk(labels + [label], used)
        if used < 4:
            walk(labels + [used], used + 1)

    walk([], 0)
    return out


@lru_cache(maxsize=None)
def stirling2(n, k):
    """Stirling numbers of the second kind via S(n,k) = k S(n-1,k) + S(n-1,k-1)."""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)
