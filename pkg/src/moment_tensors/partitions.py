"""Pair-partition combinatorics: perfect matchings of {0..k-1}, matchings of
a subset plus a leftover block, ordered mode subsets, and double factorials.

Elements are 0-based throughout.  Enumeration order is deterministic: the
smallest free element is paired first and partners iterate in ascending
order, so the k = 4 matchings come out as {0,1}{2,3}, {0,2}{1,3}, {0,3}{1,2}.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import GuardError

TWO_PARTITION_MAX_K = 16
ENUMERATION_GUARD = 2_027_025  # 15!!, the matching count at k = 16
DOUBLE_FACTORIAL_MAX = 33


@dataclass(frozen=True)
class TwoPartition:
    """Perfect matching of {0..k-1}: disjoint pairs (a, b) with a < b,
    sorted by first element, covering the ground set exactly."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = []
        for a, b in self.pairs:
            if a >= b:
                raise ValueError(f"pair ({a}, {b}) must be ordered a < b")
            seen += [a, b]
        firsts = [p[0] for p in self.pairs]
        if firsts != sorted(firsts):
            raise ValueError("pairs must be sorted by first element")
        if sorted(seen) != list(range(len(seen))):
            raise ValueError(f"pairs must partition a range, got elements {sorted(seen)}")

    @property
    def ground_size(self) -> int:
        return 2 * len(self.pairs)


@dataclass(frozen=True)
class S2Partition:
    """Matching of part of {0..k-1} plus the leftover singleton block W."""

    pairs: tuple[tuple[int, int], ...]
    singleton_block: tuple[int, ...]

    def __post_init__(self):
        elements = [e for p in self.pairs for e in p] + list(self.singleton_block)
        if sorted(elements) != list(range(len(elements))):
            raise ValueError(f"blocks must partition a range, got {sorted(elements)}")
        if any(a >= b for a, b in self.pairs):
            raise ValueError("pairs must be ordered a < b")

    @property
    def ground_size(self) -> int:
        return 2 * len(self.pairs) + len(self.singleton_block)


def double_factorial(j: int) -> int:
    """j!! with the conventions (-1)!! = 0!! = 1; exact integers up to j = 33."""
    if j < -1:
        raise ValueError(f"double factorial needs j >= -1, got {j}")
    if j > DOUBLE_FACTORIAL_MAX:
        raise GuardError(
            f"double factorial guard is j <= {DOUBLE_FACTORIAL_MAX}, got {j}"
        )
    result = 1
    while j > 1:
        result *= j
        j -= 2
    return result


def _matchings(elements: tuple[int, ...]):
    """Yield all perfect matchings of a sorted tuple, smallest element first,
    partners ascending."""
    if not elements:
        yield ()
        return
    first, rest = elements[0], elements[1:]
    for i, partner in enumerate(rest):
        remaining = rest[:i] + rest[i + 1 :]
        for tail in _matchings(remaining):
            yield ((first, partner),) + tail


def two_partitions(k: int) -> list[TwoPartition]:
    """All perfect matchings of {0..k-1}; there are (k-1)!! of them."""
    if k < 2 or k % 2:
        raise ValueError(f"need a positive even k, got {k}")
    if k > TWO_PARTITION_MAX_K:
        raise GuardError(
            f"matching enumeration guard is k <= {TWO_PARTITION_MAX_K}, got {k}"
        )
    return [TwoPartition(m) for m in _matchings(tuple(range(k)))]


def s2_partitions(k: int, s: int) -> list[S2Partition]:
    """All ways to choose s disjoint pairs inside {0..k-1}, the rest forming
    the singleton block W; count = C(k, 2s) * (2s-1)!!."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if s < 0 or 2 * s > k:
        raise ValueError(f"need 0 <= 2s <= k, got s = {s}, k = {k}")
    count = comb(k, 2 * s) * double_factorial(2 * s - 1)
    if count > ENUMERATION_GUARD:
        raise GuardError(
            f"{count} partitions exceed the enumeration guard of {ENUMERATION_GUARD}"
        )
    out = []
    for w in combinations(range(k), k - 2 * s):
        w_set = set(w)
        paired = tuple(e for e in range(k) if e not in w_set)
        for m in _matchings(paired):
            out.append(S2Partition(pairs=m, singleton_block=w))
    return out


def mode_subsets(n: int, s: int) -> list[tuple[int, ...]]:
    """All strictly increasing s-subsets of {0..n-1} in lexicographic order;
    s = 0 yields the single empty subset."""
    if s < 0 or s > n:
        raise ValueError(f"need 0 <= s <= n, got s = {s}, n = {n}")
    return list(combinations(range(n), s))
