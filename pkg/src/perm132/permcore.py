"""Permutations, increasing-pattern occurrence counts and exhaustive enumeration.

Everything here is brute force on purpose: these routines are the ground
truth that the generating-function code in the rest of the package is
checked against.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Dict, Iterator, Optional, Sequence, Tuple

__all__ = [
    "MAX_ENUM_N",
    "MAX_SCAN_N",
    "CapacityError",
    "Permutation",
    "OccurrenceProfile",
    "count_occurrences",
    "count_occurrences_naive",
    "occurrence_profile",
    "avoids_132",
    "count_132_occurrences",
    "count_132_occurrences_naive",
    "split_at_max",
    "enumerate_132_avoiding",
    "brute_table",
    "exactly_one_132",
    "brute_one132_table",
    "combine_profiles",
    "decomposition_table",
    "catalan",
]

#: Largest length accepted by :func:`enumerate_132_avoiding` (Catalan(14) = 2674440).
MAX_ENUM_N = 14
#: Largest length accepted by :func:`brute_one132_table`, which walks all of S_n.
MAX_SCAN_N = 10


class CapacityError(ValueError):
    """Requested size is beyond what an exhaustive routine is allowed to scan."""


class Permutation(tuple):
    """A permutation in one-line notation, i.e. a word using each of 1..n once.

    >>> Permutation((2, 3, 1))
    Permutation(2, 3, 1)
    """

    __slots__ = ()

    def __new__(cls, values: Sequence[int] = ()):
        values = tuple(values)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise ValueError(f"{values!r} is not a permutation of 1..{len(values)}")
        return super().__new__(cls, values)

    @classmethod
    def _trusted(cls, values: Tuple[int, ...]) -> "Permutation":
        return tuple.__new__(cls, values)

    @property
    def n(self) -> int:
        return len(self)

    def __repr__(self) -> str:
        return f"Permutation{tuple(self)!r}"


@dataclass(frozen=True)
class OccurrenceProfile:
    """The vector (eta_1, ..., eta_k) of increasing-pattern occurrence counts.

    ``eta0`` is the count of the empty pattern, which is 1 by convention.
    """

    k: int
    counts: Tuple[int, ...]
    eta0: int = 1

    def __post_init__(self):
        if self.k < 1 or len(self.counts) != self.k:
            raise ValueError("profile needs exactly k >= 1 counts")
        if self.eta0 != 1:
            raise ValueError("eta0 is always 1")

    def eta(self, j: int) -> int:
        if j == 0:
            return self.eta0
        return self.counts[j - 1]


def count_occurrences(pi: Sequence[int], j: int) -> int:
    """Number of strictly increasing subsequences of length ``j`` in ``pi``.

    ``ends[i][m]`` is the number of increasing subsequences of length m+1
    ending at position i; the whole table costs O(n^2 j).
    """
    if j < 0:
        raise ValueError("pattern length must be non-negative")
    if j == 0:
        return 1
    n = len(pi)
    if j > n:
        return 0
    ends = []
    for i in range(n):
        row = [1] + [0] * (j - 1)
        v = pi[i]
        for p in range(i):
            if pi[p] < v:
                prev = ends[p]
                for m in range(1, j):
                    row[m] += prev[m - 1]
        ends.append(row)
    return sum(row[j - 1] for row in ends)


def count_occurrences_naive(pi: Sequence[int], j: int) -> int:
    """Subset scan over all C(n, j) index sets. Test oracle only."""
    return sum(
        1
        for idx in combinations(range(len(pi)), j)
        if all(pi[idx[t]] < pi[idx[t + 1]] for t in range(j - 1))
    )


def occurrence_profile(pi: Sequence[int], k: int) -> OccurrenceProfile:
    return OccurrenceProfile(k, tuple(count_occurrences(pi, j) for j in range(1, k + 1)))


def count_132_occurrences(pi: Sequence[int], stop_above: Optional[int] = None) -> int:
    """Number of index triples i < j < l with pi_i < pi_l < pi_j.

    For each middle position j, count the pairs (i, l) on either side with
    pi_i < pi_l < pi_j.  With ``stop_above`` set, returns as soon as the
    running total exceeds it (the result is then only a lower bound).
    """
    n = len(pi)
    total = 0
    for j in range(1, n - 1):
        top = pi[j]
        left = [pi[i] for i in range(j) if pi[i] < top]
        if not left:
            continue
        for l in range(j + 1, n):
            v = pi[l]
            if v < top:
                for a in left:
                    if a < v:
                        total += 1
                if stop_above is not None and total > stop_above:
                    return total
    return total


def count_132_occurrences_naive(pi: Sequence[int]) -> int:
    """O(n^3) triple scan. Test oracle only."""
    return sum(1 for i, j, l in combinations(range(len(pi)), 3) if pi[i] < pi[l] < pi[j])


def avoids_132(pi: Sequence[int]) -> bool:
    """True iff ``pi`` has no triple i < j < l with pi_i < pi_l < pi_j.

    Single left-to-right pass: a letter v completes a 132 iff some earlier
    ascent a < b has a < v < b.  We track, for each prefix, the running
    minimum and reject as soon as v falls strictly inside an interval
    (min before b, b).
    """
    lo = None
    intervals = []
    for v in pi:
        for a, b in intervals:
            if a < v < b:
                return False
        if lo is not None and lo < v:
            intervals.append((lo, v))
        lo = v if lo is None or v < lo else lo
    return True


def split_at_max(pi: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Split ``pi = (left, n, right)`` around its largest letter."""
    pi = tuple(pi)
    if not pi:
        raise ValueError("empty permutation has no maximum")
    pos = pi.index(len(pi))
    return pi[:pos], pi[pos + 1:]


def _avoiders(n: int, low: int) -> Iterator[Tuple[int, ...]]:
    # 132-avoiders of length n on the values low+1 .. low+n.
    if n == 0:
        yield ()
        return
    top = low + n
    for l in range(1, n + 1):
        # left part takes the l-1 values just below top, right part the n-l smallest
        for left in _avoiders(l - 1, low + n - l):
            for right in _avoiders(n - l, low):
                yield left + (top,) + right


def enumerate_132_avoiding(n: int) -> Iterator[Permutation]:
    """Yield every 132-avoiding permutation of length ``n`` exactly once.

    Generated from the decomposition (left, n, right) with the maximum at
    position l = 1..n, left before right, so the order is deterministic.
    """
    if n < 0:
        raise ValueError("length must be non-negative")
    if n > MAX_ENUM_N:
        raise CapacityError(f"enumeration is limited to n <= {MAX_ENUM_N} (got {n})")
    for values in _avoiders(n, 0):
        yield Permutation._trusted(values)


def brute_table(n: int, k: int) -> Dict[int, int]:
    """Map r -> f_n^r(k) by enumerating all 132-avoiders of length ``n``."""
    if k < 1:
        raise ValueError("pattern length k must be >= 1")
    table: Counter = Counter(count_occurrences(pi, k) for pi in enumerate_132_avoiding(n))
    return dict(sorted(table.items()))


@lru_cache(maxsize=None)
def exactly_one_132(n: int) -> Tuple[Tuple[int, ...], ...]:
    """All permutations of length ``n`` with exactly one 132 occurrence (cached)."""
    if n < 0:
        raise ValueError("length must be non-negative")
    if n > MAX_SCAN_N:
        raise CapacityError(f"full S_n scan is limited to n <= {MAX_SCAN_N} (got {n})")
    return tuple(
        pi for pi in permutations(range(1, n + 1)) if count_132_occurrences(pi, stop_above=1) == 1
    )


def brute_one132_table(n: int, k: int) -> Dict[int, int]:
    """Map r -> phi_n^r(k), scanning all n! permutations for exactly one 132."""
    if k < 1:
        raise ValueError("pattern length k must be >= 1")
    table: Counter = Counter(count_occurrences(pi, k) for pi in exactly_one_132(n))
    return dict(sorted(table.items()))


def combine_profiles(left: Tuple[int, ...], right: Tuple[int, ...]) -> Tuple[int, ...]:
    """Profile of (left, n, right) from the profiles of its two halves.

    Profiles here carry eta_0 .. eta_k.  An increasing run either lies in
    the left part, in the right part, or ends at the maximum, in which case
    its first j-1 letters form an increasing run of the left part.
    """
    out = [1]
    for j in range(1, len(left)):
        out.append(left[j] + right[j] + left[j - 1])
    return tuple(out)


def decomposition_table(n: int, k: int) -> Dict[int, int]:
    """Map r -> f_n^r(k) via the max-split recurrence on occurrence profiles.

    Never builds a permutation: the multiset of profiles for each length is
    assembled from the multisets for shorter lengths.  Independent of
    :func:`count_occurrences`, so it cross-checks the enumeration route.
    """
    if k < 1:
        raise ValueError("pattern length k must be >= 1")
    if n < 0:
        raise ValueError("length must be non-negative")
    empty = (1,) + (0,) * k
    by_len = [Counter({empty: 1})]
    for m in range(1, n + 1):
        acc: Counter = Counter()
        for l in range(1, m + 1):
            for lp, lc in by_len[l - 1].items():
                for rp, rc in by_len[m - l].items():
                    acc[combine_profiles(lp, rp)] += lc * rc
        by_len.append(acc)
    table: Counter = Counter()
    for prof, c in by_len[n].items():
        table[prof[k]] += c
    return dict(sorted(table.items()))


def catalan(n: int) -> int:
    """Catalan number via C_{m+1} = sum_i C_i C_{m-i}."""
    c = [1]
    for m in range(n):
        c.append(sum(c[i] * c[m - i] for i in range(m + 1)))
    return c[n]
