"""Exact counting and exhaustive enumeration of unimodal sequences.

Everything here is a ground-truth oracle: brute-force enumeration for
small sizes, and O(n^2) big-integer dynamic programming for the peak
count tables u_m(n) (pairs of bounded-part partitions) used by the
local-limit and saddle-point comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

# Hard guards: the oracle is never partial.
ENUM_MAX_N = 22
ENUM_MAX_N_STRICT = 30
TABLE_MAX_N = 3000
KEY_MAX_N = 15


@dataclass(frozen=True)
class UnimodalSequence:
    """Left run (nondecreasing), peak, right run (nonincreasing).

    The peak is a designated position: [1|1] with the peak on either
    side gives two distinct sequences of size 2.  In the strict variant
    both runs are strictly monotone and strictly below the peak.
    """

    left: tuple = ()
    peak: int = 1
    right: tuple = ()
    strict: bool = False

    def __post_init__(self):
        if self.peak < 1:
            raise ValueError("peak must be a positive integer")
        for run in (self.left, self.right):
            if any(p < 1 for p in run):
                raise ValueError("parts must be positive integers")
        if self.strict:
            if any(a >= b for a, b in zip(self.left, self.left[1:])):
                raise ValueError("left run must be strictly increasing")
            if any(a <= b for a, b in zip(self.right, self.right[1:])):
                raise ValueError("right run must be strictly decreasing")
            if (self.left and self.left[-1] >= self.peak) or (
                self.right and self.right[0] >= self.peak
            ):
                raise ValueError("runs must stay strictly below the peak")
        else:
            if any(a > b for a, b in zip(self.left, self.left[1:])):
                raise ValueError("left run must be nondecreasing")
            if any(a < b for a, b in zip(self.right, self.right[1:])):
                raise ValueError("right run must be nonincreasing")
            if (self.left and self.left[-1] > self.peak) or (
                self.right and self.right[0] > self.peak
            ):
                raise ValueError("runs must not exceed the peak")

    @property
    def size(self) -> int:
        return self.peak + sum(self.left) + sum(self.right)

    def swap(self) -> "UnimodalSequence":
        """Mirror image: exchange the two runs (an involution)."""
        return UnimodalSequence(
            left=tuple(reversed(self.right)),
            peak=self.peak,
            right=tuple(reversed(self.left)),
            strict=self.strict,
        )

    def parts(self) -> tuple:
        return self.left + (self.peak,) + self.right

    def encode(self) -> str:
        """Text form ``l1 l2 ...|peak|r1 r2 ...``."""
        return "{}|{}|{}".format(
            " ".join(map(str, self.left)), self.peak, " ".join(map(str, self.right))
        )


def sequence_key(seq: UnimodalSequence) -> int:
    """Pack a small sequence into one int64 (4-bit parts, 0 separators).

    Used to compare sampler output against enumeration; requires size
    <= 15 so every nibble fits.
    """
    if seq.size > KEY_MAX_N:
        raise ValueError(f"sequence_key requires size <= {KEY_MAX_N}")
    key = 0
    pos = 0
    for v in seq.left:
        key |= v << (4 * pos)
        pos += 1
    pos += 1  # separator nibble 0
    key |= seq.peak << (4 * pos)
    pos += 2  # peak + separator
    for v in seq.right:
        key |= v << (4 * pos)
        pos += 1
    return key


@lru_cache(maxsize=None)
def _bounded_partitions(total: int, max_part: int, distinct: bool) -> tuple:
    """All partitions of ``total`` with parts <= max_part, nonincreasing."""
    if total == 0:
        return ((),)
    out = []
    for first in range(min(total, max_part), 0, -1):
        cap = first - 1 if distinct else first
        for rest in _bounded_partitions(total - first, cap, distinct):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_all(n: int, strict: bool = False) -> list:
    """The complete, duplicate-free list of sequences of size n."""
    limit = ENUM_MAX_N_STRICT if strict else ENUM_MAX_N
    if not 1 <= n <= limit:
        raise ValueError(
            f"enumeration guard: n must be in [1, {limit}] for strict={strict}"
        )
    out = []
    for peak in range(1, n + 1):
        rem = n - peak
        cap = peak - 1 if strict else peak
        for left_total in range(rem + 1):
            lefts = _bounded_partitions(left_total, cap, strict)
            rights = _bounded_partitions(rem - left_total, cap, strict)
            for lp in lefts:
                left = tuple(reversed(lp))
                for rp in rights:
                    out.append(
                        UnimodalSequence(left=left, peak=peak, right=rp, strict=strict)
                    )
    return out


@lru_cache(maxsize=None)
def _bounded_count_row(max_part: int, up_to: int, distinct: bool) -> tuple:
    """Counts of partitions with parts <= max_part, sizes 0..up_to."""
    c = [1] + [0] * up_to
    for m in range(1, max_part + 1):
        if distinct:
            for j in range(up_to, m - 1, -1):
                c[j] += c[j - m]
        else:
            for j in range(m, up_to + 1):
                c[j] += c[j - m]
    return tuple(c)


def count_p(n: int) -> int:
    """p(n), the number of partitions of n; p(0) = 1."""
    if n < 0:
        return 0
    return _bounded_count_row(n, n, False)[n]


def count_u_m(n: int, m: int) -> int:
    """u_m(n): sequences of size n with peak m.

    Equals the number of pairs of partitions with parts <= m and total
    size n - m.  Out-of-range (m < 1 or m > n) counts are 0.
    """
    if m < 1 or m > n:
        return 0
    rem = n - m
    row = _bounded_count_row(min(m, rem), rem, False)
    return sum(row[i] * row[rem - i] for i in range(rem + 1))


def count_ustar_m(n: int, m: int) -> int:
    """u*_m(n): strict sequences of size n with peak m + 1.

    Pairs of distinct-part partitions with parts <= m totalling
    n - m - 1; 0 out of range.
    """
    if m < 0 or m > n - 1:
        return 0
    rem = n - m - 1
    row = _bounded_count_row(min(m, rem), rem, True)
    return sum(row[i] * row[rem - i] for i in range(rem + 1))


def count_table_u_m(n: int) -> list:
    """[u_1(n), ..., u_n(n)] built incrementally in m (O(n^2) total)."""
    if not 1 <= n <= TABLE_MAX_N:
        raise ValueError(f"table guard: n must be in [1, {TABLE_MAX_N}]")
    t = [1] + [0] * (n - 1)  # 1/(q)_m^2 coefficients 0..n-1
    out = []
    for m in range(1, n + 1):
        for j in range(m, n):
            t[j] += t[j - m]
        for j in range(m, n):
            t[j] += t[j - m]
        out.append(t[n - m])
    return out


def count_table_ustar_m(n: int) -> list:
    """[u*_0(n), ..., u*_{n-1}(n)], peaks 1..n, incrementally in m."""
    if not 1 <= n <= TABLE_MAX_N:
        raise ValueError(f"table guard: n must be in [1, {TABLE_MAX_N}]")
    t = [1] + [0] * (n - 1)  # (-q)_m^2 coefficients 0..n-1
    out = []
    for m in range(0, n):
        out.append(t[n - m - 1])
        for j in range(n - 1, m, -1):
            t[j] += t[j - m - 1]
        for j in range(n - 1, m, -1):
            t[j] += t[j - m - 1]
    return out


def count_u(n: int) -> int:
    """u(n) as the sum of the peak table (u(0) = 1)."""
    if n == 0:
        return 1
    return sum(count_table_u_m(n))


def count_ustar(n: int) -> int:
    """u*(n) as the sum of the strict peak table (u*(0) = 1)."""
    if n == 0:
        return 1
    return sum(count_table_ustar_m(n))
