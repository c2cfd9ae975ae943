"""Exact truncated power series over Python integers.

Houses the generating functions of the lab: partitions P(q), unimodal
sequences U(q), strongly unimodal sequences U*(q), the largest-part
moment series MP_k(q) and MU_k(q), the Lambert-type sums S_{k,n}(q),
and complete Bell polynomials.  All arithmetic is exact; coefficients
beyond the truncation order are discarded, never rounded.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence, Union


class TruncatedSeries:
    """A power series q^0..q^order with exact integer coefficients.

    Instances are immutable; arithmetic returns new series truncated to
    the smaller operand order.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        c = tuple(int(x) for x in coeffs)
        if not c:
            raise ValueError("series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, *args):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, value: int, order: int) -> "TruncatedSeries":
        return cls([int(value)] + [0] * order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.constant(1, order)

    def __getitem__(self, exponent: int) -> int:
        return self.coeffs[exponent]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self
        return TruncatedSeries(self.coeffs[: order + 1])

    def __add__(self, other):
        if isinstance(other, int):
            other = TruncatedSeries.constant(other, self.order)
        n = min(self.order, other.order)
        return TruncatedSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)]
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncatedSeries)
                       else TruncatedSeries.constant(-other, self.order))

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedSeries([other * c for c in self.coeffs])
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [0] * (n + 1)
        for i, ai in enumerate(a):
            if ai == 0 or i > n:
                continue
            for j in range(min(n - i, other.order) + 1):
                out[i + j] += ai * b[j]
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def shift(self, exponent: int) -> "TruncatedSeries":
        """Multiply by q^exponent, truncating at the same order."""
        if exponent == 0:
            return self
        n = self.order
        if exponent > n:
            return TruncatedSeries.constant(0, n)
        return TruncatedSeries(
            [0] * exponent + list(self.coeffs[: n + 1 - exponent])
        )

    def invert_unit(self) -> "TruncatedSeries":
        """Exact inverse, requires constant coefficient +-1."""
        a0 = self.coeffs[0]
        if a0 not in (1, -1):
            raise ValueError(
                f"constant coefficient must be +-1 for an integer inverse, got {a0}"
            )
        n = self.order
        out = [0] * (n + 1)
        out[0] = a0  # 1/a0 == a0 for a0 = +-1
        for j in range(1, n + 1):
            s = 0
            for i in range(1, min(j, self.order) + 1):
                s += self.coeffs[i] * out[j - i]
            out[j] = -a0 * s
        return TruncatedSeries(out)

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.order > 7 else ""
        return f"TruncatedSeries([{head}{tail}], order={self.order})"


SeriesOrScalar = Union[TruncatedSeries, int]


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Exact Cauchy product truncated to the smaller order."""
    return a * b


def invert_unit(a: TruncatedSeries) -> TruncatedSeries:
    return a.invert_unit()


# In-place list helpers; dividing by (1-q^m) is a prefix-sum with stride
# m, multiplying is the reverse pass.

def _div_one_minus(c: list, m: int):
    for j in range(m, len(c)):
        c[j] += c[j - m]


def _mul_one_minus(c: list, m: int):
    for j in range(len(c) - 1, m - 1, -1):
        c[j] -= c[j - m]


def _mul_one_plus(c: list, m: int):
    for j in range(len(c) - 1, m - 1, -1):
        c[j] += c[j - m]


def pochhammer(m, order: int) -> TruncatedSeries:
    """(q; q)_m = prod_{j=1..m} (1 - q^j), truncated.

    ``m=None`` (or ``math.inf``) gives the infinite product; factors with
    j > order do not contribute.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    infinite = m is None or m == math.inf
    if not infinite and m < 0:
        raise ValueError("m must be >= 0 or infinite")
    stop = order if infinite else min(int(m), order)
    c = [1] + [0] * order
    for j in range(1, stop + 1):
        _mul_one_minus(c, j)
    return TruncatedSeries(c)


def partition_series(order: int) -> TruncatedSeries:
    """P(q) = prod 1/(1-q^n): coefficients p(0..order), p(0) = 1."""
    c = [1] + [0] * order
    for m in range(1, order + 1):
        _div_one_minus(c, m)
    return TruncatedSeries(c)


def unimodal_series(order: int) -> TruncatedSeries:
    """U(q) = 1 + sum_{m>=1} q^m / (q)_m^2: coefficients u(0..order)."""
    return mu_series_direct(0, order)


def strongly_unimodal_series(order: int) -> TruncatedSeries:
    """U*(q): coefficients u*(0..order), all run inequalities strict.

    Summand for peak m+1 is (-q)_m^2 q^(m+1); the empty sequence
    contributes u*(0) = 1.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    out = [0] * (order + 1)
    out[0] = 1
    t = [1] + [0] * order  # (-q)_m^2 incrementally in m
    for m in range(0, order):
        peak = m + 1
        for j in range(peak, order + 1):
            out[j] += t[j - peak]
        _mul_one_plus(t, m + 1)
        _mul_one_plus(t, m + 1)
    return TruncatedSeries(out)


def s_series(k: int, n: int, order: int) -> TruncatedSeries:
    """S_{k,n}(q) = sum_{m>=1} m^k q^(nm) / (1 - q^m), truncated.

    k = -1 is excluded: its exponential is the inverse Pochhammer
    1/(q^(n+1))_inf, which callers obtain from ``pochhammer`` instead.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if k < 0:
        raise ValueError("k must be >= 0 (the k = -1 sum has no integer series)")
    out = [0] * (order + 1)
    m = 1
    while n * m <= order:
        w = m**k
        for e in range(n * m, order + 1, m):
            out[e] += w
        m += 1
    return TruncatedSeries(out)


def bell_complete(a: Sequence[SeriesOrScalar]) -> SeriesOrScalar:
    """Complete Bell polynomial B_k(a_1, ..., a_k), k = len(a).

    Computed by the recurrence B_k = sum_j C(k-1, j) B_j a_{k-j},
    B_0 = 1; works for integer and series arguments alike.
    """
    bks: list = [1]
    for kk in range(1, len(a) + 1):
        term = None
        for j in range(kk):
            piece = math.comb(kk - 1, j) * (bks[j] * a[kk - j - 1])
            term = piece if term is None else term + piece
        bks.append(term)
    return bks[-1]


def mu_series_direct(k: int, order: int) -> TruncatedSeries:
    """MU_k(q) = sum_{m>=0} m^k q^m / (q)_m^2 with 0^0 = 1."""
    if order < 0:
        raise ValueError("order must be >= 0")
    out = [0] * (order + 1)
    if k == 0:
        out[0] = 1  # empty sequence, m = 0
    t = [1] + [0] * order  # 1/(q)_m^2 incrementally in m
    for m in range(1, order + 1):
        _div_one_minus(t, m)
        _div_one_minus(t, m)
        w = m**k
        for j in range(m, order + 1):
            out[j] += w * t[j - m]
    return TruncatedSeries(out)


def mu_series_bell(k: int, order: int) -> TruncatedSeries:
    """MU_k(q) via the Bell-polynomial identity.

    MU_k = (q)_inf^(-2) * sum_{n>=0} (-1)^n q^(n(n+1)/2) B_k(S_{0,n+1},
    ..., S_{k-1,n+1}); the outer sum stops once n(n+1)/2 > order.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    acc = TruncatedSeries.constant(0, order)
    n = 0
    while n * (n + 1) // 2 <= order:
        tri = n * (n + 1) // 2
        args = [s_series(j, n + 1, order) for j in range(k)]
        bk = bell_complete(args)
        if isinstance(bk, int):
            bk = TruncatedSeries.constant(bk, order)
        term = bk.shift(tri)
        acc = acc + term if n % 2 == 0 else acc - term
        n += 1
    inv = pochhammer(None, order).invert_unit()
    return inv * inv * acc


def mp_series_direct(k: int, order: int) -> TruncatedSeries:
    """MP_k(q) = sum_{m>=0} m^k q^m / (q)_m with 0^0 = 1."""
    if order < 0:
        raise ValueError("order must be >= 0")
    out = [0] * (order + 1)
    if k == 0:
        out[0] = 1
    t = [1] + [0] * order  # 1/(q)_m incrementally in m
    for m in range(1, order + 1):
        _div_one_minus(t, m)
        w = m**k
        for j in range(m, order + 1):
            out[j] += w * t[j - m]
    return TruncatedSeries(out)


def mp_series_recursive(k: int, order: int) -> TruncatedSeries:
    """MP_k via MP_k = sum_{j<k} C(k-1, j) MP_j S_{k-1-j}, MP_0 = P(q)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    mps = [partition_series(order)]
    for i in range(1, k + 1):
        acc = TruncatedSeries.constant(0, order)
        for j in range(i):
            acc = acc + math.comb(i - 1, j) * (mps[j] * s_series(i - 1 - j, 1, order))
        mps.append(acc)
    return mps[k]
