"""Saddle-point quantities and local limit formulas, evaluated numerically.

The count of sequences with a given peak is approximated by the
quadratic saddle-point formula e^(f(0)) / sqrt(2 pi f''(0)), where f
collects the conditioned generating function's log terms.  Everything
is kept on the log scale: e^(f(0)) overflows doubles from n ~ 1000.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import A, B


@dataclass(frozen=True)
class SaddleData:
    """f(0), f'(0), f''(0) for the peak-m count at size n."""

    f0: float
    f1: float
    f2: float
    n: int
    m: int
    strict: bool


def saddle_terms(n: int, m: int, strict: bool = False) -> SaddleData:
    """Finite sums over parts k = 1..m at the real saddle point.

    Ordinary model (scale B), peak m:
      f(0)  = (n-m)/(B sqrt n) - 2 sum log(1 - e^(-k/(B sqrt n)))
      f'(0) = m - n + 2 sum k / (e^(k/(B sqrt n)) - 1)
      f''(0)= 2 sum k^2 e^(-k/(B sqrt n)) / (1 - e^(-k/(B sqrt n)))^2
    Strict model (scale A), peak m + 1: signs flip to the 1 + e^(-k/..)
    analogues and the linear terms use m + 1.
    """
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    c = A if strict else B
    s = c * math.sqrt(n)
    k = np.arange(1, m + 1, dtype=np.float64)
    ek = np.exp(-k / s)
    if strict:
        f0 = (n - m - 1) / s + 2.0 * math.fsum(np.log1p(ek))
        f1 = (m + 1 - n) + 2.0 * math.fsum(k * ek / (1.0 + ek))
        f2 = 2.0 * math.fsum(k * k * ek / (1.0 + ek) ** 2)
    else:
        f0 = (n - m) / s - 2.0 * math.fsum(np.log1p(-ek))
        f1 = (m - n) + 2.0 * math.fsum(k * ek / (1.0 - ek))
        f2 = 2.0 * math.fsum(k * k * ek / (1.0 - ek) ** 2)
    return SaddleData(f0=f0, f1=f1, f2=f2, n=n, m=m, strict=strict)


def u_m_saddle(n: int, m: int, strict: bool = False) -> float:
    """log of the saddle-point approximation to the peak-m count.

    ``m`` is the conditioning index: peak m (ordinary) or m + 1 (strict).
    """
    sd = saddle_terms(n, m, strict)
    return sd.f0 - 0.5 * math.log(2.0 * math.pi * sd.f2)


def local_pk_probability(n: int, x: float, strict: bool = False) -> float:
    """Local limit for the peak law: e^(-x - e^(-x)) / (c sqrt n)."""
    c = A if strict else B
    return math.exp(-x - math.exp(-x)) / (c * math.sqrt(n))


def acceptance_rate_prediction(n: int, strict: bool = False) -> float:
    """Predicted exact-size acceptance: 1 / (2 root^(1/4) n^(3/4)).

    root is 3 for the ordinary model and 6 for the strict one.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    root = 6.0 if strict else 3.0
    return 1.0 / (2.0 * root**0.25 * n**0.75)


def large_parts_product_check(n: int, v: float, tail_tol: float = 1e-14):
    """Evaluate prod_{k > A sqrt(n) (v + log(A sqrt n))} 1/(1 + e^(-k/(A sqrt n))).

    Returns (lhs, rhs) with rhs = e^(-e^(-v)); valid for v >= -log(n)/8.
    """
    if v < -math.log(n) / 8.0:
        raise ValueError("v below the validity range -log(n)/8")
    s = A * math.sqrt(n)
    k0 = math.floor(s * (v + math.log(s)))
    # terms with e^(-k/s) < tail_tol contribute nothing at double precision
    k1 = int(math.ceil(-s * math.log(tail_tol)))
    k = np.arange(k0 + 1, max(k1, k0 + 1) + 1, dtype=np.float64)
    log_lhs = -math.fsum(np.log1p(np.exp(-k / s)))
    return math.exp(log_lhs), math.exp(-math.exp(-v))


def global_count_asymptotics(n: int, strict: bool = False) -> float:
    """log of the leading asymptotic for the total count of size n.

    Ordinary: e^(2 pi sqrt(n/3)) / (8 * 3^(3/4) * n^(5/4));
    strict:   e^(pi sqrt(2n/3)) / (8 * 6^(1/4) * n^(3/4)).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if strict:
        return math.pi * math.sqrt(2.0 * n / 3.0) - math.log(
            8.0 * 6.0**0.25 * n**0.75
        )
    return 2.0 * math.pi * math.sqrt(n / 3.0) - math.log(8.0 * 3.0**0.75 * n**1.25)


def peak_mean_prediction(n: int, strict: bool = False) -> float:
    """Leading mean of the peak: c sqrt(n) (log(2 c sqrt n) + gamma)."""
    from .constants import EULER_GAMMA

    c = A if strict else B
    s = c * math.sqrt(n)
    return s * (math.log(2.0 * s) + EULER_GAMMA)
