"""Closed-form reference distributions the experiments are tested against.

One-dimensional laws expose CDFs (and densities where useful); the
joint large-part law exposes its density together with a numeric
box-probability helper built on nested quadrature over the ordered
cone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from scipy.integrate import quad


@dataclass(frozen=True)
class LimitLaw:
    """A fixed reference law: kind tag, CDF, optional density."""

    kind: str
    cdf: Callable[[float], float]
    density: Optional[Callable[[float], float]] = None
    params: dict = field(default_factory=dict)


def gumbel_cdf(v: float) -> float:
    """Extreme-value law e^(-e^(-v))."""
    return math.exp(-math.exp(-v))


def gumbel_density(v: float) -> float:
    return math.exp(-v - math.exp(-v))


def logistic_cdf(x: float) -> float:
    """1 / (1 + e^(-x)); the law of a difference of two Gumbels."""
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def logistic_density(x: float) -> float:
    e = math.exp(-abs(x))
    return e / (1.0 + e) ** 2


def laplace_mixture_cdf(v: float) -> float:
    """(1 - e^(-v)/2) for v >= 0, e^(v)/2 for v < 0.

    The law of the difference of two independent unit exponentials.
    """
    if v >= 0:
        return 1.0 - 0.5 * math.exp(-v)
    return 0.5 * math.exp(v)


def laplace_mixture_density(v: float) -> float:
    return 0.5 * math.exp(-abs(v))


def exp1_cdf(v: float) -> float:
    """Unit exponential, the marginal of the small-part limit."""
    return 1.0 - math.exp(-v) if v >= 0 else 0.0


def exp1_density(v: float) -> float:
    return math.exp(-v) if v >= 0 else 0.0


def double_gumbel_cdf(v_l: float, v_r: float) -> float:
    """Product law e^(-e^(-vL) - e^(-vR)) of two independent Gumbels."""
    return math.exp(-math.exp(-v_l) - math.exp(-v_r))


def exp_order_sum_cdf(x: float, n: int) -> float:
    """(1 - e^(-x))^n: sum of independent exponentials with means 1..1/n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if x < 0:
        return 0.0
    return (1.0 - math.exp(-x)) ** n


def joint_large_parts_density(u0: float, u_left: Sequence[float],
                              u_right: Sequence[float]) -> float:
    """Joint density of the normalised peak and top parts of both runs.

    2^(-2t) * exp(-u0 - sum(uL + uR) - e^(-uL[t-1])/2 - e^(-uR[t-1])/2)
    on the cone u0 >= uL[0] >= ... and u0 >= uR[0] >= ...; 0 elsewhere.
    """
    if len(u_left) != len(u_right) or not u_left:
        raise ValueError("u_left and u_right must be nonempty, equal length")
    t = len(u_left)
    for chain in (u_left, u_right):
        prev = u0
        for u in chain:
            if u > prev:
                return 0.0
            prev = u
    expo = (
        -u0
        - sum(u_left)
        - sum(u_right)
        - 0.5 * math.exp(-u_left[-1])
        - 0.5 * math.exp(-u_right[-1])
    )
    return 0.25**t * math.exp(expo)


def _side_chain_integral(cap: float, bounds: Sequence[float], lo: float) -> float:
    """Integral of e^(-u1-...-ut) e^(-e^(-ut)/2) over the chain
    cap >= u1 >= ... >= ut with u_i <= bounds[i], each u_i >= lo."""
    top = min(cap, bounds[0])
    if top <= lo:
        return 0.0
    if len(bounds) == 1:
        # closed form: int_{-inf}^{top} e^(-u - e^(-u)/2) du = 2 e^(-e^(-top)/2)
        return 2.0 * (math.exp(-0.5 * math.exp(-top)) - math.exp(-0.5 * math.exp(-lo)))
    val, _ = quad(
        lambda u: math.exp(-u) * _side_chain_integral(u, bounds[1:], lo),
        lo,
        top,
        limit=200,
    )
    return val


def large_parts_box_probability(v0: float, v_left: Sequence[float],
                                v_right: Sequence[float], lo: float = -12.0,
                                hi: float = 40.0) -> float:
    """P(peak <= v0, Y_t^L <= vL[t], Y_t^R <= vR[t]) under the joint law.

    Numeric: outer quadrature in the peak coordinate, nested chain
    integrals per side.  ``lo``/``hi`` clip the effectively-zero tails.
    """
    if len(v_left) != len(v_right) or not v_left:
        raise ValueError("v_left and v_right must be nonempty, equal length")
    t = len(v_left)

    def integrand(u0):
        left = _side_chain_integral(u0, v_left, lo)
        right = _side_chain_integral(u0, v_right, lo)
        return math.exp(-u0) * left * right

    val, _ = quad(integrand, lo, min(v0, hi), limit=200)
    return 0.25**t * val


def partition_top_parts_density(u: Sequence[float]) -> float:
    """Joint density of the top parts of a random partition.

    e^(-u1 - ... - ut - e^(-ut)) on the cone u1 >= ... >= ut.  The
    trailing term uses the last coordinate; with t = 1 this is the
    Gumbel density and the density integrates to 1.
    """
    if not u:
        raise ValueError("u must be nonempty")
    prev = math.inf
    for x in u:
        if x > prev:
            return 0.0
        prev = x
    return math.exp(-sum(u) - math.exp(-u[-1]))


def gumbel_law() -> LimitLaw:
    return LimitLaw("gumbel", gumbel_cdf, gumbel_density)


def logistic_law() -> LimitLaw:
    return LimitLaw("logistic", logistic_cdf, logistic_density)


def laplace_mixture_law() -> LimitLaw:
    return LimitLaw("laplace-mixture", laplace_mixture_cdf, laplace_mixture_density)


def exp1_law() -> LimitLaw:
    return LimitLaw("exponential-product", exp1_cdf, exp1_density)


def exp_order_sum_law(n: int) -> LimitLaw:
    return LimitLaw(
        "exp-order-sum", lambda x: exp_order_sum_cdf(x, n), params={"n": n}
    )


def gumbel_difference_cdf_quadrature(x: float) -> float:
    """P(G1 - G2 <= x) for independent Gumbels, by quadrature.

    Supports the identification of the rank limit with the logistic law.
    """
    val, _ = quad(
        lambda t: gumbel_density(t) * gumbel_cdf(x + t), -12.0, 40.0, limit=200
    )
    return val
