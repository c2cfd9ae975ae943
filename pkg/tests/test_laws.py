import math

import numpy as np
import pytest
from scipy.integrate import quad

from uniseq.laws import (
    double_gumbel_cdf,
    exp1_cdf,
    exp_order_sum_cdf,
    partition_top_parts_density,
    gumbel_cdf,
    gumbel_density,
    gumbel_difference_cdf_quadrature,
    joint_large_parts_density,
    laplace_mixture_cdf,
    large_parts_box_probability,
    logistic_cdf,
)


def test_gumbel_examples():
    assert gumbel_cdf(0.0) == pytest.approx(math.exp(-1))
    assert gumbel_cdf(-math.log(math.log(2))) == pytest.approx(0.5)
    assert gumbel_cdf(-40.0) == 0.0


def test_logistic_examples():
    assert logistic_cdf(0.0) == 0.5
    assert logistic_cdf(math.log(3)) == pytest.approx(0.75)
    assert logistic_cdf(-800.0) == 0.0  # no overflow


def test_gumbel_difference_is_logistic():
    assert gumbel_difference_cdf_quadrature(0.0) == pytest.approx(0.5, abs=1e-3)
    for x in (-2.0, -0.5, 1.0, 3.0):
        assert gumbel_difference_cdf_quadrature(x) == pytest.approx(
            logistic_cdf(x), abs=1e-3
        )


def test_laplace_mixture_examples():
    assert laplace_mixture_cdf(0.0) == 0.5
    assert laplace_mixture_cdf(math.log(2)) == pytest.approx(0.75)
    assert laplace_mixture_cdf(-math.log(2)) == pytest.approx(0.25)


def test_laplace_mixture_is_exponential_difference():
    rng = np.random.default_rng(5)
    n = 1_000_000
    diff = rng.exponential(size=n) - rng.exponential(size=n)
    for v in (-1.0, 0.0, 0.7):
        emp = float((diff <= v).mean())
        assert abs(emp - laplace_mixture_cdf(v)) < 0.003


def test_exponential_product_factorises_exactly():
    for vl in (0.3, 1.0):
        for vr in (0.5, 2.0):
            joint = exp1_cdf(vl) * exp1_cdf(vr)
            assert joint == exp1_cdf(vl) * exp1_cdf(vr)  # product form is exact
    assert exp1_cdf(-1.0) == 0.0


def test_double_gumbel_examples():
    assert double_gumbel_cdf(0.0, 0.0) == pytest.approx(math.exp(-2))
    assert double_gumbel_cdf(50.0, 1.3) == pytest.approx(gumbel_cdf(1.3))
    v = -math.log(math.log(2))
    assert double_gumbel_cdf(v, v) == pytest.approx(0.25)


def test_exp_order_sum_examples():
    assert exp_order_sum_cdf(math.log(2), 1) == pytest.approx(0.5)
    assert exp_order_sum_cdf(0.0, 7) == 0.0
    with pytest.raises(ValueError):
        exp_order_sum_cdf(1.0, 0)


def test_exp_order_sum_monte_carlo():
    # sum of exponentials with means 1, 1/2, 1/3 at x = 2
    rng = np.random.default_rng(11)
    n = 1_000_000
    total = (
        rng.exponential(1.0, n)
        + rng.exponential(1.0 / 2.0, n)
        + rng.exponential(1.0 / 3.0, n)
    )
    emp = float((total <= 2.0).mean())
    assert abs(emp - exp_order_sum_cdf(2.0, 3)) < 0.003


def test_joint_density_cone():
    assert joint_large_parts_density(-1.0, [0.0], [0.0]) == 0.0
    assert joint_large_parts_density(1.0, [0.5, 0.8], [0.0, -1.0]) == 0.0
    assert joint_large_parts_density(1.0, [0.5], [0.0]) > 0.0


def test_joint_density_integrates_to_one():
    total = large_parts_box_probability(40.0, [40.0], [40.0])
    assert total == pytest.approx(1.0, abs=1e-3)


def test_joint_marginal_is_gumbel_density():
    # differentiate the peak marginal numerically
    for u in (-1.0, 0.0, 1.0):
        h = 1e-4
        hi = large_parts_box_probability(u + h, [40.0], [40.0])
        lo = large_parts_box_probability(u - h, [40.0], [40.0])
        assert (hi - lo) / (2 * h) == pytest.approx(gumbel_density(u), abs=1e-3)


def test_joint_box_monotone():
    a = large_parts_box_probability(0.0, [0.0], [0.0])
    b = large_parts_box_probability(1.0, [0.5], [0.5])
    c = large_parts_box_probability(2.0, [1.0], [1.0])
    assert 0.0 < a < b < c < 1.0


def test_partition_top_parts_density():
    assert partition_top_parts_density([0.0, 1.0]) == 0.0  # ordering violated
    # the single-coordinate case reduces to the Gumbel density
    for u in (-1.0, 0.2, 3.0):
        assert partition_top_parts_density([u]) == pytest.approx(gumbel_density(u))
    total, _ = quad(lambda u: partition_top_parts_density([u]), -12, 40, limit=200)
    assert total == pytest.approx(1.0, abs=1e-3)


def test_cdf_shapes():
    grid = np.linspace(-8, 12, 200)
    for cdf in (gumbel_cdf, logistic_cdf, laplace_mixture_cdf, exp1_cdf):
        vals = [cdf(float(x)) for x in grid]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
        assert vals[0] < 1e-3 and vals[-1] > 1 - 1e-3


def test_density_matches_cdf_derivative():
    from uniseq.laws import laplace_mixture_density, logistic_density

    h = 1e-5
    for x in (-1.5, -0.2, 0.4, 2.0):
        num = (logistic_cdf(x + h) - logistic_cdf(x - h)) / (2 * h)
        assert num == pytest.approx(logistic_density(x), rel=1e-5)
        num = (laplace_mixture_cdf(x + h) - laplace_mixture_cdf(x - h)) / (2 * h)
        assert num == pytest.approx(laplace_mixture_density(x), rel=1e-4)
