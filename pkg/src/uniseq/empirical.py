"""Empirical distributions and goodness-of-fit distances."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .laws import LimitLaw


@dataclass(frozen=True)
class EmpiricalDistribution:
    """Sorted 1-D sample with CDF evaluation."""

    values: np.ndarray

    @classmethod
    def from_samples(cls, values) -> "EmpiricalDistribution":
        arr = np.sort(np.asarray(values, dtype=np.float64))
        if arr.size == 0:
            raise ValueError("empty sample")
        return cls(values=arr)

    @property
    def count(self) -> int:
        return int(self.values.size)

    def cdf(self, x: float) -> float:
        return float(np.searchsorted(self.values, x, side="right")) / self.count


def ks_distance(emp: EmpiricalDistribution,
                law: Union[LimitLaw, Callable[[float], float]]) -> float:
    """sup |F_emp - F_law| over the sample points."""
    cdf = law.cdf if isinstance(law, LimitLaw) else law
    xs = emp.values
    ecdf = np.searchsorted(xs, xs, side="right") / xs.size
    lcdf = np.array([cdf(float(x)) for x in xs])
    return float(np.abs(ecdf - lcdf).max())


def tv_distance_discrete(p, q) -> float:
    """Total variation 0.5 * sum |p_i - q_i| of two aligned vectors."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ValueError("supports must be aligned")
    return 0.5 * float(np.abs(p - q).sum())


def tv_distance_counts(counts: dict, expected: dict) -> float:
    """TV between an observed count dict and an expected probability dict."""
    total = sum(counts.values())
    if total == 0:
        raise ValueError("empty sample")
    keys = set(counts) | set(expected)
    return 0.5 * sum(
        abs(counts.get(k, 0) / total - expected.get(k, 0.0)) for k in keys
    )
