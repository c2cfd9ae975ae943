"""Random-variable extraction from sequences and limit-law normalisations."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exact import UnimodalSequence


@dataclass(frozen=True)
class SequenceStats:
    """All statistics of one sequence: peak, per-part multiplicities on
    each side, sorted part lists per side, rank, size."""

    pk: int
    mult_left: dict
    mult_right: dict
    y_left: tuple   # parts left of the peak, nonincreasing
    y_right: tuple  # parts right of the peak, nonincreasing
    rank: int
    size: int

    def y(self, t: int, side: str) -> int:
        """The t-th largest part on a side; 0 when fewer than t parts."""
        run = self.y_left if side == "L" else self.y_right
        if t < 1:
            raise ValueError("t must be >= 1")
        return run[t - 1] if t <= len(run) else 0

    def x(self, k: int, side: str) -> int:
        mults = self.mult_left if side == "L" else self.mult_right
        return mults.get(k, 0)


def compute_stats(seq: UnimodalSequence) -> SequenceStats:
    mult_left: dict = {}
    for p in seq.left:
        mult_left[p] = mult_left.get(p, 0) + 1
    mult_right: dict = {}
    for p in seq.right:
        mult_right[p] = mult_right.get(p, 0) + 1
    rank = len(seq.left) - len(seq.right)
    return SequenceStats(
        pk=seq.peak,
        mult_left=mult_left,
        mult_right=mult_right,
        y_left=tuple(sorted(seq.left, reverse=True)),
        y_right=tuple(sorted(seq.right, reverse=True)),
        rank=rank,
        size=seq.size,
    )


NORMALIZE_MODES = ("peak-shift", "small-part-scale", "total-small-shift", "rank-scale")


def normalize(value, n: int, constant: float, mode: str, k: int | None = None,
              k_n: int | None = None) -> float:
    """Affine normalisations used by the limit laws.

    peak-shift:        (v - c*sqrt(n)*log(2 c sqrt(n))) / (c*sqrt(n))
    small-part-scale:  k*v / (c*sqrt(n))                    [needs k]
    total-small-shift: (v - c*sqrt(n)*log(k_n)) / (c*sqrt(n)) [needs k_n]
    rank-scale:        v / (c*sqrt(n))
    """
    scale = constant * math.sqrt(n)
    if mode == "peak-shift":
        return (value - scale * math.log(2.0 * scale)) / scale
    if mode == "small-part-scale":
        if k is None:
            raise ValueError("small-part-scale needs the part size k")
        return k * value / scale
    if mode == "total-small-shift":
        if k_n is None:
            raise ValueError("total-small-shift needs the cutoff k_n")
        return (value - scale * math.log(k_n)) / scale
    if mode == "rank-scale":
        return value / scale
    raise ValueError(f"unknown mode {mode!r}; expected one of {NORMALIZE_MODES}")
