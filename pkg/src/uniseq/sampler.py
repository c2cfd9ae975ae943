"""Boltzmann samplers for (strongly) unimodal sequences and partitions.

The size-q measure on all sequences is sampled by first drawing the
peak from a normalised weight table (inverse CDF) and then drawing the
part multiplicities of both runs independently: geometric for the
ordinary model, Bernoulli q^k/(1+q^k) for the strict one.  Rejection on
exact size N = n recovers the uniform measure on sequences of size n.

The functions here are the plain-Python reference path; the batch
entry points at the bottom orchestrate the numba/numpy kernels in
deterministic chunks and produce the identical sample stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import A, B
from .rng import RIGHT_DRAW_OFFSET, RngStream
from .exact import UnimodalSequence

# Samples are produced in fixed-size chunks, each on its own derived
# substream; changing this constant changes the streams.
CHUNK_SAMPLES = 2048

WEIGHT_TAIL_TOL = 1e-12
WEIGHT_MAX_LEN = 10**6


class SamplingBudgetError(RuntimeError):
    """Rejection sampling exhausted its trial budget."""

    def __init__(self, trials: int, accepted: int, requested: int):
        self.trials = trials
        self.accepted = accepted
        self.requested = requested
        super().__init__(
            f"exhausted {trials} trials with {accepted}/{requested} accepted samples"
        )


class WeightTableError(RuntimeError):
    """Peak-weight tail tolerance unreachable within the length cap."""


@dataclass(frozen=True)
class ModelParams:
    """Target size n, scale constant, and the Boltzmann parameter q.

    The peak concentrates near scale*log(2*scale) with fluctuations of
    order scale = c*sqrt(n); x denotes the centred/scaled coordinate.
    """

    n: int
    q: float
    strict: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0.0 < self.q < 1.0:
            raise ValueError("q must lie in (0, 1)")

    @classmethod
    def for_size(cls, n: int, strict: bool = False) -> "ModelParams":
        c = A if strict else B
        return cls(n=n, q=math.exp(-1.0 / (c * math.sqrt(n))), strict=strict)

    @property
    def constant(self) -> float:
        return A if self.strict else B

    @property
    def scale(self) -> float:
        return self.constant * math.sqrt(self.n)

    @property
    def peak_center(self) -> float:
        return self.scale * math.log(2.0 * self.scale)

    def x_of_peak(self, peak: int) -> float:
        return peak / self.scale - math.log(2.0 * self.scale)

    def peak_of_x(self, x: float) -> float:
        return self.scale * (math.log(2.0 * self.scale) + x)


@dataclass(frozen=True)
class PeakWeights:
    """Normalised peak law: entry i is P(PK = i + 1) under the model."""

    probs: np.ndarray
    cdf: np.ndarray
    strict: bool

    def __len__(self):
        return len(self.probs)

    @property
    def mode_peak(self) -> int:
        return int(np.argmax(self.probs)) + 1

    def pick(self, u: float) -> int:
        """Inverse-CDF peak for a uniform u in (0, 1]."""
        return int(np.searchsorted(self.cdf, u, side="left")) + 1


def peak_weights(
    params: ModelParams,
    tail_tol: float = WEIGHT_TAIL_TOL,
    max_len: int = WEIGHT_MAX_LEN,
) -> PeakWeights:
    """Peak distribution table with tail mass below ``tail_tol``.

    Weights are q^m/(q)_m^2 for peak m, or (-q)_m^2 q^(m+1) for strict
    peak m+1; the empty sequence carries no peak and is excluded.  The
    geometric bound w_M * r/(1-r) on the dropped tail decides the cutoff.
    """
    q = params.q
    logq = math.log(q)
    size = 1024
    while True:
        size = min(size, max_len)
        k = np.arange(1, size + 1, dtype=np.float64)
        qk = np.exp(k * logq)
        if params.strict:
            csum = np.concatenate(([0.0], np.cumsum(np.log1p(qk))[:-1]))
            logw = (k) * logq + 2.0 * csum  # peak j = k, parts <= j-1
            ratio = q * (1.0 + qk[-1]) ** 2
        else:
            logw = k * logq - 2.0 * np.cumsum(np.log1p(-qk))
            ratio = q / (1.0 - q ** (size + 1)) ** 2
        w = np.exp(logw - logw.max())
        mass = math.fsum(w)
        tail = w[-1] * ratio / (1.0 - ratio) if ratio < 1.0 else math.inf
        if tail < tail_tol * mass:
            break
        if size >= max_len:
            raise WeightTableError(
                f"tail tolerance {tail_tol} unreachable within {max_len} weights "
                f"(q={q})"
            )
        size *= 2
    probs = w / mass
    cdf = np.cumsum(probs)
    cdf[-1] = 1.0
    return PeakWeights(probs=probs, cdf=cdf, strict=params.strict)


def geometric_from_unit(u: float, klogq: float) -> int:
    """Inversion sampler for P(X = l) = (1 - q^k) q^(kl), klogq = k*log(q)."""
    return int(math.floor(math.log(u) / klogq))


def bernoulli_threshold(q: float, k: int) -> float:
    """P(X_k = 1) = q^k / (1 + q^k) in the strict model."""
    qk = q**k
    return qk / (1.0 + qk)


def sample_multiplicity_geometric(q: float, k: int, rng: RngStream) -> int:
    """One geometric multiplicity draw with mean q^k/(1-q^k)."""
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie in (0, 1)")
    if k < 1:
        raise ValueError("k must be >= 1")
    return geometric_from_unit(rng.next_unit(), k * math.log(q))


def sample_conditioned(params: ModelParams, m: int, rng: RngStream) -> UnimodalSequence:
    """Draw a sequence conditioned on its peak.

    ``m`` is the conditioning index: the peak is m in the ordinary model
    and m + 1 in the strict one; both runs draw parts 1..m independently.
    Draw indices follow the module-wide layout (left k at index k, right
    k at index RIGHT_DRAW_OFFSET + k) so kernel batches can replay the
    exact stream.
    """
    if m < 0 or (m < 1 and not params.strict):
        raise ValueError("conditioning index out of range")
    q = params.q
    logq = math.log(q)
    left = []
    right = []
    for k in range(1, m + 1):
        if params.strict:
            thr = bernoulli_threshold(q, k)
            xl = 1 if rng.unit(k) <= thr else 0
            xr = 1 if rng.unit(RIGHT_DRAW_OFFSET + k) <= thr else 0
        else:
            xl = geometric_from_unit(rng.unit(k), k * logq)
            xr = geometric_from_unit(rng.unit(RIGHT_DRAW_OFFSET + k), k * logq)
        left.extend([k] * xl)
        right.extend([k] * xr)
    right.reverse()
    peak = m + 1 if params.strict else m
    return UnimodalSequence(
        left=tuple(left), peak=peak, right=tuple(right), strict=params.strict
    )


def sample_boltzmann(
    params: ModelParams, rng: RngStream, weights: PeakWeights | None = None
) -> UnimodalSequence:
    """One draw from the size-q measure (conditioned on being nonempty)."""
    if weights is None:
        weights = peak_weights(params)
    peak = weights.pick(rng.unit(0))
    m = peak - 1 if params.strict else peak
    return sample_conditioned(params, m, rng)


def default_max_trials(params: ModelParams, samples: int) -> int:
    """Generous rejection budget: ~50x the predicted expected trials."""
    root = 6.0 if params.strict else 3.0
    rate = 1.0 / (2.0 * root**0.25 * params.n**0.75)
    return max(10_000, int(50.0 * samples / rate))


def sample_exact_size(
    params: ModelParams,
    rng: RngStream,
    max_trials: int | None = None,
    weights: PeakWeights | None = None,
) -> tuple:
    """Rejection-sample one sequence with size exactly n.

    Returns ``(sequence, trials)``.  Trial t runs on ``rng.child(t)``,
    mirroring the batch kernels; conditioned on acceptance the law is
    uniform on the sequences of size n (up to the 1e-12 weight-table
    tail).
    """
    if weights is None:
        weights = peak_weights(params)
    if max_trials is None:
        max_trials = default_max_trials(params, 1)
    if max_trials < 1:
        raise ValueError("max_trials must be >= 1")
    for t in range(max_trials):
        seq = sample_boltzmann(params, rng.child(t), weights)
        if seq.size == params.n:
            return seq, t + 1
    raise SamplingBudgetError(max_trials, 0, 1)


def partition_cutoff(q: float, tail_tol: float = WEIGHT_TAIL_TOL) -> int:
    """Smallest part bound whose dropped mean multiplicity mass < tail_tol."""
    c = 1
    while True:
        tail = q ** (c + 1) / ((1.0 - q) * (1.0 - q ** (c + 1)))
        if tail < tail_tol:
            return c
        c += 1


def sample_partition_boltzmann(
    q: float, rng: RngStream, cutoff: int | None = None
) -> np.ndarray:
    """Independent geometric multiplicities of a random partition.

    Returns multiplicities of parts 1..cutoff (index k-1).  A cutoff too
    small for the 1e-12 tail bound is rejected.
    """
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie in (0, 1)")
    needed = partition_cutoff(q)
    if cutoff is None:
        cutoff = needed
    elif cutoff < needed:
        raise ValueError(
            f"cutoff {cutoff} too small: parts above it carry mass >= 1e-12 "
            f"(need {needed})"
        )
    logq = math.log(q)
    out = np.empty(cutoff, dtype=np.int64)
    for k in range(1, cutoff + 1):
        out[k - 1] = geometric_from_unit(rng.unit(k), k * logq)
    return out


# ---------------------------------------------------------------------------
# Batch orchestration over the numba/numpy kernels.
# ---------------------------------------------------------------------------

# Stats row layout produced by the kernels.
STAT_KMAX = 8   # small-part multiplicities reported for k <= STAT_KMAX
STAT_TMAX = 3   # order statistics reported for t <= STAT_TMAX
STAT_COLS = 4 + 2 * STAT_TMAX + 2 * STAT_KMAX
COL_PK = 0
COL_RANK = 1
COL_SUML = 2
COL_SUMR = 3
COL_YL = 4
COL_YR = COL_YL + STAT_TMAX
COL_XL = COL_YR + STAT_TMAX
COL_XR = COL_XL + STAT_KMAX


def _kernel_inputs(params: ModelParams, weights: PeakWeights):
    """Shared kernel arrays: peak CDF plus per-k thresholds."""
    m = len(weights)
    if params.strict:
        k = np.arange(1, m + 1, dtype=np.float64)
        qk = np.exp(k * math.log(params.q))
        thresh = qk / (1.0 + qk)
    else:
        thresh = np.arange(1, m + 1, dtype=np.float64) * math.log(params.q)
    return weights.cdf, thresh


def _run_chunks(runner, params, samples, seed, max_trials, extra=()):
    if samples < 1:
        raise ValueError("samples must be >= 1")
    weights = peak_weights(params)
    cdf, thresh = _kernel_inputs(params, weights)
    if max_trials is None:
        max_trials = default_max_trials(params, samples)
    master = RngStream(seed)
    pieces = []
    trials_total = 0
    accepted_total = 0
    chunk = 0
    remaining = samples
    while remaining > 0:
        quota = min(CHUNK_SAMPLES, remaining)
        budget = max_trials - trials_total
        if budget <= 0:
            raise SamplingBudgetError(trials_total, accepted_total, samples)
        out, trials = runner(
            np.uint64(master.child(chunk).seed),
            params.n,
            cdf,
            thresh,
            params.strict,
            quota,
            budget,
            *extra,
        )
        got = out[0].shape[0] if isinstance(out, tuple) else out.shape[0]
        trials_total += int(trials)
        accepted_total += got
        pieces.append(out)
        if got < quota:
            raise SamplingBudgetError(trials_total, accepted_total, samples)
        remaining -= quota
        chunk += 1
    return pieces, trials_total


def sample_stats_batch(
    params: ModelParams,
    samples: int,
    seed: int,
    kn: int = 6,
    max_trials: int | None = None,
):
    """Exact-size sample statistics as an int64 matrix.

    Row layout: pk, rank, sum of left/right multiplicities for k <= kn,
    top-STAT_TMAX parts per side, multiplicities for k <= STAT_KMAX per
    side.  Returns ``(stats, trials)``.
    """
    from . import kernels

    if kn < 1:
        raise ValueError("kn must be >= 1")
    pieces, trials = _run_chunks(
        kernels.stats_batch, params, samples, seed, max_trials, extra=(kn,)
    )
    return np.concatenate(pieces, axis=0), trials


def sample_keys_batch(
    params: ModelParams,
    samples: int,
    seed: int,
    max_trials: int | None = None,
):
    """Exact-size samples packed as int64 keys (requires n <= 15)."""
    from . import kernels
    from .exact import KEY_MAX_N

    if params.n > KEY_MAX_N:
        raise ValueError(f"key sampling requires n <= {KEY_MAX_N}")
    pieces, trials = _run_chunks(
        kernels.keys_batch, params, samples, seed, max_trials
    )
    return np.concatenate(pieces, axis=0), trials


def sample_sequences_batch(
    params: ModelParams,
    samples: int,
    seed: int,
    max_trials: int | None = None,
):
    """Exact-size samples as full sequences (for export)."""
    from . import kernels

    pieces, trials = _run_chunks(
        kernels.sequences_batch, params, samples, seed, max_trials
    )
    seqs = []
    for peaks, mult_l, mult_r in pieces:
        for i in range(peaks.shape[0]):
            left = []
            right = []
            m = int(peaks[i]) - (1 if params.strict else 0)
            for k in range(1, m + 1):
                left.extend([k] * int(mult_l[i, k - 1]))
                right.extend([k] * int(mult_r[i, k - 1]))
            right.reverse()
            seqs.append(
                UnimodalSequence(
                    left=tuple(left),
                    peak=int(peaks[i]),
                    right=tuple(right),
                    strict=params.strict,
                )
            )
    return seqs, trials
