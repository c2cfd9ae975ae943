"""Vectorised numpy fallback for the sampling kernels.

Trials are processed in blocks; because every draw is a pure function
of (trial substream, draw index), the block evaluation reproduces the
numba loop's accepted samples and trial counts exactly.  Slower than
the jitted path but dependency-free beyond numpy.
"""

import numpy as np

from .rng import DRAW_GAMMA, RIGHT_DRAW_OFFSET, STREAM_GAMMA
from .sampler import (
    COL_PK,
    COL_RANK,
    COL_SUML,
    COL_SUMR,
    COL_XL,
    COL_XR,
    COL_YL,
    COL_YR,
    STAT_COLS,
    STAT_KMAX,
    STAT_TMAX,
)

_U1 = np.uint64(1)
_DRAW = np.uint64(DRAW_GAMMA)
_STREAM = np.uint64(STREAM_GAMMA)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_UNIT = 2.0**-53

BLOCK_TRIALS = 2048


def _mix(z):
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def _units(seeds, indices):
    """Uniforms in (0, 1] for each (seed, draw index) pair (broadcast)."""
    bits = _mix(seeds + (indices + _U1) * _DRAW)
    return ((bits >> np.uint64(11)).astype(np.float64) + 1.0) * _UNIT


def _draw_block(chunk_seed, trial0, block, n, cdf, thresh, strict):
    """Evaluate a block of trials; returns accepted rows in trial order.

    Output: (local trial indices, peaks, ms, mult_l, mult_r) where the
    multiplicity matrices have one column per part 1..mmax.
    """
    t = np.arange(trial0, trial0 + block, dtype=np.uint64)
    ts = _mix(np.uint64(chunk_seed) + (t + _U1) * _STREAM)
    u0 = _units(ts, np.uint64(0))
    peak = np.searchsorted(cdf, u0, side="left").astype(np.int64) + 1
    m = peak - 1 if strict else peak.copy()
    feasible = peak <= n
    local = np.nonzero(feasible)[0]
    empty = (
        np.empty(0, np.int64),
        np.empty(0, np.int64),
        np.empty(0, np.int64),
        np.empty((0, 0), np.int64),
        np.empty((0, 0), np.int64),
    )
    if local.size == 0:
        return empty
    ts_f = ts[local]
    m_f = m[local]
    peak_f = peak[local]
    mmax = int(m_f.max())
    if mmax == 0:
        # strict bare-peak trials only
        ok = peak_f == n
        sel = np.nonzero(ok)[0]
        return (
            local[sel],
            peak_f[sel],
            m_f[sel],
            np.zeros((sel.size, 0), np.int64),
            np.zeros((sel.size, 0), np.int64),
        )
    ks = np.arange(1, mmax + 1, dtype=np.int64)
    cols = ks.astype(np.uint64)
    mask = ks[None, :] <= m_f[:, None]

    def side(offset):
        u = _units(ts_f[:, None], cols[None, :] + np.uint64(offset))
        if strict:
            x = (u <= thresh[None, :mmax]).astype(np.int64)
        else:
            x = np.floor(np.log(u) / thresh[None, :mmax]).astype(np.int64)
        x[~mask] = 0
        return x

    mult_l = side(0)
    mult_r = side(RIGHT_DRAW_OFFSET)
    sizes = peak_f + ((mult_l + mult_r) * ks[None, :]).sum(axis=1)
    ok = sizes == n
    sel = np.nonzero(ok)[0]
    return local[sel], peak_f[sel], m_f[sel], mult_l[sel], mult_r[sel]


def _block_loop(chunk_seed, n, cdf, thresh, strict, quota, max_trials, consume):
    """Shared accept loop; ``consume(j, peak, m, xl, xr)`` stores sample j."""
    accepted = 0
    trials = 0
    while accepted < quota and trials < max_trials:
        block = min(BLOCK_TRIALS, max_trials - trials)
        local, peaks, ms, mult_l, mult_r = _draw_block(
            chunk_seed, trials, block, n, cdf, thresh, strict
        )
        take = min(quota - accepted, local.size)
        for i in range(take):
            consume(accepted + i, int(peaks[i]), int(ms[i]), mult_l[i], mult_r[i])
        accepted += take
        if accepted == quota and take > 0:
            # stop at the accepting trial, exactly like the scalar loop
            trials += int(local[take - 1]) + 1
        else:
            trials += block
    return accepted, trials


def _top_parts(xrow, row, base):
    t = 0
    for k0 in np.nonzero(xrow)[0][::-1]:
        reps = int(xrow[k0])
        while reps > 0 and t < STAT_TMAX:
            row[base + t] = k0 + 1
            t += 1
            reps -= 1
        if t >= STAT_TMAX:
            break


def run_stats(chunk_seed, n, cdf, thresh, strict, quota, max_trials, kn):
    out = np.zeros((quota, STAT_COLS), np.int64)

    def consume(j, peak, m, xl, xr):
        row = out[j]
        row[COL_PK] = peak
        row[COL_RANK] = int(xl.sum() - xr.sum())
        row[COL_SUML] = int(xl[: min(kn, m)].sum())
        row[COL_SUMR] = int(xr[: min(kn, m)].sum())
        _top_parts(xl, row, COL_YL)
        _top_parts(xr, row, COL_YR)
        kk = min(STAT_KMAX, xl.shape[0])
        row[COL_XL : COL_XL + kk] = xl[:kk]
        row[COL_XR : COL_XR + kk] = xr[:kk]

    accepted, trials = _block_loop(
        chunk_seed, n, cdf, thresh, strict, quota, max_trials, consume
    )
    return out[:accepted], trials


def run_keys(chunk_seed, n, cdf, thresh, strict, quota, max_trials):
    out = np.zeros(quota, np.int64)

    def consume(j, peak, m, xl, xr):
        key = 0
        pos = 0
        for k0 in np.nonzero(xl)[0]:
            for _ in range(int(xl[k0])):
                key |= (k0 + 1) << (4 * pos)
                pos += 1
        pos += 1
        key |= peak << (4 * pos)
        pos += 2
        for k0 in np.nonzero(xr)[0][::-1]:
            for _ in range(int(xr[k0])):
                key |= (k0 + 1) << (4 * pos)
                pos += 1
        out[j] = key

    accepted, trials = _block_loop(
        chunk_seed, n, cdf, thresh, strict, quota, max_trials, consume
    )
    return out[:accepted], trials


def run_sequences(chunk_seed, n, cdf, thresh, strict, quota, max_trials):
    size = cdf.shape[0]
    peaks = np.zeros(quota, np.int64)
    out_l = np.zeros((quota, size), np.int64)
    out_r = np.zeros((quota, size), np.int64)

    def consume(j, peak, m, xl, xr):
        peaks[j] = peak
        out_l[j, : xl.shape[0]] = xl
        out_r[j, : xr.shape[0]] = xr

    accepted, trials = _block_loop(
        chunk_seed, n, cdf, thresh, strict, quota, max_trials, consume
    )
    return (peaks[:accepted], out_l[:accepted], out_r[:accepted]), trials
