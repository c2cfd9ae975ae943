"""Numba-jitted rejection-sampling kernels (the hot loops).

Each trial runs on its own counter-based substream, so a trial whose
partial size already exceeds the target can be aborted without
desynchronising later trials.  The numpy backend replays the identical
streams; accepted samples agree element for element.
"""

import math

import numpy as np
from numba import njit

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
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_UNIT = 2.0**-53


@njit(cache=True, nogil=True)
def _mix(z):
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


@njit(cache=True, nogil=True)
def _unit(ts, idx):
    z = _mix(ts + (np.uint64(idx) + _U1) * _DRAW)
    return (np.float64(z >> _S11) + 1.0) * _UNIT


@njit(cache=True, nogil=True)
def _draw_trial(ts, n, cdf, thresh, strict, mult_l, mult_r):
    """One Boltzmann trial; returns (peak, m, count_l, count_r).

    m < 0 flags rejection (size != n); on acceptance mult_l/mult_r hold
    the multiplicities of parts 1..m.
    """
    u0 = _unit(ts, 0)
    i = np.searchsorted(cdf, u0)
    peak = i + 1
    if peak > n:
        return peak, -1, 0, 0
    m = peak - 1 if strict else peak
    total = peak
    count_l = 0
    count_r = 0
    for k in range(1, m + 1):
        u = _unit(ts, k)
        if strict:
            x = np.int64(1) if u <= thresh[k - 1] else np.int64(0)
        else:
            x = np.int64(math.floor(math.log(u) / thresh[k - 1]))
        mult_l[k] = x
        count_l += x
        total += k * x
        if total > n:
            return peak, -1, 0, 0
    for k in range(1, m + 1):
        u = _unit(ts, RIGHT_DRAW_OFFSET + k)
        if strict:
            x = np.int64(1) if u <= thresh[k - 1] else np.int64(0)
        else:
            x = np.int64(math.floor(math.log(u) / thresh[k - 1]))
        mult_r[k] = x
        count_r += x
        total += k * x
        if total > n:
            return peak, -1, 0, 0
    if total != n:
        return peak, -1, 0, 0
    return peak, m, count_l, count_r


@njit(cache=True, nogil=True)
def _top_parts(mult, m, row, base):
    t = 0
    for k in range(m, 0, -1):
        reps = mult[k]
        while reps > 0 and t < STAT_TMAX:
            row[base + t] = k
            t += 1
            reps -= 1
        if t >= STAT_TMAX:
            break


@njit(cache=True, nogil=True)
def run_stats(chunk_seed, n, cdf, thresh, strict, quota, max_trials, kn):
    out = np.zeros((quota, STAT_COLS), np.int64)
    size = cdf.shape[0]
    mult_l = np.zeros(size + 1, np.int64)
    mult_r = np.zeros(size + 1, np.int64)
    accepted = 0
    trials = 0
    while accepted < quota and trials < max_trials:
        ts = _mix(chunk_seed + (np.uint64(trials) + _U1) * _STREAM)
        trials += 1
        peak, m, count_l, count_r = _draw_trial(
            ts, n, cdf, thresh, strict, mult_l, mult_r
        )
        if m < 0:
            continue
        row = out[accepted]
        row[COL_PK] = peak
        row[COL_RANK] = count_l - count_r
        kk = kn if kn < m else m
        s_l = 0
        s_r = 0
        for k in range(1, kk + 1):
            s_l += mult_l[k]
            s_r += mult_r[k]
        row[COL_SUML] = s_l
        row[COL_SUMR] = s_r
        _top_parts(mult_l, m, row, COL_YL)
        _top_parts(mult_r, m, row, COL_YR)
        for k in range(1, STAT_KMAX + 1):
            row[COL_XL + k - 1] = mult_l[k] if k <= m else 0
            row[COL_XR + k - 1] = mult_r[k] if k <= m else 0
        accepted += 1
    return out[:accepted], trials


@njit(cache=True, nogil=True)
def run_keys(chunk_seed, n, cdf, thresh, strict, quota, max_trials):
    out = np.zeros(quota, np.int64)
    size = cdf.shape[0]
    mult_l = np.zeros(size + 1, np.int64)
    mult_r = np.zeros(size + 1, np.int64)
    accepted = 0
    trials = 0
    while accepted < quota and trials < max_trials:
        ts = _mix(chunk_seed + (np.uint64(trials) + _U1) * _STREAM)
        trials += 1
        peak, m, count_l, count_r = _draw_trial(
            ts, n, cdf, thresh, strict, mult_l, mult_r
        )
        if m < 0:
            continue
        key = np.int64(0)
        pos = 0
        for k in range(1, m + 1):
            for _ in range(mult_l[k]):
                key |= np.int64(k) << np.int64(4 * pos)
                pos += 1
        pos += 1
        key |= np.int64(peak) << np.int64(4 * pos)
        pos += 2
        for k in range(m, 0, -1):
            for _ in range(mult_r[k]):
                key |= np.int64(k) << np.int64(4 * pos)
                pos += 1
        out[accepted] = key
        accepted += 1
    return out[:accepted], trials


@njit(cache=True, nogil=True)
def run_sequences(chunk_seed, n, cdf, thresh, strict, quota, max_trials):
    size = cdf.shape[0]
    peaks = np.zeros(quota, np.int64)
    out_l = np.zeros((quota, size), np.int64)
    out_r = np.zeros((quota, size), np.int64)
    mult_l = np.zeros(size + 1, np.int64)
    mult_r = np.zeros(size + 1, np.int64)
    accepted = 0
    trials = 0
    while accepted < quota and trials < max_trials:
        ts = _mix(chunk_seed + (np.uint64(trials) + _U1) * _STREAM)
        trials += 1
        peak, m, count_l, count_r = _draw_trial(
            ts, n, cdf, thresh, strict, mult_l, mult_r
        )
        if m < 0:
            continue
        peaks[accepted] = peak
        for k in range(1, m + 1):
            out_l[accepted, k - 1] = mult_l[k]
            out_r[accepted, k - 1] = mult_r[k]
        accepted += 1
    return (peaks[:accepted], out_l[:accepted], out_r[:accepted]), trials
