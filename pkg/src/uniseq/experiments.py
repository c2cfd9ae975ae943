"""Seeded experiments comparing sampled/exact laws to their limits.

Each experiment emits a deterministic CSV: ``#`` comment header echoing
the configuration, per-sample (or per-m) data rows, then summary rows
``summary,<target>,<metric>,<value>,<tolerance>`` naming the limit law
the experiment verifies and the tolerance applied.  Identical
configuration and seed give byte-identical output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from fractions import Fraction

import numpy as np

from .asymptotics import (
    acceptance_rate_prediction,
    global_count_asymptotics,
    local_pk_probability,
    peak_mean_prediction,
    u_m_saddle,
)
from .constants import A, B, EULER_GAMMA
from .empirical import EmpiricalDistribution, ks_distance
from .exact import (
    count_table_u_m,
    count_table_ustar_m,
)
from .laws import (
    double_gumbel_cdf,
    exp1_cdf,
    gumbel_cdf,
    laplace_mixture_cdf,
    large_parts_box_probability,
    logistic_cdf,
)
from .sampler import (
    COL_PK,
    COL_RANK,
    COL_SUML,
    COL_SUMR,
    COL_XL,
    COL_XR,
    COL_YL,
    COL_YR,
    STAT_KMAX,
    STAT_TMAX,
    ModelParams,
    sample_sequences_batch,
    sample_stats_batch,
)
from . import series as qs


class GuardError(ValueError):
    """A config parameter violates an experiment's validity guard."""


@dataclass
class ExperimentConfig:
    name: str
    n: int = 2500
    samples: int = 20000
    seed: int = 1
    strict: bool = False
    order: int = 60
    k: int = 3
    t: int = 1
    kn: int = 6
    kind: str = "u"
    stats: bool = False
    out: str | None = None

    def header(self) -> str:
        parts = []
        for f in fields(self):
            if f.name in ("name", "out"):
                continue
            v = getattr(self, f.name)
            parts.append(f"{f.name}={int(v) if isinstance(v, bool) else v}")
        return f"# uniseq {self.name} " + " ".join(parts)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def _csv(cfg, columns, rows, summaries, notes=()):
    lines = [cfg.header()]
    for note in notes:
        lines.append(f"# {note}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    for target, metric, value, tol in summaries:
        lines.append(
            f"summary,{target},{metric},{_fmt(value)},{_fmt(tol) if tol is not None else ''}"
        )
    return "\n".join(lines) + "\n"


def _scale(cfg) -> float:
    c = A if cfg.strict else B
    return c * math.sqrt(cfg.n)


def _sampled_stats(cfg):
    params = ModelParams.for_size(cfg.n, strict=cfg.strict)
    return sample_stats_batch(params, cfg.samples, cfg.seed, kn=cfg.kn)


def _require(cond: bool, message: str):
    if not cond:
        raise GuardError(message)


# ---------------------------------------------------------------------------
# Sampled experiments.
# ---------------------------------------------------------------------------

def _exp_pk(cfg):
    stats, trials = _sampled_stats(cfg)
    s = _scale(cfg)
    xs = (stats[:, COL_PK] - s * math.log(2.0 * s)) / s
    rows = [(i, int(stats[i, COL_PK]), float(xs[i])) for i in range(len(xs))]
    ks = ks_distance(EmpiricalDistribution.from_samples(xs), gumbel_cdf)
    rate = cfg.samples / trials
    pred = acceptance_rate_prediction(cfg.n, cfg.strict)
    target = "strict-peak-gumbel-limit" if cfg.strict else "peak-gumbel-limit"
    summaries = [
        (target, "ks", ks, 0.1),
        ("size-rejection-rate", "observed", rate, None),
        ("size-rejection-rate", "observed-over-predicted", rate / pred, 0.25),
    ]
    return ["index", "pk", "x"], rows, summaries


def _exp_pk_exact(cfg):
    table = (count_table_ustar_m if cfg.strict else count_table_u_m)(cfg.n)
    total = sum(table)
    s = _scale(cfg)
    rows = []
    tv = 0.0
    mean = 0.0
    for i, cnt in enumerate(table):
        peak = i + 1
        p_exact = float(Fraction(cnt, total))
        x = peak / s - math.log(2.0 * s)
        p_local = local_pk_probability(cfg.n, x, cfg.strict)
        tv += abs(p_exact - p_local)
        mean += peak * p_exact
        rows.append((peak, p_exact, p_local))
    tv *= 0.5
    pred = peak_mean_prediction(cfg.n, cfg.strict)
    target = "strict-peak-local-limit" if cfg.strict else "peak-local-limit"
    summaries = [
        (target, "tv", tv, 0.05),
        ("peak-mean", "exact", mean, None),
        ("peak-mean", "relative-error", abs(mean - pred) / pred, 0.1),
    ]
    return ["peak", "p_exact", "p_local"], rows, summaries


LARGE_PART_ANCHORS = ((0.0, 0.0), (1.0, 0.5), (2.0, 1.0))


def _exp_largeparts(cfg):
    _require(
        1 <= cfg.t <= min(STAT_TMAX, int(cfg.n**0.25)),
        f"top-part depth violates t_n = o(n^(1/4)): t={cfg.t}, n={cfg.n} "
        f"(supported t <= {min(STAT_TMAX, int(cfg.n**0.25))})",
    )
    stats, _ = _sampled_stats(cfg)
    s = _scale(cfg)
    center = s * math.log(2.0 * s)
    x0 = (stats[:, COL_PK] - center) / s
    yl = (stats[:, COL_YL : COL_YL + cfg.t] - center) / s
    yr = (stats[:, COL_YR : COL_YR + cfg.t] - center) / s
    cols = ["index", "x0"]
    cols += [f"yl{j+1}" for j in range(cfg.t)] + [f"yr{j+1}" for j in range(cfg.t)]
    rows = [
        (i, float(x0[i]), *map(float, yl[i]), *map(float, yr[i]))
        for i in range(len(x0))
    ]
    target = (
        "strict-large-parts-joint-law" if cfg.strict else "large-parts-joint-law"
    )
    summaries = []
    for v0, top in LARGE_PART_ANCHORS:
        chain = tuple(top - 0.5 * j for j in range(cfg.t))
        emp = float(
            np.mean(
                (x0 <= v0)
                & np.all(yl <= np.asarray(chain), axis=1)
                & np.all(yr <= np.asarray(chain), axis=1)
            )
        )
        law = large_parts_box_probability(v0, chain, chain)
        summaries.append(
            (target, f"box({v0},{top})-abs-err", abs(emp - law), 0.1)
        )
    return cols, rows, summaries


def _exp_smallparts(cfg):
    if cfg.strict:
        return _exp_smallparts_strict(cfg)
    _require(
        1 <= cfg.k <= min(STAT_KMAX, int(cfg.n**0.25)),
        f"small-part index violates k_n = o(n^(1/4)): k={cfg.k}, n={cfg.n} "
        f"(supported k <= {min(STAT_KMAX, int(cfg.n**0.25))})",
    )
    stats, _ = _sampled_stats(cfg)
    s = _scale(cfg)
    cols = ["index"]
    cols += [f"vl{k}" for k in range(1, cfg.k + 1)]
    cols += [f"vr{k}" for k in range(1, cfg.k + 1)]
    scaled = {}
    for k in range(1, cfg.k + 1):
        scaled[("L", k)] = k * stats[:, COL_XL + k - 1] / s
        scaled[("R", k)] = k * stats[:, COL_XR + k - 1] / s
    rows = [
        (
            i,
            *(float(scaled[("L", k)][i]) for k in range(1, cfg.k + 1)),
            *(float(scaled[("R", k)][i]) for k in range(1, cfg.k + 1)),
        )
        for i in range(stats.shape[0])
    ]
    summaries = []
    for k in range(1, cfg.k + 1):
        for side in ("L", "R"):
            ks = ks_distance(
                EmpiricalDistribution.from_samples(scaled[(side, k)]), exp1_cdf
            )
            summaries.append(
                ("small-part-exponential-limit", f"ks-k{k}{side}", ks, 0.1)
            )
    return cols, rows, summaries


def _exp_smallparts_strict(cfg):
    _require(
        1 <= cfg.k <= min(STAT_KMAX, int(cfg.n**0.5) // 2),
        f"small-part index violates k_n = o(n^(1/2)): k={cfg.k}, n={cfg.n} "
        f"(supported k <= {min(STAT_KMAX, int(cfg.n**0.5) // 2)})",
    )
    stats, _ = _sampled_stats(cfg)
    kn = cfg.k
    cells = np.zeros(stats.shape[0], dtype=np.int64)
    for j in range(kn):
        cells |= (stats[:, COL_XL + j] & 1) << j
        cells |= (stats[:, COL_XR + j] & 1) << (kn + j)
    counts = np.bincount(cells, minlength=4**kn)
    total = stats.shape[0]
    p0 = 0.25**kn
    se = math.sqrt(p0 * (1.0 - p0) / total)
    cols = ["cell", "count", "frequency", "deviation_se"]
    rows = []
    max_dev = 0.0
    for cell in range(4**kn):
        freq = counts[cell] / total
        dev = abs(freq - p0) / se
        max_dev = max(max_dev, dev)
        rows.append((cell, int(counts[cell]), freq, dev))
    summaries = [
        ("strict-small-part-cell-uniformity", "max-deviation-se", max_dev, 3.0)
    ]
    return cols, rows, summaries


def _exp_skew(cfg):
    _require(not cfg.strict, "no reference law for the strict variant of skew")
    _require(
        1 <= cfg.k <= min(STAT_KMAX, int(cfg.n**0.25)),
        f"small-part index violates k_n = o(n^(1/4)): k={cfg.k}, n={cfg.n} "
        f"(supported k <= {min(STAT_KMAX, int(cfg.n**0.25))})",
    )
    stats, _ = _sampled_stats(cfg)
    s = _scale(cfg)
    diffs = {
        k: k * (stats[:, COL_XL + k - 1] - stats[:, COL_XR + k - 1]) / s
        for k in range(1, cfg.k + 1)
    }
    cols = ["index"] + [f"d{k}" for k in range(1, cfg.k + 1)]
    rows = [
        (i, *(float(diffs[k][i]) for k in range(1, cfg.k + 1)))
        for i in range(stats.shape[0])
    ]
    summaries = [
        (
            "small-part-difference-laplace-limit",
            f"ks-k{k}",
            ks_distance(
                EmpiricalDistribution.from_samples(diffs[k]), laplace_mixture_cdf
            ),
            0.1,
        )
        for k in range(1, cfg.k + 1)
    ]
    return cols, rows, summaries


TOTAL_SMALL_BOXES = ((0.0, 0.0), (1.0, 1.0), (2.0, 0.5))


def _exp_totalsmall(cfg):
    _require(not cfg.strict, "no reference law for the strict variant of totalsmall")
    _require(
        1 <= cfg.kn <= int(cfg.n**0.5) // 2,
        f"cutoff violates k_n = o(n^(1/2)): kn={cfg.kn}, n={cfg.n} "
        f"(supported kn <= {int(cfg.n**0.5) // 2})",
    )
    stats, _ = _sampled_stats(cfg)
    s = _scale(cfg)
    shift = s * math.log(cfg.kn)
    wl = (stats[:, COL_SUML] - shift) / s
    wr = (stats[:, COL_SUMR] - shift) / s
    rows = [(i, float(wl[i]), float(wr[i])) for i in range(len(wl))]
    summaries = []
    for vl, vr in TOTAL_SMALL_BOXES:
        emp = float(np.mean((wl <= vl) & (wr <= vr)))
        law = double_gumbel_cdf(vl, vr)
        summaries.append(
            ("total-small-double-gumbel-limit", f"box({vl},{vr})-abs-err",
             abs(emp - law), 0.1)
        )
    return ["index", "wl", "wr"], rows, summaries


def _exp_rank(cfg):
    _require(not cfg.strict, "no reference law for the strict variant of rank")
    stats, _ = _sampled_stats(cfg)
    s = _scale(cfg)
    xs = stats[:, COL_RANK] / s
    rows = [(i, int(stats[i, COL_RANK]), float(xs[i])) for i in range(len(xs))]
    ks = ks_distance(EmpiricalDistribution.from_samples(xs), logistic_cdf)
    return (
        ["index", "rank", "x"],
        rows,
        [("rank-logistic-limit", "ks", ks, 0.1)],
    )


def _exp_sample(cfg):
    params = ModelParams.for_size(cfg.n, strict=cfg.strict)
    seqs, trials = sample_sequences_batch(params, cfg.samples, cfg.seed)
    summaries = [
        ("size-rejection-rate", "observed", cfg.samples / trials, None),
        ("size-rejection-rate", "trials", trials, None),
    ]
    if cfg.stats:
        from .stats import compute_stats

        cols = ["n", "seed", "pk", "rank", "size"]
        for t in range(1, STAT_TMAX + 1):
            cols += [f"y_l{t}", f"y_r{t}"]
        rows = []
        for s in map(compute_stats, seqs):
            row = [cfg.n, cfg.seed, s.pk, s.rank, s.size]
            for t in range(1, STAT_TMAX + 1):
                row += [s.y(t, "L"), s.y(t, "R")]
            rows.append(tuple(row))
        return cols, rows, summaries
    rows = [(s.encode(),) for s in seqs]
    return ["left|peak|right"], rows, summaries


# ---------------------------------------------------------------------------
# Exact/series experiments.
# ---------------------------------------------------------------------------

def _exp_count(cfg):
    table = (count_table_ustar_m if cfg.strict else count_table_u_m)(cfg.n)
    offset = 0 if cfg.strict else 1
    rows = [(cfg.n, i + offset, c) for i, c in enumerate(table)]
    summaries = [("peak-count-table", "total", sum(table), None)]
    notes = ["m column is the conditioning index: peak m"
             + (" + 1" if cfg.strict else "")]
    return ["n", "m", "count"], rows, summaries, notes


SERIES_KINDS = ("p", "u", "ustar", "mu", "mp", "s")


def _exp_series(cfg):
    kind = cfg.kind
    if kind == "p":
        ser = qs.partition_series(cfg.order)
    elif kind == "u":
        ser = qs.unimodal_series(cfg.order)
    elif kind == "ustar":
        ser = qs.strongly_unimodal_series(cfg.order)
    elif kind == "mu":
        ser = qs.mu_series_direct(cfg.k, cfg.order)
    elif kind == "mp":
        ser = qs.mp_series_direct(cfg.k, cfg.order)
    elif kind == "s":
        ser = qs.s_series(cfg.k, cfg.n, cfg.order)
    else:
        raise GuardError(f"unknown series kind {kind!r}; expected {SERIES_KINDS}")
    rows = [(e, c) for e, c in enumerate(ser.coeffs)]
    return ["exponent", "coefficient"], rows, []


def _exp_moments(cfg):
    order = cfg.order
    p = qs.partition_series(order)
    mp1 = qs.mp_series_direct(1, order)
    rows = []
    last_rel = 0.0
    for n in range(1, order + 1):
        mean = float(Fraction(mp1[n], p[n]))
        root = math.sqrt(n)
        pred = A * root * math.log(A * root) + A * EULER_GAMMA * root
        last_rel = abs(mean - pred) / mean
        rows.append((n, mean, pred, last_rel))
    summaries = []
    for k in range(4):
        same = qs.mu_series_bell(k, order) == qs.mu_series_direct(k, order)
        summaries.append(
            ("peak-moment-bell-identity", f"exact-match-k{k}", int(same), 1)
        )
    for k in range(1, 4):
        same = qs.mp_series_recursive(k, order) == qs.mp_series_direct(k, order)
        summaries.append(
            ("largest-part-moment-recursion", f"exact-match-k{k}", int(same), 1)
        )
    # reported, not asserted: the mean drifts logarithmically at desk scale
    summaries.append(
        ("largest-part-mean-vs-formula", f"relative-deviation-at-{order}",
         last_rel, None)
    )
    return ["n", "mean_largest_part", "formula", "relative_deviation"], rows, summaries


def _exp_asymp(cfg):
    table = (count_table_ustar_m if cfg.strict else count_table_u_m)(cfg.n)
    offset = 0 if cfg.strict else 1
    rows = []
    mode_idx = max(range(len(table)), key=lambda i: table[i])
    for i, cnt in enumerate(table):
        if cnt <= 0:
            continue
        m = i + offset
        exact_log = math.log(cnt) if cnt > 1 else 0.0
        approx_log = u_m_saddle(cfg.n, m, cfg.strict)
        ratio = approx_log / exact_log if exact_log else math.inf
        rows.append((cfg.n, m, exact_log, approx_log, ratio))
    m_mode = mode_idx + offset
    exact_mode = math.log(table[mode_idx])
    approx_mode = u_m_saddle(cfg.n, m_mode, cfg.strict)
    total_log = math.log(sum(table))
    global_log = global_count_asymptotics(cfg.n, cfg.strict)
    target = "strict-peak-count-saddle" if cfg.strict else "peak-count-saddle"
    summaries = [
        (target, "mode-log-rel-err", abs(approx_mode - exact_mode) / exact_mode, 0.02),
        ("global-count-asymptote", "log-rel-err",
         abs(global_log - total_log) / total_log, 0.03),
        ("size-rejection-rate", "predicted",
         acceptance_rate_prediction(cfg.n, cfg.strict), None),
    ]
    return ["n", "m", "exact_log", "approx_log", "ratio"], rows, summaries


EXPERIMENTS = {
    "pk": _exp_pk,
    "pk-exact": _exp_pk_exact,
    "largeparts": _exp_largeparts,
    "smallparts": _exp_smallparts,
    "skew": _exp_skew,
    "totalsmall": _exp_totalsmall,
    "rank": _exp_rank,
    "sample": _exp_sample,
    "count": _exp_count,
    "series": _exp_series,
    "moments": _exp_moments,
    "asymp": _exp_asymp,
}


def run_experiment(cfg: ExperimentConfig):
    """Run one experiment; returns (csv_text, summary dict)."""
    if cfg.name not in EXPERIMENTS:
        raise GuardError(f"unknown experiment {cfg.name!r}")
    result = EXPERIMENTS[cfg.name](cfg)
    columns, rows, summaries = result[:3]
    notes = result[3] if len(result) > 3 else ()
    text = _csv(cfg, columns, rows, summaries, notes)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    summary = {(t, m): v for t, m, v, _ in summaries}
    return text, summary
