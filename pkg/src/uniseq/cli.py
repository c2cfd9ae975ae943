"""Command-line entry point.

One subcommand per experiment plus ``bench``, which times the numba and
numpy sampling backends on the same workload and verifies they produce
identical samples.  CSV goes to stdout unless ``--out`` is given; exit
code is 0 on success and 1 with a one-line reason otherwise.
"""

from __future__ import annotations

import argparse
import sys
import time

from .experiments import SERIES_KINDS, ExperimentConfig, GuardError, run_experiment
from .sampler import SamplingBudgetError, WeightTableError

_SAMPLED = ("pk", "largeparts", "smallparts", "skew", "totalsmall", "rank", "sample")
_EXACT = ("pk-exact", "count", "asymp")


def _add_common(sub, *, samples=False, order=False, k=False, t=False, kn=False,
                kind=False, n_default=2500):
    sub.add_argument("--n", type=int, default=n_default, help="target size")
    sub.add_argument("--seed", type=int, default=1, help="master RNG seed")
    sub.add_argument("--strict", action="store_true",
                     help="strongly unimodal variant")
    sub.add_argument("--out", type=str, default=None, help="output CSV path")
    if samples:
        sub.add_argument("--samples", type=int, default=20000,
                         help="accepted sample count")
    if order:
        sub.add_argument("--order", type=int, default=60,
                         help="series truncation order")
    if k:
        sub.add_argument("--k", type=int, default=3, help="small-part index bound")
    if t:
        sub.add_argument("--t", type=int, default=1, help="top-part depth")
    if kn:
        sub.add_argument("--kn", type=int, default=6,
                         help="total-small-part cutoff k_n")
    if kind:
        sub.add_argument("--kind", type=str, default="u", choices=SERIES_KINDS,
                         help="which series to emit")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uniseq",
        description="Verification experiments for random unimodal sequences",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    for name in _SAMPLED:
        sub = subs.add_parser(name)
        _add_common(
            sub,
            samples=True,
            k=name in ("smallparts", "skew"),
            t=name == "largeparts",
            kn=name in ("totalsmall", "smallparts"),
        )
        if name == "sample":
            sub.add_argument("--stats", action="store_true",
                             help="emit per-sample statistic rows instead of encodings")
    for name in _EXACT:
        sub = subs.add_parser(name)
        _add_common(sub, n_default=2000)
    sub = subs.add_parser("series")
    _add_common(sub, order=True, k=True, kind=True, n_default=1)
    sub = subs.add_parser("moments")
    _add_common(sub, order=True, n_default=1)
    sub = subs.add_parser("bench")
    _add_common(sub, samples=True, kn=True, n_default=400)
    subs.choices["bench"].set_defaults(samples=2000)
    return parser


def _config_from(args) -> ExperimentConfig:
    cfg = ExperimentConfig(name=args.command)
    for attr in ("n", "samples", "seed", "strict", "order", "k", "t", "kn",
                 "kind", "stats", "out"):
        if hasattr(args, attr):
            setattr(cfg, attr, getattr(args, attr))
    return cfg


def _run_bench(args) -> int:
    import numpy as np

    from . import kernels
    from .sampler import ModelParams, sample_stats_batch

    params = ModelParams.for_size(args.n, strict=args.strict)
    results = {}
    backends = ["numpy"] + (["numba"] if kernels._numba_available() else [])
    for backend in backends:
        prev = kernels.set_backend(backend)
        try:
            if backend == "numba":  # compile outside the timed region
                sample_stats_batch(params, 1, args.seed, kn=args.kn)
            t0 = time.perf_counter()
            stats, trials = sample_stats_batch(
                params, args.samples, args.seed, kn=args.kn
            )
            elapsed = time.perf_counter() - t0
            results[backend] = (stats, trials, elapsed)
        finally:
            if prev is not None:
                kernels.set_backend(prev)
    lines = [
        f"# uniseq bench n={args.n} samples={args.samples} seed={args.seed} "
        f"strict={int(args.strict)}",
        "backend,seconds,samples_per_second,trials",
    ]
    for backend, (_, trials, elapsed) in results.items():
        lines.append(
            f"{backend},{elapsed:.6f},{args.samples / elapsed:.1f},{trials}"
        )
    identical = True
    if len(results) == 2:
        identical = bool(
            np.array_equal(results["numpy"][0], results["numba"][0])
            and results["numpy"][1] == results["numba"][1]
        )
        lines.append(f"identical,{str(identical).lower()},,")
        lines.append(
            "speedup,{:.2f},,".format(results["numpy"][2] / results["numba"][2])
        )
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not identical:
        print("error: backends disagree on identical seeds", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "bench":
            return _run_bench(args)
        cfg = _config_from(args)
        text, _ = run_experiment(cfg)
        if not cfg.out:
            sys.stdout.write(text)
        return 0
    except (GuardError, SamplingBudgetError, WeightTableError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
