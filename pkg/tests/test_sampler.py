import math

import numpy as np
import pytest
from scipy.stats import chisquare

from uniseq import kernels
from uniseq.exact import enumerate_all, sequence_key
from uniseq.empirical import tv_distance_counts
from uniseq.rng import RngStream
from uniseq.sampler import (
    COL_PK,
    ModelParams,
    SamplingBudgetError,
    WeightTableError,
    bernoulli_threshold,
    geometric_from_unit,
    peak_weights,
    sample_boltzmann,
    sample_conditioned,
    sample_exact_size,
    sample_keys_batch,
    sample_multiplicity_geometric,
    sample_partition_boltzmann,
    sample_stats_batch,
    sample_sequences_batch,
    partition_cutoff,
)


def test_model_params_validation():
    with pytest.raises(ValueError):
        ModelParams(n=0, q=0.5)
    with pytest.raises(ValueError):
        ModelParams(n=5, q=1.0)
    p = ModelParams.for_size(400)
    assert 0.0 < p.q < 1.0


def test_x_peak_roundtrip():
    p = ModelParams.for_size(1000)
    for peak in (1, 40, 63, 200):
        assert round(p.peak_of_x(p.x_of_peak(peak))) == peak


def test_peak_weights_normalised():
    for n, strict in ((400, False), (400, True), (10, False)):
        w = peak_weights(ModelParams.for_size(n, strict=strict))
        assert abs(math.fsum(w.probs) - 1.0) < 1e-9
        assert w.cdf[-1] == 1.0


def test_peak_weights_mode_near_prediction():
    p = ModelParams.for_size(400)
    w = peak_weights(p)
    predicted = p.scale * math.log(2.0 * p.scale)  # ~34.1
    assert abs(w.mode_peak - predicted) <= 2


def test_peak_weights_tiny_q_concentrates():
    w = peak_weights(ModelParams(n=10, q=1e-6))
    assert w.mode_peak == 1
    assert w.probs[0] >= 1.0 - 2e-6


def test_peak_weights_failure_report():
    with pytest.raises(WeightTableError):
        peak_weights(ModelParams(n=10**6, q=1.0 - 1e-9), max_len=4096)


def test_geometric_inversion_head():
    # P(0) = 1/2 when q^k = 1/2: values above the threshold map to 0
    klogq = math.log(0.5)
    assert geometric_from_unit(0.75, klogq) == 0
    assert geometric_from_unit(0.51, klogq) == 0
    assert geometric_from_unit(0.49, klogq) == 1
    assert geometric_from_unit(0.26, klogq) == 1
    assert geometric_from_unit(0.24, klogq) == 2


def test_geometric_empirical_mean():
    # mean q^k/(1-q^k) = 0.81/0.19 at q = 0.9, k = 2
    rng = RngStream(42)
    n = 300_000
    total = sum(sample_multiplicity_geometric(0.9, 2, rng) for _ in range(n))
    mean = total / n
    assert abs(mean - 0.81 / 0.19) / (0.81 / 0.19) < 0.01


def test_geometric_rejects_bad_q():
    with pytest.raises(ValueError):
        sample_multiplicity_geometric(1.5, 1, RngStream(0))


def test_bernoulli_threshold_balance():
    # q^k -> 1 gives P(X=1) -> 1/2
    assert abs(bernoulli_threshold(1.0 - 1e-12, 1) - 0.5) < 1e-9


def test_sample_conditioned_tiny_q_is_bare_peak():
    p = ModelParams(n=10, q=1e-9)
    for t in range(20):
        seq = sample_conditioned(p, 4, RngStream(3).child(t))
        assert seq.encode() == "|4|"


def test_sample_conditioned_marginal_law():
    # unconditioned X_1^L is geometric (1-q) q^l
    p = ModelParams.for_size(10)
    counts = {}
    trials = 20_000
    for t in range(trials):
        seq = sample_conditioned(p, 3, RngStream(11).child(t))
        x1 = sum(1 for v in seq.left if v == 1)
        counts[x1] = counts.get(x1, 0) + 1
    expected = {
        l: (1 - p.q) * p.q**l for l in range(max(counts) + 1)
    }
    assert tv_distance_counts(counts, expected) < 0.02


def test_sample_conditioned_strict_structure():
    p = ModelParams.for_size(60, strict=True)
    for t in range(50):
        seq = sample_boltzmann(p, RngStream(9).child(t))
        # frozen dataclass validation enforces strict runs; size recomputes
        assert seq.strict and seq.size >= seq.peak


def test_boltzmann_peak_law_matches_weights():
    p = ModelParams.for_size(400)
    w = peak_weights(p)
    trials = 100_000
    master = RngStream(17)
    seeds = np.array(
        [master.child(t).seed for t in range(trials)], dtype=np.uint64
    )
    from uniseq.kernels_numpy import _units

    u0 = _units(seeds, np.uint64(0))
    peaks = np.searchsorted(w.cdf, u0, side="left") + 1
    counts = {int(m): int(c) for m, c in zip(*np.unique(peaks, return_counts=True))}
    expected = {i + 1: float(pr) for i, pr in enumerate(w.probs) if pr > 0}
    assert tv_distance_counts(counts, expected) < 0.02


def test_boltzmann_mean_size_scales_linearly():
    p = ModelParams.for_size(400)
    w = peak_weights(p)
    # E(N) = sum 2 k q^k/(1-q^k) + E(PK)
    k = np.arange(1, len(w) + 1, dtype=np.float64)
    qk = np.exp(k * math.log(p.q))
    expected = 2.0 * float(np.sum(k * qk / (1.0 - qk)))
    expected += sum((i + 1) * pr for i, pr in enumerate(w.probs))
    sizes = [
        sample_boltzmann(p, RngStream(23).child(t), w).size for t in range(3000)
    ]
    mean = sum(sizes) / len(sizes)
    assert abs(mean - expected) / expected < 0.1


def test_exact_size_returns_target_and_trials():
    p = ModelParams.for_size(30)
    seq, trials = sample_exact_size(p, RngStream(5))
    assert seq.size == 30
    assert trials >= 1


def test_exact_size_budget_error_carries_trials():
    p = ModelParams.for_size(500)
    with pytest.raises(SamplingBudgetError) as err:
        sample_exact_size(p, RngStream(5), max_trials=3)
    assert err.value.trials == 3


def test_python_path_replays_kernel_chunk():
    """The scalar reference sampler and the batch kernels share streams."""
    p = ModelParams.for_size(12)
    keys, _ = sample_keys_batch(p, 60, seed=7)
    w = peak_weights(p)
    chunk = RngStream(7).child(0)
    got = []
    t = 0
    while len(got) < 60:
        seq = sample_boltzmann(p, chunk.child(t), w)
        if seq.size == 12:
            got.append(sequence_key(seq))
        t += 1
    assert got == [int(k) for k in keys]


@pytest.mark.skipif(not kernels._numba_available(), reason="numba missing")
def test_backends_produce_identical_samples():
    for n, strict in ((60, False), (60, True), (200, False)):
        p = ModelParams.for_size(n, strict=strict)
        outputs = {}
        for backend in ("numpy", "numba"):
            prev = kernels.set_backend(backend)
            try:
                outputs[backend] = sample_stats_batch(p, 400, 31, kn=4)
            finally:
                kernels.set_backend(prev)
        assert np.array_equal(outputs["numpy"][0], outputs["numba"][0])
        assert outputs["numpy"][1] == outputs["numba"][1]


def test_stats_batch_is_deterministic():
    p = ModelParams.for_size(50)
    a = sample_stats_batch(p, 300, 12, kn=3)
    b = sample_stats_batch(p, 300, 12, kn=3)
    assert np.array_equal(a[0], b[0]) and a[1] == b[1]


def test_stats_batch_budget_failure():
    p = ModelParams.for_size(200)
    with pytest.raises(SamplingBudgetError):
        sample_stats_batch(p, 1000, 1, max_trials=50)


def test_sequences_batch_round_trip():
    for strict in (False, True):
        p = ModelParams.for_size(25, strict=strict)
        seqs, _ = sample_sequences_batch(p, 50, seed=2)
        assert len(seqs) == 50
        for s in seqs:
            assert s.size == 25 and s.strict == strict


@pytest.mark.parametrize("n", [8, 12])
def test_conditional_uniformity_chi_square(n):
    """Accepted samples with a given peak are uniform over that slice."""
    p = ModelParams.for_size(n)
    keys, _ = sample_keys_batch(p, 100_000, seed=13)
    by_peak = {}
    for s in enumerate_all(n):
        by_peak.setdefault(s.peak, []).append(sequence_key(s))
    vals, counts = np.unique(keys, return_counts=True)
    observed = dict(zip((int(v) for v in vals), (int(c) for c in counts)))
    for peak, cell_keys in by_peak.items():
        obs = np.array([observed.get(k, 0) for k in cell_keys], dtype=np.float64)
        if len(cell_keys) < 2 or obs.sum() < 5 * len(cell_keys):
            continue
        _, pvalue = chisquare(obs)
        assert pvalue > 0.001, f"peak {peak} nonuniform (p={pvalue})"


def test_left_right_exchangeable():
    p = ModelParams.for_size(100)
    stats, _ = sample_stats_batch(p, 4000, 3)
    ranks = stats[:, 1]
    # swap symmetry: the rank sign is a fair coin among nonzero ranks
    nonzero = ranks[ranks != 0]
    frac = (nonzero > 0).mean()
    assert abs(frac - 0.5) < 0.03


def test_partition_sampler_moments():
    rng = RngStream(8)
    cutoff = partition_cutoff(0.5)
    means = np.zeros(cutoff)
    trials = 4000
    for t in range(trials):
        means += sample_partition_boltzmann(0.5, rng.child(t))
    means /= trials
    assert abs(means[0] - 1.0) < 0.05  # E X_1 = q/(1-q) = 1
    assert abs(means[1] - 0.25 / 0.75) < 0.03


def test_partition_sampler_expected_size_near_n():
    n = 10_000
    q = math.exp(-math.pi / math.sqrt(6 * n))
    c = partition_cutoff(q)
    k = np.arange(1, c + 1, dtype=np.float64)
    qk = q**k
    expected = float(np.sum(k * qk / (1 - qk)))
    assert abs(expected - n) / n < 0.02


def test_partition_sampler_cutoff_validation():
    with pytest.raises(ValueError):
        sample_partition_boltzmann(0.9, RngStream(0), cutoff=3)
    out = sample_partition_boltzmann(1e-8, RngStream(1))
    assert out.sum() == 0  # q -> 0 gives the empty partition


def test_acceptance_rate_matches_prediction_midscale():
    from uniseq.asymptotics import acceptance_rate_prediction

    p = ModelParams.for_size(400)
    stats, trials = sample_stats_batch(p, 4000, 21)
    rate = 4000 / trials
    assert abs(rate / acceptance_rate_prediction(400) - 1.0) < 0.25
    assert stats[:, COL_PK].min() >= 1
