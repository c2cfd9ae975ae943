"""Verification lab for random unimodal sequences.

Exact q-series and counting oracles, conditioned Boltzmann samplers
with exact-size rejection, closed-form limit laws, saddle-point
asymptotics, and seeded experiments tying them together.
"""

from .constants import A, B, EULER_GAMMA
from .exact import (
    UnimodalSequence,
    count_p,
    count_table_u_m,
    count_table_ustar_m,
    count_u,
    count_u_m,
    count_ustar,
    count_ustar_m,
    enumerate_all,
)
from .empirical import EmpiricalDistribution, ks_distance, tv_distance_counts
from .experiments import ExperimentConfig, run_experiment
from .rng import RngStream
from .sampler import (
    ModelParams,
    PeakWeights,
    SamplingBudgetError,
    WeightTableError,
    peak_weights,
    sample_boltzmann,
    sample_conditioned,
    sample_exact_size,
    sample_multiplicity_geometric,
    sample_partition_boltzmann,
    sample_stats_batch,
)
from .series import (
    TruncatedSeries,
    bell_complete,
    mp_series_direct,
    mp_series_recursive,
    mu_series_bell,
    mu_series_direct,
    partition_series,
    pochhammer,
    s_series,
    strongly_unimodal_series,
    unimodal_series,
)
from .stats import SequenceStats, compute_stats, normalize

__version__ = "0.1.0"
