"""Off-grid harmonic recovery from compressive measurements.

The central entry point is :func:`run_acs`, which alternates between an
l2-l1 coefficient solve on a perturbed harmonic dictionary and per-frequency
one-dimensional searches that move the dictionary atoms onto the signal's
true frequencies.  Baselines, synthetic scene generation, evaluation metrics
and the surrogate-cost convexity checks live in the submodules re-exported
here.
"""

from .acs import AcsConfig, RecoveryResult, SupportSet, reconstruct, run_acs, run_gpsr_baseline, support_set
from .dictionary import (
    PerturbedDictionary,
    atom_frequency,
    build_dictionary,
    pair_indices,
    theta_bound,
    update_column_pair,
)
from .freqsearch import SearchState, apply_perturbation, cost_at, default_search_tol, golden_search
from .metrics import (
    ToneSet,
    default_epsilon,
    extract_tones,
    normalized_rmse,
    support_err,
    tones_from_scene,
    tones_within_epsilon,
)
from .signals import (
    HarmonicScene,
    Measurement,
    SensingOperator,
    Tone,
    gaussian_sensing,
    generate_scene,
    measure,
    noise_sigma_for_snr,
    temporal_subsample_sensing,
)
from .solver import L1Problem, SolverReport, compute_lambda, optimality_gap, solve_l2l1
from .surrogate import (
    CostComparison,
    CostProbe,
    compare_exact_vs_surrogate,
    convexity_root,
    curvature_closed_form,
    tone_discrepancy_energy,
    tone_discrepancy_sum,
)

__version__ = "0.1.0"

__all__ = [
    "AcsConfig",
    "CostComparison",
    "CostProbe",
    "HarmonicScene",
    "L1Problem",
    "Measurement",
    "PerturbedDictionary",
    "RecoveryResult",
    "SearchState",
    "SensingOperator",
    "SolverReport",
    "SupportSet",
    "Tone",
    "ToneSet",
    "apply_perturbation",
    "atom_frequency",
    "build_dictionary",
    "compare_exact_vs_surrogate",
    "compute_lambda",
    "convexity_root",
    "cost_at",
    "curvature_closed_form",
    "default_epsilon",
    "default_search_tol",
    "extract_tones",
    "gaussian_sensing",
    "generate_scene",
    "golden_search",
    "measure",
    "noise_sigma_for_snr",
    "normalized_rmse",
    "optimality_gap",
    "pair_indices",
    "reconstruct",
    "run_acs",
    "run_gpsr_baseline",
    "solve_l2l1",
    "support_err",
    "support_set",
    "temporal_subsample_sensing",
    "theta_bound",
    "tone_discrepancy_energy",
    "tone_discrepancy_sum",
    "tones_from_scene",
    "tones_within_epsilon",
    "update_column_pair",
]
