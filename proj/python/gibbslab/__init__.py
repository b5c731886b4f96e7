"""Detailed-balanced Gibbs-sampler laboratory: Python surface over the C++ core."""

from gibbslab._core import (
    AnnealingSchedule,
    EstimateReport,
    GeneratorMatrix,
    LatticeSpec,
    SpinHamiltonian,
    ThresholdLedger,
    beta_star,
    build_uniform_schedule,
    delta_tail,
    depolarizing_rate,
    dyer_frieze_estimate,
    evolve_state,
    exact_ratio,
    fixed_point,
    full_generator,
    gibbs_state,
    kappa_local,
    kappa_long_range,
    kms_residual,
    load_model,
    local_generator,
    mixing_time,
    parse_model,
    partition_value,
    spectral_gap,
    success_probability_harness,
    zeta_bound,
)

__all__ = [
    "AnnealingSchedule",
    "EstimateReport",
    "GeneratorMatrix",
    "LatticeSpec",
    "SpinHamiltonian",
    "ThresholdLedger",
    "beta_star",
    "build_uniform_schedule",
    "delta_tail",
    "depolarizing_rate",
    "dyer_frieze_estimate",
    "evolve_state",
    "exact_ratio",
    "fixed_point",
    "full_generator",
    "gibbs_state",
    "kappa_local",
    "kappa_long_range",
    "kms_residual",
    "load_model",
    "local_generator",
    "mixing_time",
    "parse_model",
    "partition_value",
    "spectral_gap",
    "success_probability_harness",
    "zeta_bound",
]
