// estimator.hpp — annealing-schedule partition-function estimation:
// Bernoulli ratio sampling with exact probabilities from the spectrum (the
// measurement statistics of an idealized block encoding, with injectable
// approximation error) and the product estimator over telescoping ratios.
//
// Shift convention: H' = H - E_min * I >= 0 before any exponent-ratio
// sampling, so e^{-delta H'} has spectrum in (0, 1]; the shift cancels in
// ratios and is restored in reported partition values.
#pragma once

#include <cstdint>
#include <vector>

#include "gibbslab/hamiltonian.hpp"
#include "gibbslab/types.hpp"

namespace gibbslab {

struct AnnealingSchedule {
  std::vector<double> betas;  // strictly ascending, beta_min first
  double ratio_bound = 1.0;   // B with Z'_{beta_i}/Z'_{beta_{i+1}} <= B per step
  int length() const { return static_cast<int>(betas.size()); }
};

// Uniform steps of size c/||H||_inf (last step shortened);
// B computed exactly from the shifted partition values.
AnnealingSchedule build_uniform_schedule(const SpinHamiltonian& h, double beta_min,
                                         double beta_max, double c);

// Exact success probability tr[e^{-(b2-b1) H'} sigma'_{b1}] =
// Z'_{b2} / Z'_{b1} in (0, 1].
double exact_ratio(const SpinHamiltonian& h, double beta_i, double beta_next);

struct RatioSampler {
  int step = 0;
  double p_exact = 1.0;     // from the spectrum
  double p_realized = 1.0;  // p_exact plus the seeded block-error draw
  double block_error = 0.0; // eps_b; realized perturbation lies in [-2 eps_b, 2 eps_b]
  std::uint64_t seed = 0;
};

RatioSampler make_ratio_sampler(const SpinHamiltonian& h, const AnnealingSchedule& schedule,
                                int step, double block_error, std::uint64_t seed);

std::vector<int> sample_ratio(const RatioSampler& sampler, int count);

struct EstimateReport {
  double estimate = 0.0;   // Z-hat at beta_max (shift restored)
  double target = 0.0;     // exact Z at beta_max
  double relative_error = 0.0;
  double ratio_bound = 1.0;       // B of the schedule
  double ratio_bound_used = 1.0;  // B or 2B (when block error is injected)
  std::vector<long long> samples_per_step;
  std::vector<double> step_means;
  std::vector<double> step_second_moment_ratio;  // E[X^2]/E[X]^2 empirical
  std::uint64_t seed = 0;
  bool failed = false;  // a step with an all-zero sample
  // success-probability aggregation (filled by the harness)
  int trials = 0;
  int successes = 0;
  double success_fraction = 0.0;
  double success_lower_confidence = 0.0;  // one-sided 99% binomial lower bound
  std::vector<int> trial_outcomes;
  std::vector<double> trial_estimates;
};

// Product estimator: per step, ceil(16 * B_eff * l / eps^2) Bernoulli samples
// (B_eff = 2B when eps_b > 0, else B); Z-hat = Z_{beta_min} * prod(means),
// shift restored.
EstimateReport dyer_frieze_estimate(const SpinHamiltonian& h, const AnnealingSchedule& schedule,
                                    double eps, double eps_b, std::uint64_t seed);

struct HarnessConfig {
  double beta_min = 0.0;
  double beta_max = 0.5;
  double c = 0.25;
  double eps = 0.1;
  double eps_b = 0.0;
  std::uint64_t seed = 1;
};

// Repeated estimates with per-trial derived seeds; success = relative error
// <= eps; reports the exact one-sided 99% (Clopper-Pearson) lower confidence
// bound on the success probability.
EstimateReport success_probability_harness(const SpinHamiltonian& h, const HarnessConfig& config,
                                           int trials);

// Exact one-sided binomial lower confidence bound (Clopper-Pearson).
double binomial_lower_confidence(int successes, int trials, double confidence);

}  // namespace gibbslab
