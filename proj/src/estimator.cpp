// estimator.cpp — annealing schedules, exact-probability Bernoulli ratio
// sampling with injectable block error, and the telescoping product estimator.
#include "gibbslab/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gibbslab/rng.hpp"

namespace gibbslab {

namespace {

// Partition value of the positive-shifted Hamiltonian H' = H - E_min * I.
double shifted_partition(const SpinHamiltonian& h, double beta) {
  const double e_min = h.evals.minCoeff();
  double z = 0.0;
  for (int i = 0; i < h.dim(); ++i) z += std::exp(-beta * (h.evals(i) - e_min));
  return z;
}

constexpr std::uint64_t kStepStream = 0x73616d706c657221ull;   // per-step draw stream
constexpr std::uint64_t kNoiseStream = 0x626c6f636b657272ull;  // block-error stream
constexpr std::uint64_t kTrialStream = 0x747269616c736564ull;  // per-trial seeds

}  // namespace

AnnealingSchedule build_uniform_schedule(const SpinHamiltonian& h, double beta_min,
                                         double beta_max, double c) {
  if (!(beta_min >= 0.0) || beta_max < beta_min || !(c > 0.0))
    throw std::invalid_argument("build_uniform_schedule: need 0 <= beta_min <= beta_max, c > 0");
  AnnealingSchedule schedule;
  if (beta_max == beta_min) {
    schedule.betas = {beta_min};
    schedule.ratio_bound = 1.0;
    return schedule;
  }
  const double h_norm = std::max(std::abs(h.evals.minCoeff()), std::abs(h.evals.maxCoeff()));
  if (!(h_norm > 0.0))
    throw std::invalid_argument("build_uniform_schedule: zero Hamiltonian has a trivial schedule");
  const double step = c / h_norm;
  const int l = static_cast<int>(std::ceil((beta_max - beta_min) * h_norm / c)) + 1;
  schedule.betas.reserve(l);
  for (int i = 0; i < l - 1; ++i) schedule.betas.push_back(beta_min + i * step);
  schedule.betas.push_back(beta_max);
  if (schedule.betas[l - 1] <= schedule.betas[l - 2])
    schedule.betas.erase(schedule.betas.end() - 2);  // final shortened step collapsed

  schedule.ratio_bound = 1.0;
  for (size_t i = 0; i + 1 < schedule.betas.size(); ++i) {
    const double ratio = shifted_partition(h, schedule.betas[i]) /
                         shifted_partition(h, schedule.betas[i + 1]);
    schedule.ratio_bound = std::max(schedule.ratio_bound, ratio);
  }
  return schedule;
}

double exact_ratio(const SpinHamiltonian& h, double beta_i, double beta_next) {
  if (beta_next < beta_i) throw std::invalid_argument("exact_ratio: beta_next >= beta_i required");
  // tr[e^{-(b2-b1) H'} sigma'_{b1}] evaluated spectrally = Z'_{b2} / Z'_{b1}.
  const double e_min = h.evals.minCoeff();
  double num = 0.0, den = 0.0;
  for (int i = 0; i < h.dim(); ++i) {
    const double e = h.evals(i) - e_min;
    num += std::exp(-beta_next * e);
    den += std::exp(-beta_i * e);
  }
  return num / den;
}

RatioSampler make_ratio_sampler(const SpinHamiltonian& h, const AnnealingSchedule& schedule,
                                int step, double block_error, std::uint64_t seed) {
  if (step < 0 || step + 1 >= schedule.length())
    throw std::invalid_argument("make_ratio_sampler: step out of range");
  if (block_error < 0.0) throw std::invalid_argument("make_ratio_sampler: block_error >= 0");
  RatioSampler sampler;
  sampler.step = step;
  sampler.block_error = block_error;
  sampler.seed = seed;
  sampler.p_exact = exact_ratio(h, schedule.betas[step], schedule.betas[step + 1]);
  sampler.p_realized = sampler.p_exact;
  if (block_error > 0.0) {
    Rng noise(derive_seed(seed, static_cast<std::uint64_t>(step), kNoiseStream));
    const double perturbation = (2.0 * noise.uniform() - 1.0) * 2.0 * block_error;
    sampler.p_realized = std::clamp(sampler.p_exact + perturbation, 0.0, 1.0);
  }
  return sampler;
}

std::vector<int> sample_ratio(const RatioSampler& sampler, int count) {
  if (count < 0) throw std::invalid_argument("sample_ratio: count >= 0");
  Rng rng(derive_seed(sampler.seed, static_cast<std::uint64_t>(sampler.step), kStepStream));
  std::vector<int> draws(count);
  for (int i = 0; i < count; ++i) draws[i] = rng.bernoulli(sampler.p_realized) ? 1 : 0;
  return draws;
}

EstimateReport dyer_frieze_estimate(const SpinHamiltonian& h, const AnnealingSchedule& schedule,
                                    double eps, double eps_b, std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("dyer_frieze_estimate: eps in (0,1)");
  EstimateReport report;
  report.seed = seed;
  report.ratio_bound = schedule.ratio_bound;
  report.ratio_bound_used = eps_b > 0.0 ? 2.0 * schedule.ratio_bound : schedule.ratio_bound;

  const double beta_min = schedule.betas.front();
  const double beta_max = schedule.betas.back();
  const double e_min = h.evals.minCoeff();
  // Z(beta_max) = e^{-beta_max E_min} * Z'(beta_min) * prod(shifted ratios)
  const double z_start = std::exp(-beta_max * e_min) * shifted_partition(h, beta_min);
  report.target = partition_value(h, beta_max);

  const int steps = schedule.length() - 1;
  double product = 1.0;
  if (steps > 0) {
    const long long budget = static_cast<long long>(
        std::ceil(16.0 * report.ratio_bound_used * steps / (eps * eps)));
    for (int i = 0; i < steps; ++i) {
      RatioSampler sampler = make_ratio_sampler(h, schedule, i, eps_b, seed);
      const std::vector<int> draws = sample_ratio(sampler, static_cast<int>(budget));
      long long ones = 0;
      for (int d : draws) ones += d;
      const double mean = static_cast<double>(ones) / static_cast<double>(budget);
      report.samples_per_step.push_back(budget);
      report.step_means.push_back(mean);
      // for {0,1} draws the empirical second moment equals the mean
      report.step_second_moment_ratio.push_back(mean > 0.0 ? 1.0 / mean : 0.0);
      if (mean == 0.0) report.failed = true;
      product *= mean;
    }
  }
  report.estimate = report.failed ? 0.0 : z_start * product;
  report.relative_error = std::abs(report.estimate - report.target) / report.target;
  return report;
}

EstimateReport success_probability_harness(const SpinHamiltonian& h, const HarnessConfig& config,
                                           int trials) {
  if (trials < 100) throw std::invalid_argument("success_probability_harness: trials >= 100");
  const AnnealingSchedule schedule =
      build_uniform_schedule(h, config.beta_min, config.beta_max, config.c);
  EstimateReport aggregate;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed =
        derive_seed(config.seed, static_cast<std::uint64_t>(t), kTrialStream);
    EstimateReport report =
        dyer_frieze_estimate(h, schedule, config.eps, config.eps_b, trial_seed);
    if (t == 0) aggregate = report;  // keep one representative single-run record
    const bool success = !report.failed && report.relative_error <= config.eps;
    aggregate.trial_outcomes.push_back(success ? 1 : 0);
    aggregate.trial_estimates.push_back(report.estimate);
    aggregate.successes += success ? 1 : 0;
  }
  aggregate.trials = trials;
  aggregate.success_fraction = static_cast<double>(aggregate.successes) / trials;
  aggregate.success_lower_confidence =
      binomial_lower_confidence(aggregate.successes, trials, 0.99);
  return aggregate;
}

double binomial_lower_confidence(int successes, int trials, double confidence) {
  if (trials <= 0 || successes < 0 || successes > trials)
    throw std::invalid_argument("binomial_lower_confidence: bad counts");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("binomial_lower_confidence: confidence in (0,1)");
  if (successes == 0) return 0.0;
  const double alpha = 1.0 - confidence;

  // log C(n,k) via lgamma for a numerically stable exact upper tail
  auto upper_tail = [&](double p) {  // P(X >= successes | p), increasing in p
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    double tail = 0.0;
    for (int k = successes; k <= trials; ++k) {
      const double log_term = std::lgamma(trials + 1.0) - std::lgamma(k + 1.0) -
                              std::lgamma(trials - k + 1.0) + k * std::log(p) +
                              (trials - k) * std::log1p(-p);
      tail += std::exp(log_term);
    }
    return std::min(tail, 1.0);
  };

  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (upper_tail(mid) < alpha)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace gibbslab
