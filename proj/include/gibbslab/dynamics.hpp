// dynamics.hpp — semigroup evolution, fixed points, spectral gaps, mixing
// times, and detailed-balance residuals for assembled generators.
#pragma once

#include <cstdint>
#include <vector>

#include "gibbslab/generator.hpp"
#include "gibbslab/types.hpp"

namespace gibbslab {

struct EvolutionResult {
  std::vector<double> times;
  std::vector<Matrix> states;  // or observables in the Heisenberg picture
  std::vector<double> trace_distances;  // vs the reference, when supplied
};

// Schrödinger evolution e^{tL}(rho0) at the given ascending times.
// method: "auto" (spectral when diagonalizable, expm otherwise),
// "expm" (scaling-and-squaring per time), or "spectral".
EvolutionResult evolve_state(const GeneratorMatrix& gen, const Matrix& rho0,
                             const std::vector<double>& times,
                             const Matrix* reference = nullptr,
                             const std::string& method = "auto");

// Heisenberg evolution e^{tL†}(X).
EvolutionResult evolve_observable(const Matrix& gen_adjoint, const Matrix& x,
                                  const std::vector<double>& times,
                                  const std::string& method = "auto");

// Null-space element of the superoperator, reshaped and normalized to a
// density matrix. Throws std::runtime_error when the null space is
// degenerate (dimension != 1 at the singular-value threshold).
Matrix fixed_point(const GeneratorMatrix& gen, double sv_threshold = 1e-8);

// gap = -max real part of the nonzero spectrum.
struct GapResult {
  double gap = 0.0;
  Vector spectrum;
};
GapResult spectral_gap(const GeneratorMatrix& gen);

// Smallest t (geometric grid, ratio 1.25, then bisection to 1e-3 relative)
// with max over the initial set of || e^{tL}(rho) - sigma ||_1 <= eps.
// Defaults: all computational basis states plus 20 seeded Haar-random pure
// states. Throws std::runtime_error when t_cap is exceeded.
struct MixingResult {
  double time = 0.0;
  double eps = 0.0;
  int n_initial_states = 0;
};
MixingResult mixing_time(const GeneratorMatrix& gen, double eps,
                         const std::vector<Matrix>& initial_set = {},
                         std::uint64_t seed = 17, double t_cap = 1e4);

// Max over sampled Hermitian pairs (X, Y) of the KMS detailed-balance defect
//   | <X, L†(Y)>_sigma - <L†(X), Y>_sigma |
// normalized by ||X||_inf ||Y||_inf ||L†||_sampled, where
// <X, Y>_sigma = tr(X† sigma^{1/2} Y sigma^{1/2}).
double kms_residual(const GeneratorMatrix& gen, const Matrix& sigma, int samples,
                    std::uint64_t seed);

}  // namespace gibbslab
