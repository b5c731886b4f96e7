// certificates.hpp — oscillator-norm machinery, locality (Lieb-Robinson)
// defect checks, generator-truncation distances, and the explicit
// threshold-constant ledger whose inequality kappa < lambda certifies an
// n-independent decay rate.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gibbslab/generator.hpp"
#include "gibbslab/hamiltonian.hpp"
#include "gibbslab/types.hpp"

namespace gibbslab {

// delta_a(X) = X - (1/2) I_a ⊗ tr_a(X).
Matrix delta_site(const Matrix& x, int a, int n);

// |||X||| = sum_a ||delta_a(X)||_inf; bounded by 2n for ||X||_inf <= 1.
double oscillator_norm(const Matrix& x, int n);

struct OscillatorReport {
  std::string observable_id;
  std::vector<double> times;
  std::vector<double> norms;
  std::vector<std::vector<double>> site_breakdown;  // per time, per site
  double fitted_rate = 0.0;   // least squares on log |||X_t|||
  bool bound_checked = false; // true when a ledger rate lambda-kappa was supplied
  bool bound_holds = false;   // |||X_t||| <= e^{-(lambda-kappa)t} |||X||| + 1e-8
};

// Evolve X in the Heisenberg picture and track the oscillator norm. If
// decay_rate >= 0 is supplied (lambda - kappa from a ledger), the exponential
// envelope is asserted into the report.
OscillatorReport oscillator_decay(const Matrix& gen_adjoint, int n_sites, const Matrix& x,
                                  const std::vector<double>& times, double decay_rate = -1.0,
                                  const std::string& id = "");

// Locality defect of the Heisenberg evolution of the site-a Pauli alpha:
//   defect = || e^{iHt} A e^{-iHt} - e^{iH_r t} A e^{-iH_r t} ||_inf
// with H_r the restriction of H to the l1 ball of radius r around a.
// For (k,l)-local H the returned bound is (2 J |t|)^r / r!; long-range
// bounds are handled by lr_defect_long_range.
struct DefectResult {
  double defect = 0.0;
  double bound = 0.0;
};
DefectResult lr_defect(const SpinHamiltonian& h, int a, int alpha, int r, double t);

// Power-law bound C_H |t|^{D+1} (r - v_lr t)^{D - nu}; requires r > v_lr * t.
DefectResult lr_defect_long_range(const SpinHamiltonian& h, int a, int alpha, int r, double t,
                                  double c_h, double v_lr, double nu);

// Sampled lower bound on the induced inf->inf distance between two
// Heisenberg generators: max over unit-norm Hermitian probes of
// ||(L1† - L2†)(X)||_inf. Probes: Pauli strings + Haar-rotated projector
// differences, with a few greedy ascent refinements.
double generator_distance_lower_bound(const Matrix& l1_adjoint, const Matrix& l2_adjoint,
                                      int n_sites, int samples, std::uint64_t seed,
                                      int ascent_steps = 5);

// Truncation-distance bound zeta(r) at coupling x = beta*J:
//   three_term = 7 g^r + 23 u e^{-r^2/(4 e^2 u^2)} + 112 e^{-pi r/(e u)},
//   with g = sqrt(x)/(1+sqrt(x)), u = sqrt(x)(1+sqrt(x));
//   simplified = 14 g^r (valid for beta*J <= 1/200).
struct ZetaBound {
  double three_term = 0.0;
  double simplified = 0.0;
};
ZetaBound zeta_bound(int r, double beta_j);

// Tail sum Delta(r0) = sum_{r >= r0} zeta(r) <= 14 g^{r0} / (1 - g).
double delta_tail(int r0, double beta_j);

struct ThresholdLedger {
  std::string regime;  // "local" | "long-range"
  // inputs
  int dimension = 1;
  double j = 0.0;      // local coupling J (local regime)
  double g = 0.0;      // long-range coupling scale
  double nu = 0.0;     // long-range decay exponent
  double k_const = 0.0;  // user-supplied long-range truncation constant
  double beta = 0.0;
  int r0 = 0;
  // derived values
  double base = 0.0;       // g(betaJ) or (beta*g)^{(D+1)/2}
  double eta = 0.0;        // beta*J or beta*g
  double delta_r0 = 0.0;   // Delta(r0)
  double f_r0 = 0.0;       // tail assembly f(r0)
  double kappa = 0.0;
  double lambda = 0.0;     // 1/(sqrt(2) e^{1/4})
  double margin = 0.0;     // lambda - kappa
  double truncation_error = 0.0;  // bound on the series tail dropped
  bool certified = false;         // margin > 0 and series converged
  bool divergent = false;         // long-range with nu <= 4D+2
  std::vector<std::pair<int, double>> zeta_table;  // (r, zeta simplified)
};

// kappa = 4 (2 r0 + 1)^{2D} eta + f(r0) with
// f(r0) = 5 (2r0+1)^{2D} Delta(r0)
//       + (5 + 2 r0 + 2 (2r0+1)^D) sum_{l >= r0} (2l+1)^{2D-1} Delta(l)
//       + 2 sum_{l >= r0} (l - r0 + 1) (2l+1)^{2D-2} Delta(l).
ThresholdLedger kappa_local(int dimension, double j, double beta, int r0);

// Same assembly with Delta(l) = K (beta g)^{(D+1)/2} l^{-(nu - 2D - 2)};
// refuses certification (divergent = true) when nu <= 4D + 2.
ThresholdLedger kappa_long_range(int dimension, double nu, double g, double k_const,
                                 double beta, int r0);

// Largest beta (bisection) with kappa(beta, r0) < lambda for some r0 in
// [r0_min, r0_max]; returns the certifying ledger. regime: "local" uses
// (dimension, j); "long-range" uses (dimension, nu, g, k_const).
struct BetaStarResult {
  double beta_star = 0.0;
  int r0 = 0;
  ThresholdLedger ledger;  // evaluated at beta_star with the best r0
};
BetaStarResult beta_star_search(const std::string& regime, int dimension, double j_or_g,
                                double nu = 0.0, double k_const = 0.0, int r0_min = 1,
                                int r0_max = 60);

}  // namespace gibbslab
