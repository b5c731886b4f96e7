// filters.hpp — frequency kernels of the detailed-balanced generator.
//
// Time-domain profiles (all at inverse temperature beta):
//   f(t)     = exp(-t^2/beta^2) * sqrt(beta^{-1} sqrt(2/pi))   (L2-normalized)
//   gamma(w) = exp(-(beta*w + 1)^2 / 2)                        (weight)
//   b1(t)    = 2 sqrt(pi) e^{1/8} (sech(2 pi .) * sin(-.)exp(-2 .^2))(t)
//   b2(t)    = (1/(2 pi)) sqrt(1/pi) exp(-4 t^2 - 2 i t)
// (b1, b2 are dimensionless profiles evaluated at rescaled times.)
//
// Derived closed forms (all validated against quadrature oracles in the
// test suite before anything downstream uses them):
//   f_hat(u) := (1/sqrt(2 pi)) ∫ f(t) e^{-iut} dt
//             = sqrt(beta) (2 pi)^{-1/4} exp(-beta^2 u^2 / 4)
//   gamma_overlap(v1, v2) := ∫ gamma(w) f_hat(v1 - w) f_hat(v2 - w) dw
//             = 2^{-1/2} exp( ((x1+x2)/2 - 1)^2/4 - 1/2 - (x1^2+x2^2)/4 ),
//               x_i = beta v_i.  gamma_overlap(0,0) = 1/(sqrt(2) e^{1/4}).
//   b1_hat(x) := ∫ b1(u) e^{-ixu} du
//             = i pi e^{1/8} / (2 sqrt(2)) * sech(x/4)
//               * ( exp(-(x-1)^2/8) - exp(-(x+1)^2/8) )
//     via the convolution theorem: the sech factor transforms to
//     (1/2) sech(x/4) and sin(-u)exp(-2u^2) to
//     (i/2) sqrt(pi/2) (exp(-(x-1)^2/8) - exp(-(x+1)^2/8)).
//     b1 is odd, so b1_hat is purely imaginary and b1_hat(0) = 0.
//   b2_hat(y) := ∫ b2(v) e^{+iyv} dv = (1/(4 pi)) exp(-(y-2)^2/16).
#pragma once

#include "gibbslab/types.hpp"

namespace gibbslab {

struct FilterFunctions {
  double beta = 1.0;

  explicit FilterFunctions(double beta_in);

  // Time/frequency-domain defining profiles (oracle side).
  double f(double t) const;
  double gamma(double w) const;
  Complex b2(double t) const;
  // b1 requires a convolution integral and is therefore provided only
  // through the quadrature oracles in the tests.

  // Closed-form transforms (production side).
  double f_hat(double u) const;
  Complex b1_hat(double x) const;  // purely imaginary, odd
  double b2_hat(double y) const;
  double gamma_overlap(double nu1, double nu2) const;
};

// Free-function form used by the generator assembly.
double gamma_overlap(double nu1, double nu2, const FilterFunctions& filters);

}  // namespace gibbslab
