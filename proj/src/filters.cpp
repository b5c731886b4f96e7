// filters.cpp — closed-form frequency kernels (derivations in filters.hpp).
#include "gibbslab/filters.hpp"

#include <cmath>
#include <stdexcept>

namespace gibbslab {

FilterFunctions::FilterFunctions(double beta_in) : beta(beta_in) {
  if (!(beta > 0.0)) throw std::invalid_argument("FilterFunctions: beta must be > 0");
}

double FilterFunctions::f(double t) const {
  return std::exp(-t * t / (beta * beta)) * std::sqrt(std::sqrt(2.0 / kPi) / beta);
}

double FilterFunctions::gamma(double w) const {
  const double x = beta * w + 1.0;
  return std::exp(-0.5 * x * x);
}

Complex FilterFunctions::b2(double t) const {
  return (1.0 / (2.0 * kPi)) * std::sqrt(1.0 / kPi) *
         std::exp(Complex(-4.0 * t * t, -2.0 * t));
}

double FilterFunctions::f_hat(double u) const {
  return std::sqrt(beta) * std::pow(2.0 * kPi, -0.25) * std::exp(-beta * beta * u * u / 4.0);
}

Complex FilterFunctions::b1_hat(double x) const {
  const double c = kPi * std::exp(0.125) / (2.0 * std::sqrt(2.0));
  const double diff = std::exp(-(x - 1.0) * (x - 1.0) / 8.0) - std::exp(-(x + 1.0) * (x + 1.0) / 8.0);
  return Complex(0.0, c / std::cosh(x / 4.0) * diff);
}

double FilterFunctions::b2_hat(double y) const {
  return (1.0 / (4.0 * kPi)) * std::exp(-(y - 2.0) * (y - 2.0) / 16.0);
}

double FilterFunctions::gamma_overlap(double nu1, double nu2) const {
  const double x1 = beta * nu1;
  const double x2 = beta * nu2;
  const double mid = 0.5 * (x1 + x2) - 1.0;
  const double expo = 0.25 * mid * mid - 0.5 - 0.25 * (x1 * x1 + x2 * x2);
  return std::exp(expo) / std::sqrt(2.0);
}

double gamma_overlap(double nu1, double nu2, const FilterFunctions& filters) {
  return filters.gamma_overlap(nu1, nu2);
}

}  // namespace gibbslab
