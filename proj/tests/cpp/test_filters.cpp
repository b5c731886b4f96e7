#include <doctest.h>

#include <cmath>
#include <complex>

#include "gibbslab/filters.hpp"
#include "gibbslab/quadrature.hpp"
#include "gibbslab/rng.hpp"
#include "gibbslab/types.hpp"

using namespace gibbslab;

namespace {

// Quadrature oracles for the closed-form transforms. These integrate the
// defining expressions directly; the production code never does.

Complex f_hat_oracle(const FilterFunctions& filters, double u) {
  const double beta = filters.beta;
  return integrate_complex(
      [&](double t) {
        return filters.f(t) * std::exp(Complex(0.0, -u * t)) / std::sqrt(2.0 * kPi);
      },
      -10.0 * beta, 10.0 * beta, 1e-12);
}

double gamma_overlap_oracle(const FilterFunctions& filters, double nu1, double nu2) {
  const double beta = filters.beta;
  const double lo = std::min({nu1, nu2, 0.0}) - 40.0 / beta;
  const double hi = std::max({nu1, nu2, 0.0}) + 40.0 / beta;
  return integrate(
      [&](double w) { return filters.gamma(w) * filters.f_hat(nu1 - w) * filters.f_hat(nu2 - w); },
      lo, hi, 1e-11);
}

// b1 as defined: 2 sqrt(pi) e^{1/8} (sech(2 pi .) * sin(-.)e^{-2 .^2})(u).
double b1_time_domain(double u) {
  const double prefactor = 2.0 * std::sqrt(kPi) * std::exp(0.125);
  return prefactor * integrate(
                         [&](double s) {
                           const double v = u - s;
                           return 1.0 / std::cosh(2.0 * kPi * s) * std::sin(-v) *
                                  std::exp(-2.0 * v * v);
                         },
                         -6.0, 6.0, 1e-12);
}

Complex b1_hat_oracle(double x) {
  return integrate_complex(
      [&](double u) { return b1_time_domain(u) * std::exp(Complex(0.0, -x * u)); }, -9.0, 9.0,
      1e-10);
}

Complex b2_hat_oracle(const FilterFunctions& filters, double y) {
  return integrate_complex([&](double v) { return filters.b2(v) * std::exp(Complex(0.0, y * v)); },
                           -6.0, 6.0, 1e-12);
}

}  // namespace

TEST_CASE("f_hat matches its quadrature oracle across beta") {
  for (double beta : {0.05, 0.3, 1.0}) {
    FilterFunctions filters(beta);
    for (int i = -10; i <= 10; ++i) {
      const double u = i * 2.0 / beta;  // grid covering |u| <= 20/beta
      const Complex oracle = f_hat_oracle(filters, u);
      CHECK(std::abs(oracle.imag()) <= 1e-10);  // f is even, transform is real
      CHECK(std::abs(filters.f_hat(u) - oracle.real()) <= 1e-8);
    }
  }
}

TEST_CASE("gamma_overlap matches its quadrature oracle") {
  Rng rng(31);
  for (double beta : {0.05, 0.3, 1.0}) {
    FilterFunctions filters(beta);
    for (int trial = 0; trial < 8; ++trial) {
      const double nu1 = rng.uniform(-6.0 / beta, 6.0 / beta);
      const double nu2 = rng.uniform(-6.0 / beta, 6.0 / beta);
      CHECK(std::abs(filters.gamma_overlap(nu1, nu2) - gamma_overlap_oracle(filters, nu1, nu2)) <=
            1e-9);
    }
  }
}

TEST_CASE("gamma_overlap structure") {
  FilterFunctions filters(0.7);
  Rng rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const double nu1 = rng.uniform(-8.0, 8.0);
    const double nu2 = rng.uniform(-8.0, 8.0);
    const double g12 = filters.gamma_overlap(nu1, nu2);
    // swap symmetry (kernel is real)
    CHECK(g12 == doctest::Approx(filters.gamma_overlap(nu2, nu1)).epsilon(1e-14));
    // diagonal positivity and Cauchy-Schwarz
    const double g11 = filters.gamma_overlap(nu1, nu1);
    const double g22 = filters.gamma_overlap(nu2, nu2);
    CHECK(g11 > 0.0);
    CHECK(std::abs(g12) <= std::sqrt(g11 * g22) + 1e-12);
  }
}

TEST_CASE("zero-frequency gamma_overlap is the depolarizing rate at every beta") {
  for (double beta : {0.05, 0.3, 1.0, 4.0}) {
    FilterFunctions filters(beta);
    CHECK(filters.gamma_overlap(0.0, 0.0) ==
          doctest::Approx(depolarizing_rate()).epsilon(1e-14));
  }
}

TEST_CASE("b1_hat matches the nested-quadrature oracle") {
  FilterFunctions filters(1.0);
  for (double x : {-6.0, -3.0, -1.0, -0.3, 0.0, 0.5, 2.0, 4.0, 7.0}) {
    const Complex oracle = b1_hat_oracle(x);
    CHECK(std::abs(filters.b1_hat(x) - oracle) <= 1e-8);
  }
}

TEST_CASE("b1_hat is odd and purely imaginary") {
  FilterFunctions filters(1.0);
  CHECK(std::abs(filters.b1_hat(0.0)) <= 1e-15);
  for (double x : {0.4, 1.7, 5.0, 12.0}) {
    const Complex plus = filters.b1_hat(x);
    const Complex minus = filters.b1_hat(-x);
    CHECK(std::abs(plus.real()) <= 1e-15);
    CHECK(std::abs(plus + minus) <= 1e-15);
  }
}

TEST_CASE("b2_hat matches its quadrature oracle") {
  FilterFunctions filters(1.0);
  for (double y : {-15.0, -4.0, -1.0, 0.0, 0.7, 2.0, 3.5, 9.0, 18.0}) {
    const Complex oracle = b2_hat_oracle(filters, y);
    CHECK(std::abs(oracle.imag()) <= 1e-10);
    CHECK(std::abs(filters.b2_hat(y) - oracle.real()) <= 1e-8);
  }
}

TEST_CASE("coherent profiles are L1-bounded by one") {
  FilterFunctions filters(1.0);
  const double l1_b1 = integrate([&](double u) { return std::abs(b1_time_domain(u)); }, -9.0, 9.0,
                                 1e-9);
  CHECK(l1_b1 <= 1.0);
  const double l1_b2 =
      integrate([&](double v) { return std::abs(filters.b2(v)); }, -6.0, 6.0, 1e-11);
  CHECK(l1_b2 <= 1.0);
}

TEST_CASE("the b1 profile integrates to zero (odd), so the b1*b2 product integral vanishes") {
  // The separable double integral of b1(t) b2(t') factorizes; the b1 factor
  // is zero by oddness, so the product cannot supply the depolarizing rate.
  // The rate used throughout is gamma_overlap(0,0) = 1/(sqrt(2) e^{1/4}).
  const double integral_b1 = integrate([&](double u) { return b1_time_domain(u); }, -9.0, 9.0,
                                       1e-10);
  CHECK(std::abs(integral_b1) <= 1e-9);
  CHECK(depolarizing_rate() == doctest::Approx(1.0 / (std::sqrt(2.0) * std::exp(0.25))));
}

TEST_CASE("filters reject nonpositive beta") {
  CHECK_THROWS(FilterFunctions(0.0));
  CHECK_THROWS(FilterFunctions(-1.0));
}
