#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gibbslab/dynamics.hpp"
#include "gibbslab/generator.hpp"
#include "gibbslab/hamiltonian.hpp"
#include "gibbslab/linalg.hpp"
#include "gibbslab/rng.hpp"

using namespace gibbslab;

namespace {

SpinHamiltonian tfi_chain(int n, double field) {
  LatticeSpec lat{1, n - 1};
  std::vector<InteractionTerm> terms;
  for (int i = 0; i + 1 < n; ++i) terms.push_back({{i, i + 1}, kron(pauli(3), pauli(3))});
  for (int i = 0; i < n; ++i) terms.push_back({{i}, field * pauli(1)});
  return build_hamiltonian(lat, terms);
}

double trace_dist(const Matrix& a, const Matrix& b) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a - b) + 0.5 * (a - b).adjoint());
  return es.eigenvalues().cwiseAbs().sum();
}

const double kLambda = 1.0 / (std::sqrt(2.0) * std::exp(0.25));

}  // namespace

TEST_CASE("evolution at time zero is the identity") {
  SpinHamiltonian h = tfi_chain(2, 0.7);
  const GeneratorMatrix gen = full_generator(h, 0.4);
  Rng rng(3);
  const Matrix rho0 = rng.density_matrix(h.dim());
  for (const char* method : {"spectral", "expm"}) {
    const EvolutionResult res = evolve_state(gen, rho0, {0.0}, nullptr, method);
    CHECK(operator_norm(res.states[0] - rho0) <= 1e-12);
  }
}

TEST_CASE("single-qubit depolarizer evolves analytically") {
  const GeneratorMatrix gen = depolarizing_generator(1);
  Rng rng(5);
  const Matrix rho0 = rng.density_matrix(2);
  const Matrix uniform = Matrix::Identity(2, 2) / 2.0;
  const std::vector<double> times{0.3, 1.0, 4.7};
  for (const char* method : {"spectral", "expm"}) {
    const EvolutionResult res = evolve_state(gen, rho0, times, nullptr, method);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double w = std::exp(-kLambda * times[i]);
      CHECK(operator_norm(res.states[i] - (w * rho0 + (1.0 - w) * uniform)) <= 1e-12);
    }
  }
}

TEST_CASE("matrix-exponential and spectral propagators agree") {
  SpinHamiltonian h = tfi_chain(2, 0.7);
  const GeneratorMatrix gen = full_generator(h, 0.3);
  Rng rng(7);
  const Matrix rho0 = rng.density_matrix(h.dim());
  const std::vector<double> times{0.1, 1.0, 10.0};
  const EvolutionResult spectral = evolve_state(gen, rho0, times, nullptr, "spectral");
  const EvolutionResult expm = evolve_state(gen, rho0, times, nullptr, "expm");
  for (std::size_t i = 0; i < times.size(); ++i)
    CHECK(operator_norm(spectral.states[i] - expm.states[i]) <= 1e-8);
}

TEST_CASE("evolution satisfies the semigroup property") {
  SpinHamiltonian h = tfi_chain(2, 0.7);
  const GeneratorMatrix gen = full_generator(h, 0.35);
  Rng rng(9);
  const Matrix rho0 = rng.density_matrix(h.dim());
  const double t = 0.8, s = 1.7;
  const Matrix at_s = evolve_state(gen, rho0, {s}).states[0];
  const Matrix at_ts = evolve_state(gen, at_s, {t}).states[0];
  const Matrix direct = evolve_state(gen, rho0, {t + s}).states[0];
  CHECK(operator_norm(at_ts - direct) <= 1e-9);
}

TEST_CASE("trace distance between trajectories is non-increasing") {
  SpinHamiltonian h = tfi_chain(2, 0.7);
  const GeneratorMatrix gen = full_generator(h, 0.4);
  Rng rng(11);
  const Matrix rho1 = rng.density_matrix(h.dim());
  const Matrix rho2 = rng.density_matrix(h.dim());
  std::vector<double> times;
  for (int i = 0; i <= 20; ++i) times.push_back(0.35 * i);
  const EvolutionResult res1 = evolve_state(gen, rho1, times);
  const EvolutionResult res2 = evolve_state(gen, rho2, times);
  for (std::size_t i = 1; i < times.size(); ++i) {
    CHECK(trace_dist(res1.states[i], res2.states[i]) <=
          trace_dist(res1.states[i - 1], res2.states[i - 1]) + 1e-11);
  }
}

TEST_CASE("trajectories stay physical and converge monotonically to the fixed point") {
  SpinHamiltonian h = tfi_chain(2, 0.7);
  const double beta = 0.3;
  const GeneratorMatrix gen = full_generator(h, beta);
  const Matrix sigma = gibbs_state(h, beta);
  Rng rng(13);
  const Matrix rho0 = rng.pure_state(h.dim());
  std::vector<double> times;
  for (int i = 0; i <= 40; ++i) times.push_back(0.5 * i);
  const EvolutionResult res = evolve_state(gen, rho0, times, &sigma);
  REQUIRE(res.trace_distances.size() == times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Matrix& state = res.states[i];
    CHECK(std::abs(state.trace().real() - 1.0) <= 1e-10);
    CHECK(operator_norm(state - state.adjoint()) <= 1e-10);
    Eigen::SelfAdjointEigenSolver<Matrix> es(state);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    if (i > 0) CHECK(res.trace_distances[i] <= res.trace_distances[i - 1] + 1e-11);
  }
  CHECK(res.trace_distances.back() <= 1e-4);
}

TEST_CASE("Heisenberg picture fixes the identity and is dual to the state picture") {
  SpinHamiltonian h = tfi_chain(2, 0.7);
  const GeneratorMatrix gen = full_generator(h, 0.45);
  const int d = h.dim();
  const Matrix id = Matrix::Identity(d, d);
  const EvolutionResult fixed = evolve_observable(gen.adjoint(), id, {0.7, 3.1});
  for (const Matrix& x : fixed.states) CHECK(operator_norm(x - id) <= 1e-10);

  Rng rng(15);
  const Matrix x = rng.hermitian_unit(d);
  const Matrix rho = rng.density_matrix(d);
  for (double t : {0.4, 2.2}) {
    const Matrix xt = evolve_observable(gen.adjoint(), x, {t}).states[0];
    const Matrix rhot = evolve_state(gen, rho, {t}).states[0];
    const Complex lhs = (x * rhot).trace();
    const Complex rhs = (xt * rho).trace();
    CHECK(std::abs(lhs - rhs) <= 1e-9);
  }
}

TEST_CASE("depolarizing Heisenberg evolution contracts traceless observables") {
  const GeneratorMatrix gen = depolarizing_generator(1);
  const std::vector<double> times{0.5, 2.0};
  const EvolutionResult res = evolve_observable(gen.adjoint(), pauli(3), times);
  for (std::size_t i = 0; i < times.size(); ++i)
    CHECK(operator_norm(res.states[i] - std::exp(-kLambda * times[i]) * pauli(3)) <= 1e-12);
}

TEST_CASE("fixed point of the depolarizer is the uniform state") {
  for (int n : {1, 2}) {
    const GeneratorMatrix gen = depolarizing_generator(n);
    const int d = 1 << n;
    CHECK(operator_norm(fixed_point(gen) - Matrix::Identity(d, d) / d) <= 1e-12);
  }
}

TEST_CASE("fixed point matches the analytic single-qubit Gibbs state") {
  SpinHamiltonian h = build_hamiltonian(LatticeSpec{1, 0}, {{{0}, pauli(3)}});
  const double beta = 0.2;
  const GeneratorMatrix gen = full_generator(h, beta);
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = std::exp(-beta) / (2.0 * std::cosh(beta));
  expected(1, 1) = std::exp(beta) / (2.0 * std::cosh(beta));
  CHECK(operator_norm(fixed_point(gen) - expected) <= 1e-10);
}

TEST_CASE("fixed point equals the Gibbs state of the chain") {
  SpinHamiltonian h = tfi_chain(2, 0.7);
  for (double beta : {0.1, 0.4}) {
    const GeneratorMatrix gen = full_generator(h, beta);
    CHECK(operator_norm(fixed_point(gen) - gibbs_state(h, beta)) <= 1e-8);
  }
}

TEST_CASE("degenerate null space is reported") {
  GeneratorMatrix gen;
  gen.superop = Matrix::Zero(4, 4);
  gen.n_sites = 1;
  CHECK_THROWS_AS((void)fixed_point(gen), std::runtime_error);
}

TEST_CASE("spectral gap of the depolarizer is the depolarizing rate") {
  for (int n : {1, 2}) {
    const GapResult res = spectral_gap(depolarizing_generator(n));
    CHECK(std::abs(res.gap - kLambda) <= 1e-12);
    // stationary eigenvalue present
    double min_abs = 1e300;
    for (int i = 0; i < res.spectrum.size(); ++i)
      min_abs = std::min(min_abs, std::abs(res.spectrum(i)));
    CHECK(min_abs <= 1e-12);
  }
}

TEST_CASE("spectral gap is positive and shared with the adjoint") {
  SpinHamiltonian h = tfi_chain(2, 0.7);
  const GeneratorMatrix gen = full_generator(h, 0.3);
  const GapResult res = spectral_gap(gen);
  CHECK(res.gap > 0.0);
  GeneratorMatrix adj;
  adj.superop = gen.adjoint();
  adj.beta = gen.beta;
  adj.n_sites = gen.n_sites;
  const GapResult res_adj = spectral_gap(adj);
  CHECK(std::abs(res.gap - res_adj.gap) <= 1e-10);
}

TEST_CASE("mixing time of the depolarizer matches the closed form") {
  const GeneratorMatrix gen = depolarizing_generator(1);
  // every pure state sits at normalized trace distance 1/2 from the uniform
  // state, so t(eps) = ln(1/(2 eps)) / lambda for eps < 1/2
  const double eps = 0.01;
  const MixingResult res = mixing_time(gen, eps);
  const double expected = std::log(0.5 / eps) / kLambda;
  CHECK(std::abs(res.time - expected) <= 3e-3 * expected);
  CHECK(res.n_initial_states == 2 + 20);

  const MixingResult res10 = mixing_time(gen, eps / 10.0);
  CHECK(std::abs((res10.time - res.time) - std::log(10.0) / kLambda) <=
        3e-3 * res10.time + 3e-3 * res.time);
}

TEST_CASE("mixing time is zero for trivial accuracy and monotone in eps") {
  const GeneratorMatrix gen = depolarizing_generator(1);
  CHECK(mixing_time(gen, 1.5).time == 0.0);
  CHECK(mixing_time(gen, 0.1).time < mixing_time(gen, 0.01).time);
}

TEST_CASE("mixing time honors a custom initial set") {
  const GeneratorMatrix gen = depolarizing_generator(1);
  // initial state at normalized trace distance 1/4: t(eps) = ln(1/(4 eps)) / lambda
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = 0.75;
  rho(1, 1) = 0.25;
  const double eps = 0.05;
  const MixingResult res = mixing_time(gen, eps, {rho});
  const double expected = std::log(0.25 / eps) / kLambda;
  CHECK(res.n_initial_states == 1);
  CHECK(std::abs(res.time - expected) <= 3e-3 * expected);
}

TEST_CASE("mixing time cap is enforced") {
  const GeneratorMatrix gen = depolarizing_generator(1);
  CHECK_THROWS_AS((void)mixing_time(gen, 1e-9, {}, 17, 1.0), std::runtime_error);
}

TEST_CASE("detailed-balance residual vanishes for the assembled generators") {
  SpinHamiltonian h = tfi_chain(2, 0.7);
  for (double beta : {0.0, 0.25, 0.6}) {
    const GeneratorMatrix gen = full_generator(h, beta);
    const Matrix sigma = gibbs_state(h, beta);
    CHECK(kms_residual(gen, sigma, 40, 19) <= 1e-6);
  }
}

TEST_CASE("detailed-balance residual detects a mismatched state") {
  SpinHamiltonian h = tfi_chain(2, 0.7);
  const double beta = 0.4;
  const GeneratorMatrix gen = full_generator(h, beta);
  const Matrix wrong = gibbs_state(h, 2.0 * beta);
  CHECK(kms_residual(gen, wrong, 40, 19) > 1e-3);
}
