#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "gibbslab/certificates.hpp"
#include "gibbslab/generator.hpp"
#include "gibbslab/hamiltonian.hpp"
#include "gibbslab/linalg.hpp"
#include "gibbslab/quadrature.hpp"
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

SpinHamiltonian zero_hamiltonian(int n) {
  return build_hamiltonian(LatticeSpec{1, n - 1}, {});
}

// Quadrature oracle for the filtered jump: (1/sqrt(2 pi)) * integral of
// e^{iHt} A e^{-iHt} e^{-i w t} f(t) dt, evaluated per eigenbasis entry.
Matrix jump_fourier_oracle(const SpinHamiltonian& h, int a, int alpha, double omega,
                           const FilterFunctions& filters) {
  const int d = h.dim();
  const Matrix at = h.evecs.adjoint() * embed_on_sites(pauli(alpha), {a}, h.sites()) * h.evecs;
  Matrix out(d, d);
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j) {
      const double nu = h.evals(j) - h.evals(k);
      const Complex integral = integrate_complex(
          [&](double t) {
            return filters.f(t) * std::exp(Complex(0.0, (nu - omega) * t)) /
                   std::sqrt(2.0 * kPi);
          },
          -10.0 * filters.beta, 10.0 * filters.beta, 1e-11);
      out(j, k) = at(j, k) * integral;
    }
  return h.evecs * out * h.evecs.adjoint();
}

// Time-domain b1 profile: 2 sqrt(pi) e^{1/8} (sech(2 pi .) * sin(-.) e^{-2 .^2}),
// evaluated by quadrature of the convolution and memoized (the refining
// Simpson rule revisits the same dyadic nodes across refinement levels).
double b1_profile(double u) {
  static std::map<double, double> cache;
  const auto it = cache.find(u);
  if (it != cache.end()) return it->second;
  const double prefactor = 2.0 * std::sqrt(kPi) * std::exp(0.125);
  const double value =
      prefactor * integrate(
                      [&](double s) {
                        const double v = u - s;
                        return 1.0 / std::cosh(2.0 * kPi * s) * std::sin(-v) *
                               std::exp(-2.0 * v * v);
                      },
                      -6.0, 6.0, 1e-13);
  cache.emplace(u, value);
  return value;
}

// 2-D nested-quadrature oracle for the coherent profile in rescaled time,
//   B = sum_alpha ∫∫ dt ds b1(t) b2(s) A_r(t - s) A_r(t + s),
// with A_r(tau) = e^{-i tau beta H} A e^{+i tau beta H}; per eigenbasis entry
// the operator product contributes sum_k A_jk A_kl e^{-i t x_jl} e^{+i s y_jkl}
// with x_jl = beta (E_j - E_l) and y_jkl = beta (E_j - 2 E_k + E_l).
Matrix coherent_oracle_rescaled(const SpinHamiltonian& h, int a, const FilterFunctions& filters) {
  const int d = h.dim();
  const double beta = filters.beta;
  Matrix b_eig = Matrix::Zero(d, d);
  for (int alpha = 1; alpha <= 3; ++alpha) {
    const Matrix at = h.evecs.adjoint() * embed_on_sites(pauli(alpha), {a}, h.sites()) * h.evecs;
    for (int l = 0; l < d; ++l)
      for (int j = 0; j < d; ++j) {
        const double x = beta * (h.evals(j) - h.evals(l));
        Complex entry(0.0, 0.0);
        for (int k = 0; k < d; ++k) {
          const double y = beta * (h.evals(j) - 2.0 * h.evals(k) + h.evals(l));
          const Complex inner = integrate_complex(
              [&](double s) { return filters.b2(s) * std::exp(Complex(0.0, y * s)); }, -6.0, 6.0,
              1e-13);
          entry += at(j, k) * at(k, l) * inner;
        }
        const Complex outer = integrate_complex(
            [&](double t) { return b1_profile(t) * std::exp(Complex(0.0, -x * t)); }, -9.0, 9.0,
            1e-12);
        b_eig(j, l) += entry * outer;
      }
  }
  return h.evecs * b_eig * h.evecs.adjoint();
}

// The same double integral parameterized in unscaled time,
//   B = beta^{-2} sum_alpha ∫∫ dt ds b1(t/beta) b2(s/beta) A(t - s) A(t + s),
// with A(tau) = e^{-i tau H} A e^{+i tau H}.
Matrix coherent_oracle_unscaled(const SpinHamiltonian& h, int a, const FilterFunctions& filters) {
  const int d = h.dim();
  const double beta = filters.beta;
  Matrix b_eig = Matrix::Zero(d, d);
  for (int alpha = 1; alpha <= 3; ++alpha) {
    const Matrix at = h.evecs.adjoint() * embed_on_sites(pauli(alpha), {a}, h.sites()) * h.evecs;
    for (int l = 0; l < d; ++l)
      for (int j = 0; j < d; ++j) {
        const double x = h.evals(j) - h.evals(l);
        Complex entry(0.0, 0.0);
        for (int k = 0; k < d; ++k) {
          const double y = h.evals(j) - 2.0 * h.evals(k) + h.evals(l);
          const Complex inner = integrate_complex(
              [&](double s) { return filters.b2(s / beta) * std::exp(Complex(0.0, y * s)); },
              -6.0 * beta, 6.0 * beta, 1e-13);
          entry += at(j, k) * at(k, l) * inner;
        }
        const Complex outer = integrate_complex(
            [&](double t) { return b1_profile(t / beta) * std::exp(Complex(0.0, -x * t)); },
            -9.0 * beta, 9.0 * beta, 1e-12);
        b_eig(j, l) += entry * outer / (beta * beta);
      }
  }
  return h.evecs * b_eig * h.evecs.adjoint();
}

// Choi matrix of a superoperator: sum_ij |i><j| (x) S(|i><j|).
Matrix choi_matrix(const Matrix& superop, int d) {
  Matrix choi = Matrix::Zero(d * d, d * d);
  Matrix unit = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      unit(i, j) = 1.0;
      const Matrix image = unvec(superop * vec(unit), d);
      unit(i, j) = 0.0;
      Matrix e = Matrix::Zero(d, d);
      e(i, j) = 1.0;
      choi += kron(e, image);
    }
  return choi;
}

double min_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (hermitian + hermitian.adjoint()));
  return es.eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("jump_fourier with zero Hamiltonian is a filtered Pauli") {
  SpinHamiltonian h = zero_hamiltonian(1);
  FilterFunctions filters(0.8);
  for (int alpha = 1; alpha <= 3; ++alpha)
    for (double omega : {-2.0, 0.0, 0.9}) {
      const Matrix expected = filters.f_hat(-omega) * pauli(alpha);
      CHECK(operator_norm(jump_fourier(h, 0, alpha, omega, filters) - expected) <= 1e-12);
    }
}

TEST_CASE("jump_fourier on H = Z concentrates at Bohr frequencies") {
  SpinHamiltonian h = build_hamiltonian(LatticeSpec{1, 0}, {{{0}, pauli(3)}});
  FilterFunctions filters(1.0);
  for (double omega : {-2.0, 0.0, 1.5, 2.0}) {
    const Matrix a = jump_fourier(h, 0, 1, omega, filters);
    CHECK(std::abs(a(0, 0)) <= 1e-14);
    CHECK(std::abs(a(1, 1)) <= 1e-14);
    // |0><1| raises energy by E(|0>) - E(|1>) = 2 under H = Z
    CHECK(std::abs(a(0, 1) - filters.f_hat(2.0 - omega)) <= 1e-12);
    CHECK(std::abs(a(1, 0) - filters.f_hat(-2.0 - omega)) <= 1e-12);
  }
}

TEST_CASE("jump_fourier matches the quadrature oracle") {
  SpinHamiltonian h = tfi_chain(2, 0.7);
  FilterFunctions filters(0.3);
  for (double omega : {0.0, 1.3, -2.4}) {
    const Matrix direct = jump_fourier(h, 0, 1, omega, filters);
    const Matrix oracle = jump_fourier_oracle(h, 0, 1, omega, filters);
    CHECK(operator_norm(direct - oracle) <= 1e-8);
  }
}

TEST_CASE("jump_fourier adjoint is the reflected-frequency jump") {
  SpinHamiltonian h = tfi_chain(2, 0.7);
  FilterFunctions filters(0.4);
  for (int alpha = 1; alpha <= 3; ++alpha)
    for (double omega : {0.0, 0.8, -1.7}) {
      const Matrix a = jump_fourier(h, 1, alpha, omega, filters);
      const Matrix reflected = jump_fourier(h, 1, alpha, -omega, filters);
      CHECK(operator_norm(a.adjoint() - reflected) <= 1e-12);
    }
}

TEST_CASE("weighted jump integral norm bound") {
  // || integral gamma(w) A(w) dw ||_inf <= (2 pi)^{3/4} / sqrt(beta)
  for (double beta : {0.3, 1.0}) {
    SpinHamiltonian h = tfi_chain(2, 0.7);
    FilterFunctions filters(beta);
    const int d = h.dim();
    const Matrix at = h.evecs.adjoint() * embed_on_sites(pauli(1), {0}, 2) * h.evecs;
    Matrix m(d, d);
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) {
        const double nu = h.evals(j) - h.evals(k);
        m(j, k) = at(j, k) * integrate(
                                 [&](double w) { return filters.gamma(w) * filters.f_hat(w - nu); },
                                 nu - 40.0 / beta, nu + 40.0 / beta, 1e-11);
      }
    CHECK(operator_norm(m) <= std::pow(2.0 * kPi, 0.75) / std::sqrt(beta) + 1e-10);
  }
}

TEST_CASE("dissipator at zero Hamiltonian matches its omega-quadrature build") {
  SpinHamiltonian h = zero_hamiltonian(2);
  FilterFunctions filters(0.6);
  const GeneratorMatrix direct = assemble_dissipator_site(h, 0, filters);

  const double weight = integrate(
      [&](double w) { return filters.gamma(w) * filters.f_hat(w) * filters.f_hat(w); }, -40.0 / 0.6,
      40.0 / 0.6, 1e-11);
  const int d = h.dim();
  Matrix oracle = Matrix::Zero(d * d, d * d);
  for (int alpha = 1; alpha <= 3; ++alpha) {
    const Matrix a = embed_on_sites(pauli(alpha), {0}, 2);
    oracle += weight * (sup_sandwich(a, a) - Matrix::Identity(d * d, d * d));
  }
  CHECK(operator_norm(direct.superop - oracle) <= 1e-8);
}

TEST_CASE("assembled maps preserve Hermiticity and trace") {
  SpinHamiltonian h = tfi_chain(2, 0.7);
  Rng rng(101);
  for (double beta : {0.0, 0.2, 0.6}) {
    const GeneratorMatrix gen = full_generator(h, beta);
    const int d = h.dim();
    // trace functional annihilated: vec(I)^dagger S = 0
    const Vector trace_row = gen.superop.adjoint() * vec(Matrix::Identity(d, d));
    CHECK(trace_row.cwiseAbs().maxCoeff() <= 1e-10);
    for (int trial = 0; trial < 5; ++trial) {
      const Matrix x = rng.hermitian_unit(d);
      const Matrix image = unvec(gen.superop * vec(x), d);
      CHECK(operator_norm(image - image.adjoint()) <= 1e-10);
    }
  }
}

TEST_CASE("generators have positive semidefinite first-order Choi matrices") {
  SpinHamiltonian h = tfi_chain(2, 0.7);
  for (double beta : {0.0, 0.35}) {
    const GeneratorMatrix gen = full_generator(h, beta);
    const int d = h.dim();
    const double dt = 1e-3 / operator_norm(gen.superop);
    const Matrix step = Matrix::Identity(d * d, d * d) + dt * gen.superop;
    CHECK(min_eigenvalue(choi_matrix(step, d)) >= -1e-8);
  }
}

TEST_CASE("gamma-weighted jump map is completely positive") {
  // Build rho -> sum_alpha ∫ gamma(w) A(w) rho A(w)† dw by omega-quadrature in
  // the eigenbasis and check its Choi matrix is positive semidefinite. Choi
  // eigenvalues are invariant under the unitary basis rotation, so the
  // eigenbasis expression suffices.
  SpinHamiltonian h = tfi_chain(2, 0.7);
  const double beta = 0.5;
  FilterFunctions filters(beta);
  const int d = h.dim();
  const double half_width = 50.0 / beta;
  const double lo = std::min(-1.0 / beta, h.evals.minCoeff() - h.evals.maxCoeff()) - half_width;
  const double hi = std::max(-1.0 / beta, h.evals.maxCoeff() - h.evals.minCoeff()) + half_width;
  Matrix k_jump = Matrix::Zero(d * d, d * d);
  for (int alpha = 1; alpha <= 3; ++alpha) {
    const Matrix at = h.evecs.adjoint() * embed_on_sites(pauli(alpha), {0}, 2) * h.evecs;
    for (int m = 0; m < d; ++m)
      for (int l = 0; l < d; ++l)
        for (int kk = 0; kk < d; ++kk)
          for (int j = 0; j < d; ++j) {
            const double nu_jk = h.evals(j) - h.evals(kk);
            const double nu_lm = h.evals(l) - h.evals(m);
            const double weight = integrate(
                [&](double w) {
                  return filters.gamma(w) * filters.f_hat(w - nu_jk) * filters.f_hat(w - nu_lm);
                },
                lo, hi, 1e-12);
            k_jump(l * d + j, m * d + kk) += at(j, kk) * std::conj(at(l, m)) * weight;
          }
  }
  CHECK(min_eigenvalue(choi_matrix(k_jump, d)) >= -1e-10);
}

TEST_CASE("coherent profile is Hermitian and vanishes for zero Hamiltonian") {
  FilterFunctions filters(0.8);
  SpinHamiltonian h0 = zero_hamiltonian(2);
  // with H = 0 the b1 weight is evaluated at zero frequency, where the odd
  // profile vanishes: B = (integral b1)(integral b2) * sum_alpha A^2 = 0
  CHECK(operator_norm(assemble_coherent_site(h0, 0, filters)) <= 1e-12);

  SpinHamiltonian h = tfi_chain(2, 0.7);
  const Matrix b = assemble_coherent_site(h, 0, filters);
  CHECK(operator_norm(b - b.adjoint()) <= 1e-10);
}

TEST_CASE("coherent profile matches the 2-D quadrature oracle (single qubit)") {
  SpinHamiltonian h = build_hamiltonian(LatticeSpec{1, 0}, {{{0}, pauli(3)}});
  FilterFunctions filters(0.05);
  const Matrix direct = assemble_coherent_site(h, 0, filters);
  const Matrix oracle = coherent_oracle_unscaled(h, 0, filters);
  CHECK(operator_norm(direct - oracle) <= 1e-7);
}

TEST_CASE("rescaled and unscaled coherent parameterizations agree") {
  SpinHamiltonian h = build_hamiltonian(LatticeSpec{1, 0}, {{{0}, 0.9 * pauli(3) + 0.4 * pauli(1)}});
  FilterFunctions filters(0.2);
  const Matrix rescaled = coherent_oracle_rescaled(h, 0, filters);
  const Matrix unscaled = coherent_oracle_unscaled(h, 0, filters);
  CHECK(operator_norm(rescaled - unscaled) <= 1e-10);
}

TEST_CASE("coherent profile size is perturbative in beta J") {
  SpinHamiltonian h = tfi_chain(2, 0.7);
  const double j = h.stats.j();
  for (double beta : {0.01, 0.05, 0.1}) {
    FilterFunctions filters(beta);
    const Matrix b = assemble_coherent_site(h, 0, filters);
    // per-jump deviation bound e^{1/8}/(2 sqrt(2 pi)) * beta J, three jumps
    const double bound = 3.0 * std::exp(0.125) / (2.0 * std::sqrt(2.0 * kPi)) * beta * j;
    CHECK(operator_norm(b) <= bound + 1e-12);
  }
}

TEST_CASE("local generator routes beta = 0 to the depolarizer and is adjoint-consistent") {
  SpinHamiltonian h = tfi_chain(2, 0.7);
  const GeneratorMatrix at_zero = local_generator(h, 1, 0.0);
  const GeneratorMatrix depol = depolarizing_generator_site(2, 1);
  CHECK(operator_norm(at_zero.superop - depol.superop) <= 1e-15);

  const GeneratorMatrix gen = local_generator(h, 0, 0.4);
  Rng rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix x = rng.hermitian_unit(h.dim());
    const Matrix rho = rng.pure_state(h.dim());
    const Complex lhs = (x * unvec(gen.superop * vec(rho), h.dim())).trace();
    const Complex rhs = (unvec(gen.adjoint() * vec(x), h.dim()) * rho).trace();
    CHECK(std::abs(lhs - rhs) <= 1e-10);
  }
}

TEST_CASE("sampled distance from the depolarizer is within the linear-response bound") {
  SpinHamiltonian h = tfi_chain(3, 1.0);
  const double j = h.stats.j();
  const double beta = 0.01 / j;  // beta * J = 0.01
  const GeneratorMatrix lb = local_generator(h, 1, beta);
  const GeneratorMatrix l0 = local_generator(h, 1, 0.0);
  const double lower =
      generator_distance_lower_bound(lb.adjoint(), l0.adjoint(), h.sites(), 60, 17);
  CHECK(lower <= beta * j + 1e-10);
}

TEST_CASE("truncation at full radius reproduces the untruncated generator") {
  SpinHamiltonian h = tfi_chain(3, 1.0);
  FilterFunctions filters(0.05);
  const GeneratorMatrix local = local_generator(h, 1, filters);
  const GeneratorMatrix truncated = truncated_local_generator(h, 1, lattice_diameter(h.lattice),
                                                              filters);
  CHECK(operator_norm(local.superop - truncated.superop) <= 1e-12);
  CHECK(truncated.radius == lattice_diameter(h.lattice));
  CHECK(truncated.scope == GeneratorScope::kTruncated);
}

TEST_CASE("full generator is the sum of the site generators") {
  SpinHamiltonian h = tfi_chain(2, 0.7);
  const double beta = 0.3;
  const GeneratorMatrix full = full_generator(h, beta);
  Matrix sum = Matrix::Zero(full.dim(), full.dim());
  for (int a = 0; a < h.sites(); ++a) sum += local_generator(h, a, beta).superop;
  CHECK(operator_norm(full.superop - sum) <= 1e-12);
}

TEST_CASE("full generator at beta = 0 is the depolarizer with uniform fixed point") {
  SpinHamiltonian h = tfi_chain(2, 0.7);
  const GeneratorMatrix gen = full_generator(h, 0.0);
  const GeneratorMatrix depol = depolarizing_generator(2);
  CHECK(operator_norm(gen.superop - depol.superop) <= 1e-15);
  const int d = h.dim();
  const Vector residual = gen.superop * vec(Matrix::Identity(d, d) / d);
  CHECK(residual.cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("small-beta generator converges to the depolarizer at rate beta J") {
  SpinHamiltonian h = tfi_chain(2, 0.7);
  const double beta = 1e-6;
  const GeneratorMatrix gen = full_generator(h, beta);
  const GeneratorMatrix depol = depolarizing_generator(2);
  const double lower =
      generator_distance_lower_bound(gen.adjoint(), depol.adjoint(), h.sites(), 40, 23);
  CHECK(lower <= 2e-6 * h.stats.j() * h.sites());
}
