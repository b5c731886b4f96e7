// generator.cpp — eigenbasis assembly of the detailed-balanced generator.
#include "gibbslab/generator.hpp"

#include <stdexcept>

#include "gibbslab/linalg.hpp"

namespace gibbslab {

namespace {

// (V̄ ⊗ V) S (V̄ ⊗ V)†, i.e. the superoperator conjugation that maps an
// eigenbasis superoperator to the computational basis. Applied column-wise
// as vec(V X V†) to avoid materializing the d^2 x d^2 Kronecker factor.
Matrix rotate_superop(const Matrix& s_eig, const Matrix& v) {
  const int d = static_cast<int>(v.rows());
  const int d2 = d * d;
  Matrix t(d2, d2);
  for (int c = 0; c < d2; ++c) t.col(c) = vec(v * unvec(s_eig.col(c), d) * v.adjoint());
  Matrix ta = t.adjoint();
  Matrix out_adj(d2, d2);
  for (int c = 0; c < d2; ++c) out_adj.col(c) = vec(v * unvec(ta.col(c), d) * v.adjoint());
  return out_adj.adjoint();
}

Matrix site_pauli_eigenbasis(const SpinHamiltonian& h, int a, int alpha) {
  const Matrix a_full = embed_on_sites(pauli(alpha), {a}, h.sites());
  return h.evecs.adjoint() * a_full * h.evecs;
}

void check_site(const SpinHamiltonian& h, int a) {
  if (a < 0 || a >= h.sites()) throw std::invalid_argument("generator: site out of range");
}

// Dissipative superoperator for site a in the H eigenbasis, all three Pauli
// jumps, unit normalization.
Matrix dissipator_eigenbasis(const SpinHamiltonian& h, int a, const FilterFunctions& filters) {
  const int d = h.dim();
  const int d2 = d * d;
  const RealVector& e = h.evals;

  Matrix k_sup = Matrix::Zero(d2, d2);
  Matrix n_loss = Matrix::Zero(d, d);
  RealMatrix x(d, d);  // beta * Bohr frequency
  for (int j = 0; j < d; ++j)
    for (int kk = 0; kk < d; ++kk) x(j, kk) = filters.beta * (e(j) - e(kk));

  auto kernel = [](double x1, double x2) {
    const double mid = 0.5 * (x1 + x2) - 1.0;
    return std::exp(0.25 * mid * mid - 0.5 - 0.25 * (x1 * x1 + x2 * x2)) / std::sqrt(2.0);
  };

  for (int alpha = 1; alpha <= 3; ++alpha) {
    const Matrix at = site_pauli_eigenbasis(h, a, alpha);
    // jump part: entries At(j,k) conj(At(l,m)) Gamma(nu_jk, nu_lm) at
    // vec-index (row l*d+j, col m*d+k) — the map rho -> sum E_jk rho E_ml.
    for (int m = 0; m < d; ++m)
      for (int l = 0; l < d; ++l)
        for (int kk = 0; kk < d; ++kk)
          for (int j = 0; j < d; ++j)
            k_sup(l * d + j, m * d + kk) +=
                at(j, kk) * std::conj(at(l, m)) * kernel(x(j, kk), x(l, m));
    // loss matrix: N(k,m) = sum_j conj(At(j,k)) At(j,m) Gamma(nu_jk, nu_jm).
    for (int m = 0; m < d; ++m)
      for (int kk = 0; kk < d; ++kk) {
        Complex acc(0.0, 0.0);
        for (int j = 0; j < d; ++j)
          acc += std::conj(at(j, kk)) * at(j, m) * kernel(x(j, kk), x(j, m));
        n_loss(kk, m) += acc;
      }
  }
  return k_sup - 0.5 * (sup_left(n_loss) + sup_right(n_loss));
}

// Coherent profile for site a in the H eigenbasis, all three Pauli jumps,
// printed normalization (no detailed-balance doubling).
Matrix coherent_eigenbasis(const SpinHamiltonian& h, int a, const FilterFunctions& filters) {
  const int d = h.dim();
  const RealVector& e = h.evals;
  const double beta = filters.beta;
  Matrix b_eig = Matrix::Zero(d, d);
  for (int alpha = 1; alpha <= 3; ++alpha) {
    const Matrix at = site_pauli_eigenbasis(h, a, alpha);
    for (int l = 0; l < d; ++l)
      for (int j = 0; j < d; ++j) {
        Complex acc(0.0, 0.0);
        for (int kk = 0; kk < d; ++kk)
          acc += at(j, kk) * at(kk, l) * filters.b2_hat(beta * (e(j) - 2.0 * e(kk) + e(l)));
        b_eig(j, l) += acc * filters.b1_hat(beta * (e(j) - e(l)));
      }
  }
  return b_eig;
}

Matrix coherent_superop(const Matrix& b) {
  return Complex(0.0, -1.0) * (sup_left(b) - sup_right(b));
}

}  // namespace

Matrix jump_fourier(const SpinHamiltonian& h, int a, int alpha, double omega,
                    const FilterFunctions& filters) {
  check_site(h, a);
  if (alpha < 1 || alpha > 3) throw std::invalid_argument("jump_fourier: alpha in {1,2,3}");
  const int d = h.dim();
  Matrix at = site_pauli_eigenbasis(h, a, alpha);
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j) at(j, k) *= filters.f_hat(omega - (h.evals(j) - h.evals(k)));
  return h.evecs * at * h.evecs.adjoint();
}

GeneratorMatrix assemble_dissipator_site(const SpinHamiltonian& h, int a,
                                         const FilterFunctions& filters) {
  check_site(h, a);
  GeneratorMatrix gen;
  gen.superop = rotate_superop(dissipator_eigenbasis(h, a, filters), h.evecs);
  gen.beta = filters.beta;
  gen.scope = GeneratorScope::kSite;
  gen.site = a;
  gen.n_sites = h.sites();
  return gen;
}

Matrix assemble_coherent_site(const SpinHamiltonian& h, int a, const FilterFunctions& filters) {
  check_site(h, a);
  return h.evecs * coherent_eigenbasis(h, a, filters) * h.evecs.adjoint();
}

GeneratorMatrix local_generator(const SpinHamiltonian& h, int a, const FilterFunctions& filters) {
  check_site(h, a);
  const Matrix s_eig = dissipator_eigenbasis(h, a, filters) +
                       kCoherentDoubling * coherent_superop(coherent_eigenbasis(h, a, filters));
  GeneratorMatrix gen;
  gen.superop = kGeneratorScale * rotate_superop(s_eig, h.evecs);
  gen.beta = filters.beta;
  gen.scope = GeneratorScope::kSite;
  gen.site = a;
  gen.n_sites = h.sites();
  return gen;
}

GeneratorMatrix local_generator(const SpinHamiltonian& h, int a, double beta) {
  if (beta == 0.0) return depolarizing_generator_site(h.sites(), a);
  return local_generator(h, a, FilterFunctions(beta));
}

GeneratorMatrix truncated_local_generator(const SpinHamiltonian& h, int a, int r,
                                          const FilterFunctions& filters) {
  check_site(h, a);
  if (r < 0) throw std::invalid_argument("truncated_local_generator: radius must be >= 0");
  const SpinHamiltonian h_ball = restrict_to(h, ball(h.lattice, a, r));
  GeneratorMatrix gen = local_generator(h_ball, a, filters);
  gen.scope = GeneratorScope::kTruncated;
  gen.radius = r;
  return gen;
}

GeneratorMatrix full_generator(const SpinHamiltonian& h, const FilterFunctions& filters) {
  const int d = h.dim();
  Matrix s_eig = Matrix::Zero(d * d, d * d);
  for (int a = 0; a < h.sites(); ++a) {
    s_eig += dissipator_eigenbasis(h, a, filters) +
             kCoherentDoubling * coherent_superop(coherent_eigenbasis(h, a, filters));
  }
  GeneratorMatrix gen;
  gen.superop = kGeneratorScale * rotate_superop(s_eig, h.evecs);
  gen.beta = filters.beta;
  gen.scope = GeneratorScope::kFull;
  gen.n_sites = h.sites();
  return gen;
}

GeneratorMatrix full_generator(const SpinHamiltonian& h, double beta) {
  if (beta == 0.0) return depolarizing_generator(h.sites());
  return full_generator(h, FilterFunctions(beta));
}

GeneratorMatrix depolarizing_generator_site(int n_sites, int a) {
  if (a < 0 || a >= n_sites)
    throw std::invalid_argument("depolarizing_generator_site: site out of range");
  const int d = 1 << n_sites;
  const double lambda = depolarizing_rate();
  Matrix sup(d * d, d * d);
  Matrix unit = Matrix::Zero(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) {
      unit(r, c) = 1.0;
      sup.col(c * d + r) = lambda * vec(site_depolarize(unit, a, n_sites) - unit);
      unit(r, c) = 0.0;
    }
  GeneratorMatrix gen;
  gen.superop = std::move(sup);
  gen.beta = 0.0;
  gen.scope = GeneratorScope::kDepolarizing;
  gen.site = a;
  gen.n_sites = n_sites;
  return gen;
}

GeneratorMatrix depolarizing_generator(int n_sites) {
  GeneratorMatrix gen = depolarizing_generator_site(n_sites, 0);
  for (int a = 1; a < n_sites; ++a) gen.superop += depolarizing_generator_site(n_sites, a).superop;
  gen.site = -1;
  return gen;
}

}  // namespace gibbslab
