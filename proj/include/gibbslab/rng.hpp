// rng.hpp — deterministic random number generation.
//
// std::mt19937_64 has a standardized bit stream, but the standard
// distributions do not; uniform/normal draws are hand-rolled here so that
// seeded runs are bit-identical across platforms and standard libraries.
#pragma once

#include <cstdint>
#include <random>

#include "gibbslab/types.hpp"

namespace gibbslab {

// splitmix64 finalizer, used to derive stream seeds from (seed, indices).
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return mix64(mix64(seed ^ mix64(a)) ^ mix64(b + 0x5851f42d4c957f2dULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller (no cached spare, for reproducibility).
  double normal() {
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  int uniform_int(int n) {  // uniform in {0, ..., n-1}
    return static_cast<int>(engine_() % static_cast<std::uint64_t>(n));
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Ginibre matrix: i.i.d. standard complex normal entries.
  Matrix ginibre(int rows, int cols) {
    Matrix g(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) g(i, j) = Complex(normal(), normal());
    return g;
  }

  // Haar-distributed unitary via QR of a Ginibre matrix with phase fix.
  Matrix haar_unitary(int d) {
    Matrix g = ginibre(d, d);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
      Complex rjj = r(j, j);
      Complex phase = (std::abs(rjj) > 0.0) ? rjj / std::abs(rjj) : Complex(1.0, 0.0);
      q.col(j) *= phase;
    }
    return q;
  }

  // Random Hermitian with unit operator norm.
  Matrix hermitian_unit(int d) {
    Matrix g = ginibre(d, d);
    Matrix h = 0.5 * (g + g.adjoint());
    const double nrm = h.operatorNorm();
    if (nrm > 0.0) h /= nrm;
    return h;
  }

  // Haar-random pure state density matrix.
  Matrix pure_state(int d) {
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(normal(), normal());
    v.normalize();
    return v * v.adjoint();
  }

  // Full-rank random density matrix (Hilbert-Schmidt ensemble).
  Matrix density_matrix(int d) {
    Matrix g = ginibre(d, d);
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace gibbslab
