// linalg.cpp — implementation of dense helpers and LAPACK-backed
// decompositions for superoperator-sized problems.
#define lapack_complex_double std::complex<double>
#define lapack_complex_float std::complex<float>

#include "gibbslab/linalg.hpp"

#include <complex>
#include <stdexcept>

#include <lapacke.h>

#include <unsupported/Eigen/MatrixFunctions>

namespace gibbslab {

namespace {

void check_lapack(int info, const char* what) {
  if (info != 0) throw std::runtime_error(std::string(what) + " failed, info != 0");
}

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector vec(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix unvec(const Vector& v, int d) {
  if (v.size() != static_cast<Eigen::Index>(d) * d)
    throw std::invalid_argument("unvec: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

Matrix sup_left(const Matrix& a) {
  return kron(Matrix::Identity(a.rows(), a.rows()), a);
}

Matrix sup_right(const Matrix& b) {
  return kron(b.transpose(), Matrix::Identity(b.rows(), b.rows()));
}

Matrix sup_sandwich(const Matrix& a, const Matrix& b) {
  return kron(b.transpose(), a);
}

const Matrix& pauli(int alpha) {
  static const Matrix id = (Matrix(2, 2) << 1, 0, 0, 1).finished();
  static const Matrix sx = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  static const Matrix sy =
      (Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  static const Matrix sz = (Matrix(2, 2) << 1, 0, 0, -1).finished();
  switch (alpha) {
    case 0: return id;
    case 1: return sx;
    case 2: return sy;
    case 3: return sz;
    default: throw std::invalid_argument("pauli: alpha must be in {0,1,2,3}");
  }
}

Matrix embed_on_sites(const Matrix& op, const std::vector<int>& sites, int n) {
  const int k = static_cast<int>(sites.size());
  if (op.rows() != (1 << k) || op.cols() != (1 << k))
    throw std::invalid_argument("embed_on_sites: operator dimension != 2^{|sites|}");
  for (int i = 0; i + 1 < k; ++i)
    if (sites[i] >= sites[i + 1])
      throw std::invalid_argument("embed_on_sites: sites must be strictly ascending");
  for (int s : sites)
    if (s < 0 || s >= n) throw std::invalid_argument("embed_on_sites: site out of range");

  const int d = 1 << n;
  Matrix out = Matrix::Zero(d, d);
  // Site s occupies bit (n-1-s): site 0 is the leftmost tensor factor.
  auto support_index = [&](int basis) {
    int idx = 0;
    for (int i = 0; i < k; ++i) idx = (idx << 1) | ((basis >> (n - 1 - sites[i])) & 1);
    return idx;
  };
  int rest_mask = d - 1;
  for (int s : sites) rest_mask &= ~(1 << (n - 1 - s));
  for (int row = 0; row < d; ++row) {
    for (int col = 0; col < d; ++col) {
      if ((row & rest_mask) != (col & rest_mask)) continue;
      out(row, col) = op(support_index(row), support_index(col));
    }
  }
  return out;
}

Matrix pauli_string(const std::vector<int>& alphas) {
  Matrix out = Matrix::Identity(1, 1);
  for (int alpha : alphas) out = kron(out, pauli(alpha));
  return out;
}

Matrix partial_trace_site(const Matrix& x, int a, int n) {
  const int d = 1 << n;
  if (x.rows() != d || x.cols() != d) throw std::invalid_argument("partial_trace_site: dim");
  if (a < 0 || a >= n) throw std::invalid_argument("partial_trace_site: site out of range");
  const int bit = n - 1 - a;
  const int dout = d / 2;
  Matrix out = Matrix::Zero(dout, dout);
  auto expand = [&](int idx, int b) {
    const int low = idx & ((1 << bit) - 1);
    const int high = idx >> bit;
    return (high << (bit + 1)) | (b << bit) | low;
  };
  for (int i = 0; i < dout; ++i)
    for (int j = 0; j < dout; ++j)
      for (int b = 0; b < 2; ++b) out(i, j) += x(expand(i, b), expand(j, b));
  return out;
}

Matrix site_depolarize(const Matrix& x, int a, int n) {
  const int d = 1 << n;
  const int bit = n - 1 - a;
  Matrix tr = partial_trace_site(x, a, n);
  Matrix out = Matrix::Zero(d, d);
  auto compress = [&](int idx) {
    const int low = idx & ((1 << bit) - 1);
    const int high = idx >> (bit + 1);
    return (high << bit) | low;
  };
  for (int row = 0; row < d; ++row) {
    const int ra = (row >> bit) & 1;
    for (int col = 0; col < d; ++col) {
      if (((col >> bit) & 1) != ra) continue;
      out(row, col) = 0.5 * tr(compress(row), compress(col));
    }
  }
  return out;
}

double trace_norm(const Matrix& x) { return singular_values(x).sum(); }

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  return 0.5 * trace_norm(rho - sigma);
}

double operator_norm(const Matrix& x) {
  if (x.rows() == 0) return 0.0;
  return singular_values(x)(0);
}

bool is_hermitian(const Matrix& x, double tol) {
  return (x - x.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

EigResult eig(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eig: square input required");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  EigResult res;
  res.values.resize(n);
  res.vectors.resize(n, n);
  Matrix work = a;  // zgeev overwrites
  int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, work.data(), n, res.values.data(),
                           nullptr, 1, res.vectors.data(), n);
  check_lapack(info, "zgeev");
  return res;
}

RealVector singular_values(const Matrix& a) {
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  Matrix work = a;
  RealVector s(std::min(m, n));
  int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m, s.data(), nullptr, 1,
                            nullptr, 1);
  check_lapack(info, "zgesdd");
  return s;
}

Matrix matrix_exp(const Matrix& a) { return a.exp(); }

Propagator::Propagator(const Matrix& a) : es(eig(a)) {
  Eigen::PartialPivLU<Matrix> lu(es.vectors);
  vinv = lu.inverse();
}

Matrix Propagator::apply(double t) const {
  Vector phases = (es.values.array() * t).exp();
  return es.vectors * phases.asDiagonal() * vinv;
}

Vector Propagator::apply(double t, const Vector& v) const {
  Vector y = vinv * v;
  y.array() *= (es.values.array() * t).exp();
  return es.vectors * y;
}

}  // namespace gibbslab
