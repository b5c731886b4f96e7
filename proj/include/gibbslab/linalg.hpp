// linalg.hpp — dense linear-algebra helpers: tensor products, vectorization,
// single-site maps on n-qubit operators, norms, and eigen/SVD wrappers.
//
// Vectorization convention is column stacking: vec(X)[i + j*d] = X(i, j),
// so vec(A X B) = (B^T ⊗ A) vec(X).
#pragma once

#include <set>
#include <vector>

#include "gibbslab/types.hpp"

namespace gibbslab {

Matrix kron(const Matrix& a, const Matrix& b);

Vector vec(const Matrix& x);
Matrix unvec(const Vector& v, int d);

// Superoperator factors: rho -> A rho, rho -> rho B, rho -> A rho B.
Matrix sup_left(const Matrix& a);
Matrix sup_right(const Matrix& b);
Matrix sup_sandwich(const Matrix& a, const Matrix& b);

// Pauli matrices; alpha in {1,2,3} -> x,y,z. alpha = 0 gives the identity.
const Matrix& pauli(int alpha);

// Embed a 2^{|sites|}-dim operator on the listed sites (ascending order
// required) of an n-qubit register, identity elsewhere. Site 0 is the
// leftmost tensor factor.
Matrix embed_on_sites(const Matrix& op, const std::vector<int>& sites, int n);

// Tensor product of single-qubit Paulis given per-site indices (0 = identity).
Matrix pauli_string(const std::vector<int>& alphas);

// Partial trace over one site of an n-qubit operator (result on n qubits is
// NOT taken; the output lives on the remaining n-1 qubits).
Matrix partial_trace_site(const Matrix& x, int a, int n);

// (1/2) I_a ⊗ tr_a(X), same dimension as X.
Matrix site_depolarize(const Matrix& x, int a, int n);

double trace_norm(const Matrix& x);
double trace_distance(const Matrix& rho, const Matrix& sigma);
double operator_norm(const Matrix& x);

bool is_hermitian(const Matrix& x, double tol);

// Dense nonsymmetric eigendecomposition (LAPACK zgeev when available for
// large inputs, Eigen otherwise). Right eigenvectors; A*V = V*diag(w).
struct EigResult {
  Vector values;
  Matrix vectors;
};
EigResult eig(const Matrix& a);

// Singular values, descending.
RealVector singular_values(const Matrix& a);

// Matrix exponential e^{A} via scaling-and-squaring (Eigen unsupported).
Matrix matrix_exp(const Matrix& a);

// exp(t*A) applied through a precomputed eigendecomposition of A, with
// explicit inverse of the eigenvector matrix (non-normal A is fine as long
// as it is diagonalizable; conditioning is the caller's concern).
struct Propagator {
  EigResult es;
  Matrix vinv;
  explicit Propagator(const Matrix& a);
  Matrix apply(double t) const;                       // dense e^{tA}
  Vector apply(double t, const Vector& v) const;      // e^{tA} v
};

}  // namespace gibbslab
