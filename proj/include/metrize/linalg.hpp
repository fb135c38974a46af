#pragma once

#include <vector>

#include <Eigen/Dense>

#include "metrize/tolerances.hpp"

namespace metrize {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Inertia counts of a symmetric form: positive / negative / numerically-zero
// eigenvalues (zero means |lambda| <= rank_tol * max|lambda|).
struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool operator==(const Signature&) const = default;
};

// A symmetric bilinear form on R^n.  The stored matrix is exactly symmetric:
// the constructor averages M and M^T entrywise, which is an exact
// symmetrization in floating point.  Nondegeneracy is a checked predicate,
// not a class invariant.
class SymBilinearForm {
 public:
  explicit SymBilinearForm(const MatrixXd& m);
  static SymBilinearForm identity(int n);

  int dim() const { return static_cast<int>(g_.rows()); }
  const MatrixXd& matrix() const { return g_; }

  // g(u, v)
  double operator()(const VectorXd& u, const VectorXd& v) const;

  // det(G / ||G||_F); scale-free measure of degeneracy.  Zero form -> 0.
  double normalized_det() const;

  bool nondegenerate(const Tolerances& tol) const {
    return std::abs(normalized_det()) > tol.det_tol;
  }

  // Copy with unit Frobenius norm; throws InvalidInput on the zero form.
  SymBilinearForm normalized() const;

 private:
  MatrixXd g_;
};

// A linear subspace of n x n matrices, stored as an orthonormal basis with
// respect to the Frobenius inner product (columns of the vectorized basis
// matrix are orthonormal).  `n` stays meaningful even when dim() == 0.
struct MatrixSubspace {
  int n = 0;
  std::vector<MatrixXd> basis;

  int dim() const { return static_cast<int>(basis.size()); }

  // Orthogonal projection of `a` onto the subspace.
  MatrixXd project(const MatrixXd& a) const;

  // ||a - project(a)||_F
  double residual(const MatrixXd& a) const;

  // True if every basis element of `other` lies in this subspace up to `eps`.
  bool contains(const MatrixSubspace& other, double eps) const;
};

// Column-major vectorization, vec(M) in R^(n^2), and its inverse.
VectorXd vectorize(const MatrixXd& m);
MatrixXd unvectorize(const VectorXd& v, int n);

bool is_finite(const MatrixXd& m);

// Matrix exponential (dense, any square matrix).
MatrixXd mat_exp(const MatrixXd& a);

// Orthonormal span of a family of matrices.  Rank is decided by an SVD with
// singular values truncated at rank_tol relative to the largest one; an
// all-zero family has dimension 0.  Inputs must share dimensions and be
// finite.  Deterministic for a fixed input order.
MatrixSubspace span(const std::vector<MatrixXd>& mats, const Tolerances& tol);

// span(base.basis ++ extra) without mutating `base`.
MatrixSubspace merge_span(const MatrixSubspace& base, const std::vector<MatrixXd>& extra,
                          const Tolerances& tol);

// Orthonormal basis of ker(m) (columns), rank decided like span().
// For a matrix with no rows the kernel is everything.
Eigen::MatrixXd nullspace_basis(const MatrixXd& m, const Tolerances& tol);

// Inertia of a symmetric form via a self-adjoint eigensolver.
Signature signature(const SymBilinearForm& g, const Tolerances& tol);

// || A^T G + G A ||_F  -- zero iff A is g-antisymmetric (A in so(g)).
double antisym_residual(const MatrixXd& a, const SymBilinearForm& g);

// Dimension of trilinear tensors on R^n that are symmetric in the first two
// slots and antisymmetric in the last two.  (It is 0 for every n; computed
// honestly from the constraint system so callers can cross-check.)
int trilinear_symmetry_nullspace_dim(int n);

}  // namespace metrize
