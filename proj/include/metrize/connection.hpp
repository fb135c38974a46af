#pragma once

#include <vector>

#include "metrize/linalg.hpp"

namespace metrize {

// A torsion-free connection on R^n with constant coefficients:
//   Gamma(e_i, e_j) = sum_k comp[k](i,j) e_k,
// so comp[k] is the matrix of k-th output coordinates.  Torsion-freeness is
// exactly the symmetry comp[k](i,j) == comp[k](j,i), which the constructor
// requires as an exact equality.
class ConstantConnection {
 public:
  explicit ConstantConnection(std::vector<MatrixXd> components);
  static ConstantConnection zero(int n);

  int dim() const { return n_; }
  const std::vector<MatrixXd>& components() const { return comp_; }
  double coeff(int k, int i, int j) const { return comp_[k](i, j); }

  // Matrix of the endomorphism w |-> Gamma(v, w):  gamma(v)(k,j) = sum_i v_i comp[k](i,j).
  MatrixXd gamma(const VectorXd& v) const;

  // gamma(e_i) without building the basis vector.
  MatrixXd gamma_basis(int i) const;

 private:
  int n_ = 0;
  std::vector<MatrixXd> comp_;
};

// Span of { gamma(v) : v in R^n }, generated by the gamma(e_i).
MatrixSubspace generators(const ConstantConnection& conn, const Tolerances& tol);

// Curvature operator R(v, w) = [gamma(v), gamma(w)] (constant coefficients
// kill the derivative terms).
MatrixXd curvature(const ConstantConnection& conn, const VectorXd& v, const VectorXd& w);

// Parallel transport from the origin along t |-> t*v, namely exp(-t gamma(v)).
MatrixXd ray_transport(const ConstantConnection& conn, const VectorXd& v, double t);

// Transform of the coefficient tensor under the linear change of frame L
// (components as a (1,2)-tensor); the result is symmetrized exactly.
ConstantConnection conjugate(const ConstantConnection& conn, const MatrixXd& l);

// A metric on R^n determined by a connection and a form at the origin: the
// value at x is pulled back through ray transport,
//   G(x) = E^T G0 E   with   E = exp(gamma(x)).
class MetricField {
 public:
  MetricField(ConstantConnection conn, SymBilinearForm g0, const Tolerances& tol);

  const ConstantConnection& connection() const { return conn_; }
  const SymBilinearForm& origin_form() const { return g0_; }
  int dim() const { return conn_.dim(); }

  SymBilinearForm at(const VectorXd& x) const;

 private:
  ConstantConnection conn_;
  SymBilinearForm g0_;
};

// Worst-case finite-difference defect of metric compatibility at x:
//   max_k max-entry | d_k G(x) - (gamma(e_k)^T G(x) + G(x) gamma(e_k)) |.
// Central differences with one Richardson extrapolation level.
double compatibility_residual(const MetricField& f, const VectorXd& x, const Tolerances& tol);

// Christoffel symbols recovered from the metric field by finite differences:
//   out[k](i,j) = 1/2 sum_l (G^-1)(k,l) (d_i G(j,l) + d_j G(i,l) - d_l G(i,j)).
// Throws SingularMetric when G(x) is numerically degenerate.
std::vector<MatrixXd> christoffels_from_metric(const MetricField& f, const VectorXd& x,
                                               const Tolerances& tol);

}  // namespace metrize
