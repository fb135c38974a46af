#pragma once

#include <string>
#include <vector>

#include "metrize/linalg.hpp"
#include "metrize/solver.hpp"

namespace metrize {

// A Lie algebra given by structure constants: [e_i, e_j] = sum_k c[k](i,j) e_k.
// The constructor requires exact antisymmetry c[k](i,j) == -c[k](j,i) and a
// Jacobi-identity residual below a fixed 1e-10.
class LieAlgebraStructure {
 public:
  explicit LieAlgebraStructure(std::vector<MatrixXd> c);
  static LieAlgebraStructure abelian(int n);

  int dim() const { return n_; }
  const std::vector<MatrixXd>& constants() const { return c_; }
  double coeff(int k, int i, int j) const { return c_[k](i, j); }

  // [u, v]
  VectorXd bracket(const VectorXd& u, const VectorXd& v) const;

  // Matrix of ad_v = [v, .]
  MatrixXd ad(const VectorXd& v) const;
  MatrixXd ad_basis(int i) const;

  double jacobi_residual() const;

 private:
  int n_ = 0;
  std::vector<MatrixXd> c_;
};

// A left-invariant connection on the Lie group of `algebra`, described on the
// algebra by Gamma(e_i, e_j) = sum_k gamma[k](i,j) e_k.  Torsion is allowed
// by the type; operations that need a symmetric connection check it.
class InvariantConnection {
 public:
  InvariantConnection(LieAlgebraStructure algebra, std::vector<MatrixXd> gamma);

  int dim() const { return alg_.dim(); }
  const LieAlgebraStructure& algebra() const { return alg_; }
  const std::vector<MatrixXd>& components() const { return comp_; }
  double coeff(int k, int i, int j) const { return comp_[k](i, j); }

  // Matrix of w |-> Gamma(v, w).
  MatrixXd gamma(const VectorXd& v) const;
  MatrixXd gamma_basis(int i) const;

 private:
  LieAlgebraStructure alg_;
  std::vector<MatrixXd> comp_;
};

// Torsion tensor t[k](i,j) = gamma[k](i,j) - gamma[k](j,i) - c[k](i,j).
std::vector<MatrixXd> torsion(const InvariantConnection& conn);
double torsion_residual(const InvariantConnection& conn);

// Curvature operator R(e_i, e_j) = [Gamma_i, Gamma_j] - Gamma([e_i, e_j]).
MatrixXd curvature_lg(const InvariantConnection& conn, int i, int j);

// Span of all ad-words in the Gamma_i applied to the curvature operators.
MatrixSubspace obstruction_space_lg(const InvariantConnection& conn, const Tolerances& tol);

// Parallel transport along t |-> exp(t X) from the identity: exp(-t Gamma(X)).
MatrixXd group_transport(const InvariantConnection& conn, const VectorXd& x, double t);

// Transport along a piecewise one-parameter path, segments applied in order.
struct GroupSegment {
  VectorXd direction;
  double time = 0.0;
};
MatrixXd group_path_transport(const InvariantConnection& conn,
                              const std::vector<GroupSegment>& segments);

// Is `conn` the Levi-Civita connection of the left-invariant metric with
// value h on the algebra?  Throws TorsionError when conn has torsion.
std::pair<bool, double> extendable_with_lg(const InvariantConnection& conn,
                                           const SymBilinearForm& h, const Tolerances& tol);

// Decide metrizability among left-invariant metrics, with verification.
Verdict analyze_lg(const InvariantConnection& conn, const Tolerances& tol);

// Levi-Civita connection of the left-invariant metric h, via the Koszul
// formula 2 h(Gamma(x) y, z) = h([x,y],z) - h([y,z],x) + h([z,x],y).
InvariantConnection levi_civita_invariant(const LieAlgebraStructure& algebra,
                                          const SymBilinearForm& h, const Tolerances& tol);

// Small catalog of algebras with exact structure constants.
LieAlgebraStructure catalog_algebra(const std::string& name);
std::vector<std::string> catalog_names();

}  // namespace metrize
