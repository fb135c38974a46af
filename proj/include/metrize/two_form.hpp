#pragma once

#include <map>
#include <vector>

#include "metrize/connection.hpp"
#include "metrize/linalg.hpp"

namespace metrize {

// Sparse polynomial in n variables with real coefficients; terms are kept in
// a map keyed by exponent vectors, so arithmetic is order-independent and
// exactly-cancelling coefficients are erased.  Total degree is capped at 8.
class Polynomial {
 public:
  explicit Polynomial(int nvars = 0) : nvars_(nvars) {}
  static Polynomial constant(int nvars, double c);
  static Polynomial monomial(int nvars, const std::vector<int>& exponents, double coeff);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  double max_abs_coeff() const;

  void add_term(const std::vector<int>& exponents, double coeff);
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial scaled(double c) const;
  Polynomial derivative(int var) const;
  double evaluate(const VectorXd& x) const;

  const std::map<std::vector<int>, double>& terms() const { return terms_; }

 private:
  int nvars_ = 0;
  std::map<std::vector<int>, double> terms_;
};

// 2-form on R^n with polynomial coefficients; only entries i < j are stored,
// the rest follow by antisymmetry.
class PolyTwoForm {
 public:
  PolyTwoForm(int n, std::map<std::pair<int, int>, Polynomial> upper);
  static PolyTwoForm standard_symplectic(int n);

  int dim() const { return n_; }
  const std::map<std::pair<int, int>, Polynomial>& upper() const { return upper_; }

  // Coefficient function omega_{ij}; negated copy for i > j, zero for i == j.
  Polynomial component(int i, int j) const;

  // Value matrix at x (exactly antisymmetric).
  MatrixXd evaluate(const VectorXd& x) const;

  bool constant_coefficients() const;

 private:
  int n_ = 0;
  std::map<std::pair<int, int>, Polynomial> upper_;
};

// Coefficient polynomial of the exterior derivative, (d omega)_{ijk} for
// i < j < k:  d_i omega_jk - d_j omega_ik + d_k omega_ij.
Polynomial exterior_derivative_component(const PolyTwoForm& w, int i, int j, int k);

// Largest absolute coefficient over all (d omega)_{ijk}; the form is closed
// exactly when this is 0 (a coefficient test, not a numerical one).
double exterior_derivative_max_coeff(const PolyTwoForm& w);

// Worst defect of the identity  (d omega)_{ijk} = T_ijk - T_jik + T_kij,
// T_abc = d_a omega_bc - omega(Gamma(e_a, e_b), e_c) - omega(e_b, Gamma(e_a, e_c)),
// evaluated at the given points (an unnormalized alternation of the covariant
// derivative; the connection must be torsion-free, which the type enforces).
double alt_nabla_identity_residual(const PolyTwoForm& w, const ConstantConnection& conn,
                                   const std::vector<VectorXd>& points);

// |det| of the normalized value matrix at x compared against det_tol.
bool nondegenerate_at(const PolyTwoForm& w, const VectorXd& x, const Tolerances& tol);

// For a nondegenerate constant-coefficient 2-form the zero connection is a
// torsion-free compatible connection; returns it after checking those
// hypotheses (NotSupported for non-constant coefficients).
ConstantConnection compatible_connection_for_constant(const PolyTwoForm& w, const Tolerances& tol);

}  // namespace metrize
