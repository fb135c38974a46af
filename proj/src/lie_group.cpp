#include "metrize/lie_group.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "metrize/lie_closure.hpp"
#include "metrize/verify.hpp"

namespace metrize {

namespace {

constexpr double kSampleConditionTol = 1e-7;

void check_tensor_shape(const std::vector<MatrixXd>& t, const char* what) {
  const int n = static_cast<int>(t.size());
  if (n < 1) throw InvalidInput(std::string(what) + ": empty tensor");
  if (n > kMaxDim)
    throw NotSupported(std::string(what) + ": dimension above the supported maximum");
  for (const MatrixXd& m : t) {
    if (m.rows() != n || m.cols() != n)
      throw InvalidInput(std::string(what) + ": component shape mismatch");
    if (!is_finite(m)) throw InvalidInput(std::string(what) + ": non-finite entries");
  }
}

}  // namespace

LieAlgebraStructure::LieAlgebraStructure(std::vector<MatrixXd> c) : c_(std::move(c)) {
  check_tensor_shape(c_, "structure constants");
  n_ = static_cast<int>(c_.size());
  for (int k = 0; k < n_; ++k)
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j <= i; ++j)
        if (c_[k](i, j) != -c_[k](j, i))
          throw InvalidInput("structure constants: antisymmetry must hold exactly");
  if (jacobi_residual() >= kStructureTol)
    throw InvalidInput("structure constants: Jacobi identity violated");
}

LieAlgebraStructure LieAlgebraStructure::abelian(int n) {
  if (n < 1) throw InvalidInput("abelian: dimension must be positive");
  if (n > kMaxDim) throw NotSupported("abelian: dimension above the supported maximum");
  return LieAlgebraStructure(std::vector<MatrixXd>(n, MatrixXd::Zero(n, n)));
}

VectorXd LieAlgebraStructure::bracket(const VectorXd& u, const VectorXd& v) const {
  VectorXd out(n_);
  for (int k = 0; k < n_; ++k) out(k) = u.dot(c_[k] * v);
  return out;
}

MatrixXd LieAlgebraStructure::ad(const VectorXd& v) const {
  MatrixXd out(n_, n_);
  for (int k = 0; k < n_; ++k) out.row(k) = v.transpose() * c_[k];
  return out;
}

MatrixXd LieAlgebraStructure::ad_basis(int i) const {
  MatrixXd out(n_, n_);
  for (int k = 0; k < n_; ++k) out.row(k) = c_[k].row(i);
  return out;
}

double LieAlgebraStructure::jacobi_residual() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      for (int k = j + 1; k < n_; ++k) {
        VectorXd ei = VectorXd::Unit(n_, i), ej = VectorXd::Unit(n_, j),
                 ek = VectorXd::Unit(n_, k);
        VectorXd cyc = bracket(ei, bracket(ej, ek)) + bracket(ej, bracket(ek, ei)) +
                       bracket(ek, bracket(ei, ej));
        worst = std::max(worst, cyc.norm());
      }
  return worst;
}

InvariantConnection::InvariantConnection(LieAlgebraStructure algebra, std::vector<MatrixXd> gamma)
    : alg_(std::move(algebra)), comp_(std::move(gamma)) {
  check_tensor_shape(comp_, "invariant connection");
  if (static_cast<int>(comp_.size()) != alg_.dim())
    throw InvalidInput("invariant connection: algebra / gamma dimension mismatch");
}

MatrixXd InvariantConnection::gamma(const VectorXd& v) const {
  const int n = dim();
  if (v.size() != n) throw InvalidInput("gamma: vector dimension mismatch");
  MatrixXd out(n, n);
  for (int k = 0; k < n; ++k) out.row(k) = v.transpose() * comp_[k];
  return out;
}

MatrixXd InvariantConnection::gamma_basis(int i) const {
  const int n = dim();
  if (i < 0 || i >= n) throw InvalidInput("gamma_basis: index out of range");
  MatrixXd out(n, n);
  for (int k = 0; k < n; ++k) out.row(k) = comp_[k].row(i);
  return out;
}

std::vector<MatrixXd> torsion(const InvariantConnection& conn) {
  const int n = conn.dim();
  std::vector<MatrixXd> t;
  t.reserve(n);
  for (int k = 0; k < n; ++k)
    t.push_back(conn.components()[k] - conn.components()[k].transpose() -
                conn.algebra().constants()[k]);
  return t;
}

double torsion_residual(const InvariantConnection& conn) {
  double worst = 0.0;
  for (const MatrixXd& m : torsion(conn)) worst = std::max(worst, m.cwiseAbs().maxCoeff());
  return worst;
}

namespace {

void require_torsion_free(const InvariantConnection& conn) {
  double res = torsion_residual(conn);
  if (res >= kStructureTol)
    throw TorsionError("connection has torsion (largest component " + std::to_string(res) + ")",
                       torsion(conn), res);
}

VectorXd basis_bracket(const LieAlgebraStructure& alg, int i, int j) {
  VectorXd out(alg.dim());
  for (int k = 0; k < alg.dim(); ++k) out(k) = alg.coeff(k, i, j);
  return out;
}

}  // namespace

MatrixXd curvature_lg(const InvariantConnection& conn, int i, int j) {
  const int n = conn.dim();
  if (i < 0 || i >= n || j < 0 || j >= n) throw InvalidInput("curvature_lg: index out of range");
  MatrixXd gi = conn.gamma_basis(i), gj = conn.gamma_basis(j);
  return gi * gj - gj * gi - conn.gamma(basis_bracket(conn.algebra(), i, j));
}

MatrixSubspace obstruction_space_lg(const InvariantConnection& conn, const Tolerances& tol) {
  tol.validate();
  const int n = conn.dim();
  std::vector<MatrixXd> gams;
  for (int i = 0; i < n; ++i) gams.push_back(conn.gamma_basis(i));
  MatrixSubspace gens_space = span(gams, tol);
  gens_space.n = n;

  std::vector<MatrixXd> curv;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      MatrixXd r = curvature_lg(conn, i, j);
      double scale = 2.0 * gams[i].norm() * gams[j].norm() +
                     conn.gamma(basis_bracket(conn.algebra(), i, j)).norm();
      if (r.norm() > kZeroFloor * scale) curv.push_back(std::move(r));
    }
  MatrixSubspace seeds = span(curv, tol);
  seeds.n = n;
  return symmetrized_word_span(gens_space, seeds, tol);
}

MatrixXd group_transport(const InvariantConnection& conn, const VectorXd& x, double t) {
  return mat_exp(-t * conn.gamma(x));
}

MatrixXd group_path_transport(const InvariantConnection& conn,
                              const std::vector<GroupSegment>& segments) {
  MatrixXd p = MatrixXd::Identity(conn.dim(), conn.dim());
  for (const GroupSegment& s : segments) p = group_transport(conn, s.direction, s.time) * p;
  return p;
}

std::pair<bool, double> extendable_with_lg(const InvariantConnection& conn,
                                           const SymBilinearForm& h, const Tolerances& tol) {
  tol.validate();
  if (conn.dim() != h.dim()) throw InvalidInput("extendable_with_lg: dimension mismatch");
  require_torsion_free(conn);
  return forms_compatible(obstruction_space_lg(conn, tol), h, tol);
}

Verdict analyze_lg(const InvariantConnection& conn, const Tolerances& tol) {
  tol.validate();
  require_torsion_free(conn);
  Verdict out;

  const int n = conn.dim();
  std::vector<MatrixXd> gams;
  for (int i = 0; i < n; ++i) gams.push_back(conn.gamma_basis(i));
  MatrixSubspace gens_space = span(gams, tol);
  gens_space.n = n;
  std::vector<MatrixXd> curv;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      MatrixXd r = curvature_lg(conn, i, j);
      double scale = 2.0 * gams[i].norm() * gams[j].norm() +
                     conn.gamma(basis_bracket(conn.algebra(), i, j)).norm();
      if (r.norm() > kZeroFloor * scale) curv.push_back(std::move(r));
    }
  MatrixSubspace seeds = span(curv, tol);
  seeds.n = n;
  MatrixSubspace v = symmetrized_word_span(gens_space, seeds, tol);
  MatrixSubspace sol = solve_antisym_constraints(v, tol);
  out.obstruction_dim = v.dim();
  out.solution_dim = sol.dim();

  std::vector<std::string> problems;

  double soundness = word_soundness_residual(gens_space, seeds, v, 100, tol);
  out.residuals["word_soundness"] = soundness;
  if (!(soundness < kSampleConditionTol))
    problems.push_back("sampled words escaped the computed obstruction space");

  RepresentativeResult rep = nondegenerate_representative(sol, tol);
  if (!rep.form) rep = certify_no_representative(sol, tol);

  if (rep.form) {
    out.metrizable = true;
    out.representative = rep.form;
    out.sig = signature(*rep.form, tol);

    double membership = forms_compatible(v, *rep.form, tol).second;
    out.residuals["antisymmetry"] = membership;
    if (!(membership < tol.verify_tol))
      problems.push_back("representative does not antisymmetrize the obstruction space");

    double sampled = sample_condition_group(conn, *rep.form, 50, tol);
    out.residuals["sample_condition"] = sampled;
    if (!(sampled < kSampleConditionTol))
      problems.push_back("sampled conjugation condition failed for the representative");
  } else {
    out.metrizable = false;
    out.residuals["best_abs_det"] = rep.best_abs_det;
  }

  if (!problems.empty()) {
    std::string joined = problems[0];
    for (std::size_t i = 1; i < problems.size(); ++i) joined += "; " + problems[i];
    out.inconsistency = joined;
  }
  return out;
}

InvariantConnection levi_civita_invariant(const LieAlgebraStructure& algebra,
                                          const SymBilinearForm& h, const Tolerances& tol) {
  tol.validate();
  const int n = algebra.dim();
  if (h.dim() != n) throw InvalidInput("levi_civita_invariant: dimension mismatch");
  if (!h.nondegenerate(tol)) throw InvalidInput("levi_civita_invariant: degenerate metric");

  MatrixXd hinv = h.matrix().fullPivLu().inverse();
  std::vector<MatrixXd> gamma(n, MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // 2 h(Gamma(e_i) e_j, e_k) = h([e_i,e_j],e_k) - h([e_j,e_k],e_i) + h([e_k,e_i],e_j)
      VectorXd rhs(n);
      VectorXd ei = VectorXd::Unit(n, i), ej = VectorXd::Unit(n, j);
      for (int k = 0; k < n; ++k) {
        VectorXd ek = VectorXd::Unit(n, k);
        rhs(k) = h(algebra.bracket(ei, ej), ek) - h(algebra.bracket(ej, ek), ei) +
                 h(algebra.bracket(ek, ei), ej);
      }
      VectorXd x = 0.5 * (hinv * rhs);
      for (int k = 0; k < n; ++k) gamma[k](i, j) = x(k);
    }
  return InvariantConnection(algebra, std::move(gamma));
}

LieAlgebraStructure catalog_algebra(const std::string& name) {
  auto zero3 = [] { return std::vector<MatrixXd>(3, MatrixXd::Zero(3, 3)); };
  if (name == "abelian3") return LieAlgebraStructure(zero3());
  if (name == "nonabelian2") {
    // [e1, e2] = e2
    std::vector<MatrixXd> c(2, MatrixXd::Zero(2, 2));
    c[1](0, 1) = 1.0;
    c[1](1, 0) = -1.0;
    return LieAlgebraStructure(std::move(c));
  }
  if (name == "heisenberg") {
    // [e1, e2] = e3
    std::vector<MatrixXd> c = zero3();
    c[2](0, 1) = 1.0;
    c[2](1, 0) = -1.0;
    return LieAlgebraStructure(std::move(c));
  }
  if (name == "so3") {
    // [e1, e2] = e3 and cyclic
    std::vector<MatrixXd> c = zero3();
    c[2](0, 1) = 1.0;
    c[2](1, 0) = -1.0;
    c[0](1, 2) = 1.0;
    c[0](2, 1) = -1.0;
    c[1](2, 0) = 1.0;
    c[1](0, 2) = -1.0;
    return LieAlgebraStructure(std::move(c));
  }
  if (name == "sl2") {
    // e1 = H, e2 = E, e3 = F: [H,E] = 2E, [H,F] = -2F, [E,F] = H
    std::vector<MatrixXd> c = zero3();
    c[1](0, 1) = 2.0;
    c[1](1, 0) = -2.0;
    c[2](0, 2) = -2.0;
    c[2](2, 0) = 2.0;
    c[0](1, 2) = 1.0;
    c[0](2, 1) = -1.0;
    return LieAlgebraStructure(std::move(c));
  }
  throw InvalidInput("unknown catalog algebra '" + name + "'");
}

std::vector<std::string> catalog_names() {
  return {"abelian3", "heisenberg", "nonabelian2", "sl2", "so3"};
}

}  // namespace metrize
