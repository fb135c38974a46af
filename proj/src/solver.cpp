#include "metrize/solver.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "metrize/rng.hpp"
#include "metrize/verify.hpp"

namespace metrize {

namespace {

// Residual below which the sampled exp-conjugation condition counts as
// satisfied; paired with the word-span soundness bound.
constexpr double kSampleConditionTol = 1e-7;

double abs_det_normalized(const MatrixXd& g) {
  double norm = g.norm();
  if (!(norm > 0.0)) return 0.0;
  return std::abs((g / norm).determinant());
}

// Deterministic sign: prefer positive trace; for traceless candidates make
// the first nonzero entry (column-major) positive.
MatrixXd sign_fixed(const MatrixXd& g) {
  double tr = g.trace();
  if (tr > kZeroFloor * g.norm()) return g;
  if (tr < -kZeroFloor * g.norm()) return -g;
  for (int j = 0; j < g.cols(); ++j)
    for (int i = 0; i < g.rows(); ++i) {
      if (g(i, j) > 0.0) return g;
      if (g(i, j) < 0.0) return -g;
    }
  return g;
}

void consider(const MatrixXd& cand, RepresentativeResult& best) {
  double norm = cand.norm();
  if (!(norm > kZeroFloor)) return;
  double d = abs_det_normalized(cand);
  if (d > best.best_abs_det) {
    best.best_abs_det = d;
    best.form = SymBilinearForm(sign_fixed(cand / norm));
  }
}

void consider_random_combos(const MatrixSubspace& sol, SplitRng rng, int count,
                            RepresentativeResult& best) {
  const int d = sol.dim();
  for (int t = 0; t < count; ++t) {
    VectorXd c(d);
    for (int i = 0; i < d; ++i) c(i) = rng.gaussian();
    if (!(c.norm() > 0.0)) continue;
    c /= c.norm();
    MatrixXd g = MatrixXd::Zero(sol.n, sol.n);
    for (int i = 0; i < d; ++i) g += c(i) * sol.basis[i];
    consider(g, best);
  }
}

}  // namespace

std::vector<MatrixXd> sym_matrix_basis(int n) {
  if (n < 1 || n > kMaxDim) throw InvalidInput("sym_matrix_basis: dimension out of range");
  std::vector<MatrixXd> out;
  out.reserve(n * (n + 1) / 2);
  for (int i = 0; i < n; ++i) {
    MatrixXd e = MatrixXd::Zero(n, n);
    e(i, i) = 1.0;
    out.push_back(std::move(e));
  }
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      MatrixXd e = MatrixXd::Zero(n, n);
      e(i, j) = r;
      e(j, i) = r;
      out.push_back(std::move(e));
    }
  return out;
}

MatrixSubspace solve_antisym_constraints(const MatrixSubspace& v, const Tolerances& tol) {
  tol.validate();
  const int n = v.n;
  if (n < 1) throw InvalidInput("solve_antisym_constraints: empty ambient space");
  std::vector<MatrixXd> sym = sym_matrix_basis(n);
  const int m = static_cast<int>(sym.size());
  if (v.dim() == 0) return MatrixSubspace{n, std::move(sym)};

  // Row block i holds vec(A_i^T S_j + S_j A_i) for the symmetric basis S_j.
  MatrixXd system(v.dim() * n * n, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < v.dim(); ++i) {
      const MatrixXd& a = v.basis[i];
      system.block(i * n * n, j, n * n, 1) = vectorize(a.transpose() * sym[j] + sym[j] * a);
    }
  MatrixXd ker = nullspace_basis(system, tol);

  MatrixSubspace out{n, {}};
  out.basis.reserve(ker.cols());
  for (int c = 0; c < ker.cols(); ++c) {
    MatrixXd g = MatrixXd::Zero(n, n);
    for (int j = 0; j < m; ++j) g += ker(j, c) * sym[j];
    out.basis.push_back(std::move(g));  // orthonormal because ker and sym are
  }
  return out;
}

RepresentativeResult nondegenerate_representative(const MatrixSubspace& sol,
                                                  const Tolerances& tol) {
  tol.validate();
  RepresentativeResult best;
  if (sol.dim() == 0) return best;

  consider(sol.project(MatrixXd::Identity(sol.n, sol.n)), best);
  for (int i = 0; i < sol.dim(); ++i) consider(sol.basis[i], best);
  for (int i = 0; i < sol.dim(); ++i)
    for (int j = i + 1; j < sol.dim(); ++j) {
      consider(sol.basis[i] + sol.basis[j], best);
      consider(sol.basis[i] - sol.basis[j], best);
    }
  consider_random_combos(sol, SplitRng(tol.seed).split(stream_tag("representative")), 64, best);

  if (!(best.best_abs_det > tol.det_tol)) best.form.reset();
  return best;
}

RepresentativeResult certify_no_representative(const MatrixSubspace& sol, const Tolerances& tol) {
  tol.validate();
  RepresentativeResult best;
  if (sol.dim() == 0) return best;
  const int d = sol.dim();
  const int n = sol.n;

  // det restricted to the solution span is a polynomial in the coefficients;
  // if it is not identically zero, it is nonzero at generic points.  Probe a
  // moment curve (Vandermonde nodes, hence "spread out" coefficients) ...
  const int lattice = n * (n + 1) / 2 + 2;
  for (int p = 0; p < lattice; ++p) {
    double t = static_cast<double>(p + 1) / static_cast<double>(lattice);
    VectorXd c(d);
    double power = 1.0;
    for (int i = 0; i < d; ++i) {
      c(i) = power;
      power *= t;
    }
    c /= c.norm();
    MatrixXd g = MatrixXd::Zero(n, n);
    for (int i = 0; i < d; ++i) g += c(i) * sol.basis[i];
    consider(g, best);
  }
  // ... plus three independent random batches.
  SplitRng root = SplitRng(tol.seed).split(stream_tag("certify"));
  for (std::uint64_t batch = 0; batch < 3; ++batch)
    consider_random_combos(sol, root.split(batch), 64, best);

  if (!(best.best_abs_det > tol.det_tol)) best.form.reset();
  return best;
}

std::pair<bool, double> forms_compatible(const MatrixSubspace& v, const SymBilinearForm& g0,
                                         const Tolerances& tol) {
  tol.validate();
  if (!g0.nondegenerate(tol)) throw InvalidInput("forms_compatible: degenerate form");
  if (v.dim() > 0 && v.n != g0.dim())
    throw InvalidInput("forms_compatible: dimension mismatch");
  double worst = 0.0;
  for (const MatrixXd& a : v.basis) worst = std::max(worst, antisym_residual(a, g0));
  return {worst < tol.verify_tol, worst};
}

std::pair<bool, double> extendable_with(const ConstantConnection& conn, const SymBilinearForm& g0,
                                        const Tolerances& tol) {
  if (conn.dim() != g0.dim()) throw InvalidInput("extendable_with: dimension mismatch");
  return forms_compatible(obstruction_space(conn, tol), g0, tol);
}

Verdict analyze(const ConstantConnection& conn, const Tolerances& tol) {
  tol.validate();
  Verdict out;

  MatrixSubspace gens_space = generators(conn, tol);
  MatrixSubspace seeds = commutator_span(gens_space, gens_space, tol);
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

    MetricField field(conn, *rep.form, tol);
    VerifyReport report = verify_metric(field, tol);
    out.residuals["compatibility"] = report.compatibility;
    out.residuals["christoffel_recovery"] = report.christoffel_recovery;
    out.residuals["holonomy"] = report.holonomy;
    if (!report.pass(tol))
      problems.push_back("metric verification exceeded the tolerance");

    double sampled = sample_condition_rn(conn, *rep.form, 100, tol);
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

}  // namespace metrize
