#pragma once

#include <optional>

#include "metrize/connection.hpp"
#include "metrize/linalg.hpp"

namespace metrize {

// In dimension 2, metrizability of a constant connection reduces to whether
// gamma(e_1) and gamma(e_2) commute; `witness` is their commutator.
struct Dim2Classification {
  bool commuting = false;
  MatrixXd witness;
};
Dim2Classification classify_dim2(const ConstantConnection& conn, const Tolerances& tol);

// For a single traceless invertible 2 x 2 map A, build a form g0 with
// A in so(g0): in a basis where A = [[0, eps*a], [a, 0]] (eps = -sign det A,
// a = sqrt|det A|), take g0 = diag(1, -eps).  Returns nothing when A fails
// the trace gate (|tr A| >= verify_tol * ||A||_F) or the invertibility gate
// (|det A| < det_tol * ||A||_F^2); the returned form is unit-Frobenius.
struct SoFormResult {
  SymBilinearForm form;
  Signature sig;
};
std::optional<SoFormResult> so_form_for(const MatrixXd& a, const Tolerances& tol);

// Bracket-closure profile of a 2-dimensional constant connection: dimensions
// of the generated matrix Lie algebra and of its derived algebra, and (when
// the derived algebra is a line) whether its generator is invertible.
struct Dim2Report {
  int closure_dim = 0;
  int derived_dim = 0;
  std::optional<bool> derived_generator_invertible;
};
Dim2Report derived_algebra_dim2_report(const ConstantConnection& conn, const Tolerances& tol);

}  // namespace metrize
