#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "metrize/connection.hpp"
#include "metrize/lie_closure.hpp"
#include "metrize/linalg.hpp"

namespace metrize {

// Full answer of an analysis run.  `residuals` carries every cross-check the
// analysis performed; `inconsistency` is set when the verdict and its own
// verification disagree (which should never happen and signals a bug or a
// tolerance problem, not a property of the input).
struct Verdict {
  bool metrizable = false;
  int obstruction_dim = 0;
  int solution_dim = 0;
  std::optional<SymBilinearForm> representative;
  std::optional<Signature> sig;
  std::map<std::string, double> residuals;
  std::optional<std::string> inconsistency;
};

// Deterministic basis of symmetric n x n matrices, unit Frobenius norm:
// E_ii, then (E_ij + E_ji)/sqrt(2) in row-major (i, j) order.
std::vector<MatrixXd> sym_matrix_basis(int n);

// All symmetric G with A^T G + G A = 0 for every A in v (orthonormal basis).
// For an empty v this is the full symmetric space with its canonical basis.
MatrixSubspace solve_antisym_constraints(const MatrixSubspace& v, const Tolerances& tol);

// Search `sol` for an element with |det| above det_tol after unit-Frobenius
// normalization.  Probes: projection of the identity, basis elements,
// pairwise sums/differences, then 64 seeded random combinations.  Returns
// the best candidate (sign-fixed) and the best |det| seen.
struct RepresentativeResult {
  std::optional<SymBilinearForm> form;
  double best_abs_det = 0.0;
};
RepresentativeResult nondegenerate_representative(const MatrixSubspace& sol,
                                                  const Tolerances& tol);

// Heavier probe pass used before certifying that no nondegenerate element
// exists: moment-curve combinations plus 3 x 64 fresh random draws.
RepresentativeResult certify_no_representative(const MatrixSubspace& sol, const Tolerances& tol);

// Does g0 make every element of v antisymmetric?  Returns (yes, residual)
// where residual is the worst antisymmetry defect against g0 normalized to
// unit Frobenius.  Throws InvalidInput when g0 is degenerate.
std::pair<bool, double> forms_compatible(const MatrixSubspace& v, const SymBilinearForm& g0,
                                         const Tolerances& tol);

// Is the constant connection the Levi-Civita connection of a metric with
// value g0 at the origin?
std::pair<bool, double> extendable_with(const ConstantConnection& conn, const SymBilinearForm& g0,
                                        const Tolerances& tol);

// Decide metrizability of a constant connection, produce a representative
// metric when one exists, and verify the whole answer numerically.
Verdict analyze(const ConstantConnection& conn, const Tolerances& tol);

}  // namespace metrize
