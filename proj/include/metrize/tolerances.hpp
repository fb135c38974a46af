#pragma once

#include <cstddef>
#include <cstdint>

#include "metrize/errors.hpp"

namespace metrize {

// Numerical policy shared by every operation.  All cutoffs are explicit and
// travel together so that a verdict is reproducible from (input, Tolerances)
// alone; `seed` feeds every random draw made anywhere in the library.
struct Tolerances {
  double rank_tol = 1e-10;   // relative singular-value cutoff for rank decisions
  double det_tol = 1e-8;     // |det| threshold, applied to unit-Frobenius-normalized forms
  double verify_tol = 1e-8;  // acceptance bound for verification residuals
  double fd_step = 1e-5;     // base step for finite-difference derivatives
  std::uint64_t seed = 0;

  void validate() const {
    if (!(rank_tol > 0.0) || !(det_tol > 0.0) || !(verify_tol > 0.0) || !(fd_step > 0.0))
      throw InvalidInput("tolerances must be strictly positive");
  }
};

// Hard cap on the ambient dimension.  Word enumeration and the 5^n sample
// grid grow combinatorially; past this the exact pipeline is out of scope.
inline constexpr int kMaxDim = 8;

// Relative floor under which a computed matrix is treated as an exact zero
// (used when discarding commutators / words that only contain roundoff).
inline constexpr double kZeroFloor = 1e-12;

// Structural gates that are preconditions rather than verification targets:
// Jacobi identity of structure constants and torsion of a group connection.
inline constexpr double kStructureTol = 1e-10;

// Cap on the total number of symmetrized words materialized during one
// obstruction-space enumeration.
inline constexpr std::size_t kWordBudget = 1000000;

}  // namespace metrize
