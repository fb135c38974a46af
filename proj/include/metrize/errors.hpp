#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace metrize {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract input data (wrong shapes, non-finite entries,
// broken symmetry, degenerate forms where nondegenerate ones are required...).
struct InvalidInput : Error {
  using Error::Error;
};

// A metric turned out to be numerically degenerate at a point where an
// inverse was needed.
struct SingularMetric : Error {
  using Error::Error;
};

// Word enumeration would exceed the fixed budget; the instance is out of
// scope for the exact algorithm, not "not metrizable".
struct CapacityExceeded : Error {
  using Error::Error;
};

// An operation that requires a torsion-free connection received one with
// torsion.  Carries the offending tensor t[k](i,j) and its largest entry.
struct TorsionError : Error {
  TorsionError(const std::string& msg, std::vector<Eigen::MatrixXd> tensor, double max_entry)
      : Error(msg), torsion(std::move(tensor)), max_abs_entry(max_entry) {}
  std::vector<Eigen::MatrixXd> torsion;
  double max_abs_entry = 0.0;
};

// Structurally valid input outside the supported scope of the tool.
struct NotSupported : Error {
  using Error::Error;
};

}  // namespace metrize
