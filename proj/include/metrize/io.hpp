#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "json.hpp"

#include "metrize/connection.hpp"
#include "metrize/lie_group.hpp"
#include "metrize/solver.hpp"
#include "metrize/two_form.hpp"

namespace metrize {

inline constexpr const char* kToolVersion = "0.1.0";

// A parsed problem file: one connection of either kind plus the numerical
// policy (file values overridden later by CLI flags where given).
struct Problem {
  std::variant<ConstantConnection, InvariantConnection> connection;
  Tolerances tol;

  bool euclidean() const { return connection.index() == 0; }
  const ConstantConnection& constant() const { return std::get<0>(connection); }
  const InvariantConnection& invariant() const { return std::get<1>(connection); }
};

// Parsers throw InvalidInput (or NotSupported for valid-but-out-of-scope
// data) with messages naming the offending field.
Problem problem_from_json(const nlohmann::json& j);
nlohmann::ordered_json problem_to_json(const ConstantConnection& conn, const Tolerances& tol);
nlohmann::ordered_json problem_to_json(const InvariantConnection& conn, const Tolerances& tol);

SymBilinearForm metric_from_json(const nlohmann::json& j);
nlohmann::ordered_json metric_to_json(const SymBilinearForm& g);

PolyTwoForm two_form_from_json(const nlohmann::json& j);
nlohmann::ordered_json two_form_to_json(const PolyTwoForm& w);

// Output fields in a fixed order; absent values serialize as null.
nlohmann::ordered_json verdict_to_json(const Verdict& v, std::uint64_t seed);

nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace metrize
