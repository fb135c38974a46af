#include "metrize/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace metrize {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

int read_dimension(const json& j) {
  if (!j.contains("dimension") || !j["dimension"].is_number_integer())
    throw InvalidInput("problem file: integer field 'dimension' is required");
  int n = j["dimension"].get<int>();
  if (n < 1 || n > kMaxDim)
    throw InvalidInput("problem file: 'dimension' must be between 1 and " +
                       std::to_string(kMaxDim));
  return n;
}

std::vector<MatrixXd> read_tensor3(const json& j, const std::string& field, int n) {
  if (!j.contains(field) || !j[field].is_array() || static_cast<int>(j[field].size()) != n)
    throw InvalidInput("problem file: '" + field + "' must be an array of " + std::to_string(n) +
                       " square matrices");
  std::vector<MatrixXd> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    const json& mk = j[field][k];
    if (!mk.is_array() || static_cast<int>(mk.size()) != n)
      throw InvalidInput("problem file: '" + field + "' component " + std::to_string(k) +
                         " has the wrong number of rows");
    MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      const json& row = mk[i];
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        throw InvalidInput("problem file: '" + field + "' component " + std::to_string(k) +
                           " row " + std::to_string(i) + " has the wrong length");
      for (int jj = 0; jj < n; ++jj) {
        if (!row[jj].is_number())
          throw InvalidInput("problem file: '" + field + "' contains a non-numeric entry");
        m(i, jj) = row[jj].get<double>();
      }
    }
    if (!is_finite(m))
      throw InvalidInput("problem file: '" + field + "' contains a non-finite entry");
    out.push_back(std::move(m));
  }
  return out;
}

Tolerances read_tolerances(const json& j) {
  Tolerances tol;
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) throw InvalidInput("problem file: 'tolerances' must be an object");
    auto pick = [&t](const char* name, double& slot) {
      if (!t.contains(name)) return;
      if (!t[name].is_number())
        throw InvalidInput(std::string("problem file: tolerance '") + name + "' must be a number");
      slot = t[name].get<double>();
    };
    pick("rank_tol", tol.rank_tol);
    pick("det_tol", tol.det_tol);
    pick("verify_tol", tol.verify_tol);
    pick("fd_step", tol.fd_step);
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer())
      throw InvalidInput("problem file: 'seed' must be an integer");
    tol.seed = j["seed"].get<std::uint64_t>();
  }
  tol.validate();
  return tol;
}

json tensor_to_json(const std::vector<MatrixXd>& t) {
  json out = json::array();
  for (const MatrixXd& m : t) {
    json mk = json::array();
    for (int i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
      mk.push_back(std::move(row));
    }
    out.push_back(std::move(mk));
  }
  return out;
}

json matrix_to_json(const MatrixXd& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

constexpr const char* kConventionNote =
    "gamma[k][i][j] is the e_k coefficient of Gamma(e_i, e_j); structure_constants[k][i][j] "
    "is the e_k coefficient of [e_i, e_j]";

}  // namespace

Problem problem_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("problem file: top level must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw InvalidInput("problem file: string field 'kind' is required");
  std::string kind = j["kind"].get<std::string>();
  int n = read_dimension(j);
  Tolerances tol = read_tolerances(j);

  if (kind == "euclidean") {
    return Problem{ConstantConnection(read_tensor3(j, "gamma", n)), tol};
  }
  if (kind == "lie_group") {
    LieAlgebraStructure alg(read_tensor3(j, "structure_constants", n));
    return Problem{InvariantConnection(std::move(alg), read_tensor3(j, "gamma", n)), tol};
  }
  throw InvalidInput("problem file: 'kind' must be \"euclidean\" or \"lie_group\"");
}

ordered_json problem_to_json(const ConstantConnection& conn, const Tolerances& tol) {
  ordered_json out;
  out["kind"] = "euclidean";
  out["dimension"] = conn.dim();
  out["_convention"] = kConventionNote;
  out["gamma"] = tensor_to_json(conn.components());
  out["seed"] = tol.seed;
  return out;
}

ordered_json problem_to_json(const InvariantConnection& conn, const Tolerances& tol) {
  ordered_json out;
  out["kind"] = "lie_group";
  out["dimension"] = conn.dim();
  out["_convention"] = kConventionNote;
  out["structure_constants"] = tensor_to_json(conn.algebra().constants());
  out["gamma"] = tensor_to_json(conn.components());
  out["seed"] = tol.seed;
  return out;
}

SymBilinearForm metric_from_json(const json& j) {
  if (!j.is_object() || !j.contains("metric") || !j["metric"].is_array())
    throw InvalidInput("metric file: object with a 'metric' matrix is required");
  const json& mj = j["metric"];
  int n = static_cast<int>(mj.size());
  if (n < 1 || n > kMaxDim) throw InvalidInput("metric file: matrix size out of range");
  MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    if (!mj[i].is_array() || static_cast<int>(mj[i].size()) != n)
      throw InvalidInput("metric file: 'metric' must be a square matrix");
    for (int c = 0; c < n; ++c) {
      if (!mj[i][c].is_number()) throw InvalidInput("metric file: non-numeric entry");
      m(i, c) = mj[i][c].get<double>();
    }
  }
  if (!is_finite(m)) throw InvalidInput("metric file: non-finite entry");
  double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (asym > 1e-12 * scale)
    throw InvalidInput("metric file: 'metric' must be symmetric");
  return SymBilinearForm(m);
}

ordered_json metric_to_json(const SymBilinearForm& g) {
  ordered_json out;
  out["metric"] = matrix_to_json(g.matrix());
  return out;
}

PolyTwoForm two_form_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("two-form file: top level must be a JSON object");
  int n = read_dimension(j);
  if (!j.contains("omega") || !j["omega"].is_array())
    throw InvalidInput("two-form file: array field 'omega' is required");

  std::map<std::pair<int, int>, Polynomial> upper;
  for (const json& entry : j["omega"]) {
    if (!entry.is_object() || !entry.contains("i") || !entry.contains("j") ||
        !entry["i"].is_number_integer() || !entry["j"].is_number_integer())
      throw InvalidInput("two-form file: every omega entry needs integer fields 'i' and 'j'");
    int i = entry["i"].get<int>();
    int jj = entry["j"].get<int>();
    if (i < 0 || jj < 0 || i >= n || jj >= n || i == jj)
      throw InvalidInput("two-form file: omega indices must be distinct and within dimension");
    bool flip = i > jj;
    std::pair<int, int> key = flip ? std::make_pair(jj, i) : std::make_pair(i, jj);
    if (upper.count(key))
      throw InvalidInput("two-form file: duplicate omega entry for a component pair");

    if (!entry.contains("monomials") || !entry["monomials"].is_array())
      throw InvalidInput("two-form file: omega entries need a 'monomials' array");
    Polynomial p(n);
    for (const json& mono : entry["monomials"]) {
      if (!mono.is_object() || !mono.contains("exponents") || !mono.contains("coeff") ||
          !mono["exponents"].is_array() || !mono["coeff"].is_number())
        throw InvalidInput("two-form file: monomials need 'exponents' and numeric 'coeff'");
      std::vector<int> e;
      for (const json& x : mono["exponents"]) {
        if (!x.is_number_integer())
          throw InvalidInput("two-form file: exponents must be integers");
        e.push_back(x.get<int>());
      }
      p.add_term(e, mono["coeff"].get<double>());  // validates length, sign, degree
    }
    upper.emplace(key, flip ? p.scaled(-1.0) : std::move(p));
  }
  return PolyTwoForm(n, std::move(upper));
}

ordered_json two_form_to_json(const PolyTwoForm& w) {
  ordered_json out;
  out["dimension"] = w.dim();
  ordered_json omega = ordered_json::array();
  for (const auto& [key, poly] : w.upper()) {
    ordered_json entry;
    entry["i"] = key.first;
    entry["j"] = key.second;
    ordered_json monos = ordered_json::array();
    for (const auto& [e, c] : poly.terms()) {
      ordered_json mono;
      mono["exponents"] = e;
      mono["coeff"] = c;
      monos.push_back(std::move(mono));
    }
    entry["monomials"] = std::move(monos);
    omega.push_back(std::move(entry));
  }
  out["omega"] = std::move(omega);
  return out;
}

ordered_json verdict_to_json(const Verdict& v, std::uint64_t seed) {
  ordered_json out;
  out["metrizable"] = v.metrizable;
  out["obstruction_dim"] = v.obstruction_dim;
  out["solution_dim"] = v.solution_dim;
  out["representative"] =
      v.representative ? ordered_json(matrix_to_json(v.representative->matrix())) : ordered_json(nullptr);
  out["signature"] = v.sig ? ordered_json{v.sig->positive, v.sig->negative, v.sig->zero}
                           : ordered_json(nullptr);
  ordered_json residuals = ordered_json::object();
  for (const auto& [name, value] : v.residuals) residuals[name] = value;
  out["residuals"] = std::move(residuals);
  out["inconsistency"] = v.inconsistency ? ordered_json(*v.inconsistency) : ordered_json(nullptr);
  out["tool_version"] = kToolVersion;
  out["seed"] = seed;
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw InvalidInput("file '" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file '" + path + "'");
  out << content;
  if (!out) throw Error("failed while writing '" + path + "'");
}

}  // namespace metrize
