// JSON parsing and serialization: problem files for both connection kinds,
// metric and 2-form files, the verdict schema, and file-level error handling.

#include "doctest.h"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"

#include "metrize/generate.hpp"
#include "metrize/io.hpp"
#include "metrize/rng.hpp"

using namespace metrize;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// A minimal well-formed constant-connection document (diagonal commuting
// family) that individual tests then break one field at a time.
json euclidean_doc() {
  return json::parse(R"({
    "kind": "euclidean",
    "dimension": 2,
    "gamma": [[[1.0, 0.0], [0.0, 0.0]],
              [[0.0, 0.0], [0.0, 2.0]]]
  })");
}

// Heisenberg structure constants ([e0, e1] = e2) with a zero connection.
json group_doc() {
  return json::parse(R"({
    "kind": "lie_group",
    "dimension": 3,
    "structure_constants": [[[0, 0, 0], [0, 0, 0], [0, 0, 0]],
                            [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
                            [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]],
    "gamma": [[[0, 0, 0], [0, 0, 0], [0, 0, 0]],
              [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
              [[0, 0, 0], [0, 0, 0], [0, 0, 0]]]
  })");
}

std::vector<std::string> key_order(const ordered_json& j) {
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  return keys;
}

std::filesystem::path scratch_dir() {
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "metrize_io_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("problem parsing: constant connections with default and overridden policies") {
  Problem p = problem_from_json(euclidean_doc());
  REQUIRE(p.euclidean());
  const ConstantConnection& conn = p.constant();
  CHECK(conn.dim() == 2);
  CHECK(conn.components()[0](0, 0) == 1.0);
  CHECK(conn.components()[1](1, 1) == 2.0);
  CHECK(conn.components()[0](1, 1) == 0.0);
  // No tolerances block: library defaults plus seed 0.
  CHECK(p.tol.rank_tol == 1e-10);
  CHECK(p.tol.det_tol == 1e-8);
  CHECK(p.tol.verify_tol == 1e-8);
  CHECK(p.tol.fd_step == 1e-5);
  CHECK(p.tol.seed == 0);

  json doc = euclidean_doc();
  doc["tolerances"] = {{"rank_tol", 1e-9}, {"fd_step", 1e-4}};
  doc["seed"] = 7;
  Problem q = problem_from_json(doc);
  CHECK(q.tol.rank_tol == 1e-9);
  CHECK(q.tol.fd_step == 1e-4);
  CHECK(q.tol.det_tol == 1e-8);    // untouched entries keep their defaults
  CHECK(q.tol.verify_tol == 1e-8);
  CHECK(q.tol.seed == 7);

  // Annotation and unknown keys are tolerated on input.
  doc["_convention"] = "free-text note";
  doc["extra"] = 42;
  CHECK_NOTHROW(problem_from_json(doc));
}

TEST_CASE("problem parsing: group documents validate the bracket tensor") {
  Problem p = problem_from_json(group_doc());
  REQUIRE_FALSE(p.euclidean());
  const InvariantConnection& conn = p.invariant();
  CHECK(conn.dim() == 3);
  CHECK(conn.algebra().constants()[2](0, 1) == 1.0);
  CHECK(conn.algebra().constants()[2](1, 0) == -1.0);
  CHECK(conn.components()[0].norm() == 0.0);

  // Structure constants that are not antisymmetric in the lower indices.
  json bad = group_doc();
  bad["structure_constants"][2][1][0] = 0.0;
  CHECK_THROWS_AS(problem_from_json(bad), InvalidInput);

  // Antisymmetric but Jacobi-violating bracket: [e0,e1]=e0, [e1,e2]=e1,
  // [e2,e0]=e2.
  json nj = group_doc();
  nj["structure_constants"] = json::parse(R"([
    [[0, 1, 0], [-1, 0, 0], [0, 0, 0]],
    [[0, 0, 0], [0, 0, 1], [0, -1, 0]],
    [[0, 0, -1], [0, 0, 0], [1, 0, 0]]
  ])");
  CHECK_THROWS_AS(problem_from_json(nj), InvalidInput);
}

TEST_CASE("problem parsing: malformed documents fail with field-naming messages") {
  CHECK_THROWS_WITH_AS(problem_from_json(json::array()),
                       "problem file: top level must be a JSON object", InvalidInput);

  json doc = euclidean_doc();
  doc.erase("kind");
  CHECK_THROWS_WITH_AS(problem_from_json(doc),
                       "problem file: string field 'kind' is required", InvalidInput);
  doc["kind"] = 5;
  CHECK_THROWS_WITH_AS(problem_from_json(doc),
                       "problem file: string field 'kind' is required", InvalidInput);
  doc["kind"] = "riemannian";
  CHECK_THROWS_WITH_AS(problem_from_json(doc),
                       "problem file: 'kind' must be \"euclidean\" or \"lie_group\"",
                       InvalidInput);

  doc = euclidean_doc();
  doc.erase("dimension");
  CHECK_THROWS_WITH_AS(problem_from_json(doc),
                       "problem file: integer field 'dimension' is required", InvalidInput);
  doc["dimension"] = 2.5;
  CHECK_THROWS_WITH_AS(problem_from_json(doc),
                       "problem file: integer field 'dimension' is required", InvalidInput);
  doc["dimension"] = 0;
  CHECK_THROWS_WITH_AS(problem_from_json(doc),
                       "problem file: 'dimension' must be between 1 and 8", InvalidInput);
  doc["dimension"] = 9;
  CHECK_THROWS_WITH_AS(problem_from_json(doc),
                       "problem file: 'dimension' must be between 1 and 8", InvalidInput);

  doc = euclidean_doc();
  doc.erase("gamma");
  CHECK_THROWS_WITH_AS(problem_from_json(doc),
                       "problem file: 'gamma' must be an array of 2 square matrices",
                       InvalidInput);
  doc = euclidean_doc();
  doc["gamma"].erase(1);  // one component instead of two
  CHECK_THROWS_WITH_AS(problem_from_json(doc),
                       "problem file: 'gamma' must be an array of 2 square matrices",
                       InvalidInput);
  doc = euclidean_doc();
  doc["gamma"][1].erase(1);
  CHECK_THROWS_WITH_AS(problem_from_json(doc),
                       "problem file: 'gamma' component 1 has the wrong number of rows",
                       InvalidInput);
  doc = euclidean_doc();
  doc["gamma"][0][1].push_back(0.0);
  CHECK_THROWS_WITH_AS(problem_from_json(doc),
                       "problem file: 'gamma' component 0 row 1 has the wrong length",
                       InvalidInput);
  doc = euclidean_doc();
  doc["gamma"][0][0][1] = "x";
  CHECK_THROWS_WITH_AS(problem_from_json(doc),
                       "problem file: 'gamma' contains a non-numeric entry", InvalidInput);
  doc = euclidean_doc();
  doc["gamma"][0][0][1] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_WITH_AS(problem_from_json(doc),
                       "problem file: 'gamma' contains a non-finite entry", InvalidInput);

  doc = euclidean_doc();
  doc["tolerances"] = 5;
  CHECK_THROWS_WITH_AS(problem_from_json(doc),
                       "problem file: 'tolerances' must be an object", InvalidInput);
  doc["tolerances"] = {{"det_tol", "tiny"}};
  CHECK_THROWS_WITH_AS(problem_from_json(doc),
                       "problem file: tolerance 'det_tol' must be a number", InvalidInput);
  doc["tolerances"] = {{"rank_tol", -1.0}};
  CHECK_THROWS_WITH_AS(problem_from_json(doc),
                       "tolerances must be strictly positive", InvalidInput);
  doc = euclidean_doc();
  doc["seed"] = 1.5;
  CHECK_THROWS_WITH_AS(problem_from_json(doc),
                       "problem file: 'seed' must be an integer", InvalidInput);

  json g = group_doc();
  g.erase("structure_constants");
  CHECK_THROWS_WITH_AS(
      problem_from_json(g),
      "problem file: 'structure_constants' must be an array of 3 square matrices",
      InvalidInput);
}

TEST_CASE("problem serialization: fixed key order and byte-stable round-trips") {
  SplitRng rng(11);
  Tolerances tol;

  ConstantConnection conn = random_commuting_connection(3, rng);
  ordered_json out = problem_to_json(conn, tol);
  CHECK(key_order(out) ==
        std::vector<std::string>{"kind", "dimension", "_convention", "gamma", "seed"});
  CHECK(out["kind"] == "euclidean");
  CHECK(out["dimension"] == 3);
  CHECK(out["seed"] == 0);

  // dump -> parse -> parse-as-problem -> dump must reproduce every byte:
  // double round-trips through the serializer are exact.
  std::string text = out.dump(2);
  Problem back = problem_from_json(json::parse(text));
  REQUIRE(back.euclidean());
  for (int k = 0; k < 3; ++k)
    CHECK(back.constant().components()[k] == conn.components()[k]);
  CHECK(problem_to_json(back.constant(), back.tol).dump(2) == text);

  Tolerances seeded;
  seeded.seed = 99;
  KoszulInstance inst = koszul_instance("so3", 3, 0, rng, seeded);
  ordered_json gout = problem_to_json(inst.conn, seeded);
  CHECK(key_order(gout) == std::vector<std::string>{"kind", "dimension", "_convention",
                                                    "structure_constants", "gamma", "seed"});
  std::string gtext = gout.dump(2);
  Problem gback = problem_from_json(json::parse(gtext));
  REQUIRE_FALSE(gback.euclidean());
  CHECK(gback.tol.seed == 99);
  for (int k = 0; k < 3; ++k) {
    CHECK(gback.invariant().components()[k] == inst.conn.components()[k]);
    CHECK(gback.invariant().algebra().constants()[k] == inst.conn.algebra().constants()[k]);
  }
  CHECK(problem_to_json(gback.invariant(), gback.tol).dump(2) == gtext);
}

TEST_CASE("metric files: shape checks, relative symmetry gate, round-trip") {
  SymBilinearForm g = metric_from_json(json::parse(R"({"metric": [[2.0, 0.5], [0.5, -1.0]]})"));
  CHECK(g.dim() == 2);
  CHECK(g.matrix()(0, 0) == 2.0);
  CHECK(g.matrix()(0, 1) == 0.5);
  CHECK(g.matrix()(1, 1) == -1.0);

  CHECK_THROWS_WITH_AS(metric_from_json(json::array()),
                       "metric file: object with a 'metric' matrix is required", InvalidInput);
  CHECK_THROWS_WITH_AS(metric_from_json(json::parse(R"({"metric": 3})")),
                       "metric file: object with a 'metric' matrix is required", InvalidInput);
  CHECK_THROWS_WITH_AS(metric_from_json(json::parse(R"({"metric": []})")),
                       "metric file: matrix size out of range", InvalidInput);
  json big;
  big["metric"] = json::array();
  for (int i = 0; i < 9; ++i) big["metric"].push_back(std::vector<double>(9, 0.0));
  CHECK_THROWS_WITH_AS(metric_from_json(big), "metric file: matrix size out of range",
                       InvalidInput);
  CHECK_THROWS_WITH_AS(metric_from_json(json::parse(R"({"metric": [[1.0, 0.0], [0.0]]})")),
                       "metric file: 'metric' must be a square matrix", InvalidInput);
  CHECK_THROWS_WITH_AS(metric_from_json(json::parse(R"({"metric": [["a", 0.0], [0.0, 1.0]]})")),
                       "metric file: non-numeric entry", InvalidInput);
  json nan_doc = json::parse(R"({"metric": [[1.0, 0.0], [0.0, 1.0]]})");
  nan_doc["metric"][0][0] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_WITH_AS(metric_from_json(nan_doc), "metric file: non-finite entry", InvalidInput);

  // The symmetry gate is relative to the largest entry: 1e-12 * scale.
  CHECK_THROWS_WITH_AS(metric_from_json(json::parse(R"({"metric": [[1.0, 1e-9], [0.0, 1.0]]})")),
                       "metric file: 'metric' must be symmetric", InvalidInput);
  SymBilinearForm tiny =
      metric_from_json(json::parse(R"({"metric": [[1.0, 5e-13], [0.0, 1.0]]})"));
  CHECK(tiny.matrix()(0, 1) == 2.5e-13);  // averaged with the transpose, exactly
  CHECK(tiny.matrix()(1, 0) == 2.5e-13);
  CHECK_NOTHROW(metric_from_json(json::parse(R"({"metric": [[1e6, 5e-7], [0.0, 1e6]]})")));
  CHECK_THROWS_AS(metric_from_json(json::parse(R"({"metric": [[1e6, 2e-5], [0.0, 1e6]]})")),
                  InvalidInput);

  ordered_json mout = metric_to_json(g);
  CHECK(key_order(mout) == std::vector<std::string>{"metric"});
  SymBilinearForm back = metric_from_json(json::parse(mout.dump()));
  CHECK(back.matrix() == g.matrix());
}

TEST_CASE("two-form files: index folding, duplicate rejection, round-trip") {
  json doc = json::parse(R"({
    "dimension": 4,
    "omega": [
      {"i": 0, "j": 1, "monomials": [{"exponents": [0, 0, 0, 0], "coeff": 1.0}]},
      {"i": 2, "j": 3, "monomials": [{"exponents": [0, 0, 0, 0], "coeff": 1.0}]}
    ]
  })");
  PolyTwoForm w = two_form_from_json(doc);
  CHECK(two_form_to_json(w).dump() ==
        two_form_to_json(PolyTwoForm::standard_symplectic(4)).dump());

  // Entries given with i > j are folded into the upper triangle with a sign.
  PolyTwoForm folded = two_form_from_json(json::parse(R"({
    "dimension": 2,
    "omega": [{"i": 1, "j": 0, "monomials": [{"exponents": [0, 0], "coeff": 2.0}]}]
  })"));
  REQUIRE(folded.upper().count({0, 1}) == 1);
  VectorXd origin = VectorXd::Zero(2);
  CHECK(folded.component(0, 1).evaluate(origin) == -2.0);
  CHECK(folded.component(1, 0).evaluate(origin) == 2.0);

  auto with_omega = [](const char* omega) {
    json d;
    d["dimension"] = 4;
    d["omega"] = json::parse(omega);
    return d;
  };
  CHECK_THROWS_WITH_AS(
      two_form_from_json(with_omega(
          R"([{"i": 0, "j": 1, "monomials": []}, {"i": 1, "j": 0, "monomials": []}])")),
      "two-form file: duplicate omega entry for a component pair", InvalidInput);
  CHECK_THROWS_WITH_AS(
      two_form_from_json(with_omega(R"([{"i": 1, "j": 1, "monomials": []}])")),
      "two-form file: omega indices must be distinct and within dimension", InvalidInput);
  CHECK_THROWS_WITH_AS(
      two_form_from_json(with_omega(R"([{"i": 0, "j": 4, "monomials": []}])")),
      "two-form file: omega indices must be distinct and within dimension", InvalidInput);
  CHECK_THROWS_WITH_AS(
      two_form_from_json(with_omega(R"([{"i": -1, "j": 1, "monomials": []}])")),
      "two-form file: omega indices must be distinct and within dimension", InvalidInput);
  CHECK_THROWS_WITH_AS(
      two_form_from_json(with_omega(R"([{"i": 0, "monomials": []}])")),
      "two-form file: every omega entry needs integer fields 'i' and 'j'", InvalidInput);
  CHECK_THROWS_WITH_AS(two_form_from_json(with_omega(R"([{"i": 0, "j": 1}])")),
                       "two-form file: omega entries need a 'monomials' array", InvalidInput);
  CHECK_THROWS_WITH_AS(
      two_form_from_json(with_omega(R"([{"i": 0, "j": 1, "monomials": [{"coeff": 1.0}]}])")),
      "two-form file: monomials need 'exponents' and numeric 'coeff'", InvalidInput);
  CHECK_THROWS_WITH_AS(
      two_form_from_json(with_omega(
          R"([{"i": 0, "j": 1, "monomials": [{"exponents": [0, 0.5, 0, 0], "coeff": 1.0}]}])")),
      "two-form file: exponents must be integers", InvalidInput);
  // Polynomial-level validation still applies: negative powers, wrong arity.
  CHECK_THROWS_AS(
      two_form_from_json(with_omega(
          R"([{"i": 0, "j": 1, "monomials": [{"exponents": [-1, 0, 0, 0], "coeff": 1.0}]}])")),
      InvalidInput);
  CHECK_THROWS_AS(
      two_form_from_json(with_omega(
          R"([{"i": 0, "j": 1, "monomials": [{"exponents": [0, 0], "coeff": 1.0}]}])")),
      InvalidInput);

  CHECK_THROWS_WITH_AS(two_form_from_json(json::array()),
                       "two-form file: top level must be a JSON object", InvalidInput);
  CHECK_THROWS_WITH_AS(two_form_from_json(json::parse(R"({"omega": []})")),
                       "problem file: integer field 'dimension' is required", InvalidInput);
  CHECK_THROWS_WITH_AS(two_form_from_json(json::parse(R"({"dimension": 4})")),
                       "two-form file: array field 'omega' is required", InvalidInput);

  // x0 dx2 ^ dx3 survives a full write/read/write cycle byte for byte.
  std::map<std::pair<int, int>, Polynomial> upper;
  upper.emplace(std::make_pair(2, 3), Polynomial::monomial(4, {1, 0, 0, 0}, 1.0));
  PolyTwoForm nonclosed(4, std::move(upper));
  ordered_json wout = two_form_to_json(nonclosed);
  CHECK(key_order(wout) == std::vector<std::string>{"dimension", "omega"});
  PolyTwoForm wback = two_form_from_json(json::parse(wout.dump()));
  CHECK(two_form_to_json(wback).dump() == wout.dump());
  CHECK(wback.component(2, 3).evaluate(Eigen::Vector4d(0.5, 0, 0, 0)) == 0.5);
}

TEST_CASE("verdict serialization: frozen key order, nulls for absent fields") {
  Verdict empty;
  ordered_json out = verdict_to_json(empty, 0);
  CHECK(out.dump() ==
        R"({"metrizable":false,"obstruction_dim":0,"solution_dim":0,"representative":null,)"
        R"("signature":null,"residuals":{},"inconsistency":null,)"
        R"("tool_version":"0.1.0","seed":0})");

  Verdict v;
  v.metrizable = true;
  v.obstruction_dim = 0;
  v.solution_dim = 3;
  v.representative = SymBilinearForm::identity(2);
  v.sig = Signature{1, 1, 0};
  v.residuals["compatibility"] = 1e-10;
  v.residuals["holonomy"] = 0.0;
  ordered_json full = verdict_to_json(v, 42);
  CHECK(key_order(full) ==
        std::vector<std::string>{"metrizable", "obstruction_dim", "solution_dim",
                                 "representative", "signature", "residuals", "inconsistency",
                                 "tool_version", "seed"});
  CHECK(full["metrizable"] == true);
  CHECK(full["solution_dim"] == 3);
  CHECK(full["representative"] == json::parse("[[1.0, 0.0], [0.0, 1.0]]"));
  CHECK(full["signature"] == json::parse("[1, 1, 0]"));
  CHECK(full["residuals"]["compatibility"] == 1e-10);
  CHECK(full["residuals"]["holonomy"] == 0.0);
  CHECK(full["inconsistency"].is_null());
  CHECK(full["tool_version"] == "0.1.0");
  CHECK(full["seed"] == 42);

  Verdict flagged;
  flagged.inconsistency = "solver and sampler disagree";
  CHECK(verdict_to_json(flagged, 1)["inconsistency"] == "solver and sampler disagree");

  // Serialization is deterministic.
  CHECK(verdict_to_json(v, 42).dump() == full.dump());
}

TEST_CASE("file IO: load failures name the path, text files round-trip") {
  std::filesystem::path dir = scratch_dir();

  CHECK_THROWS_WITH_AS(load_json_file((dir / "does_not_exist.json").string()),
                       doctest::Contains("cannot open file"), InvalidInput);

  std::filesystem::path garbage = dir / "garbage.json";
  write_text_file(garbage.string(), "{ not json");
  CHECK_THROWS_WITH_AS(load_json_file(garbage.string()),
                       doctest::Contains("is not valid JSON"), InvalidInput);

  std::filesystem::path roundtrip = dir / "roundtrip.json";
  write_text_file(roundtrip.string(), R"({"metric": [[1.0, 0.0], [0.0, 1.0]]})");
  json loaded = load_json_file(roundtrip.string());
  CHECK(metric_from_json(loaded).matrix() == MatrixXd::Identity(2, 2));

  CHECK_THROWS_AS(write_text_file((dir / "no_such_subdir" / "x.txt").string(), "content"),
                  Error);

  std::filesystem::remove_all(dir);
}
