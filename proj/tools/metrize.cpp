// metrize: decide whether a connection is the Levi-Civita connection of some
// (semi-Riemannian) metric, construct and verify such a metric, and handle
// the associated two-form and dimension-2 special cases.
//
// Exit codes: 0 = metrizable / pass, 1 = not metrizable / fail,
// 2 = invalid input, 3 = internal cross-check failure.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "metrize/dim2.hpp"
#include "metrize/generate.hpp"
#include "metrize/io.hpp"
#include "metrize/lie_group.hpp"
#include "metrize/solver.hpp"
#include "metrize/two_form.hpp"
#include "metrize/verify.hpp"

namespace {

using metrize::Tolerances;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInconsistent = 3;

struct CommonOpts {
  std::optional<double> rank_tol, det_tol, verify_tol, fd_step;
  std::optional<std::uint64_t> seed;
  bool json = false;
  bool quiet = false;
  std::string output;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tol-rank", rank_tol, "relative rank cutoff for subspace dimensions");
    cmd->add_option("--tol-det", det_tol, "normalized |det| threshold for nondegeneracy");
    cmd->add_option("--tol-verify", verify_tol, "acceptance bound for verification residuals");
    cmd->add_option("--fd-step", fd_step, "base step for finite-difference checks");
    cmd->add_option("--seed", seed, "seed for every random draw");
    cmd->add_flag("--json", json, "print machine-readable JSON instead of text");
    cmd->add_flag("--quiet", quiet, "suppress stdout (exit code and -o output only)");
    cmd->add_option("-o,--output", output, "write the JSON result to this file");
  }

  Tolerances merge(Tolerances tol) const {
    if (rank_tol) tol.rank_tol = *rank_tol;
    if (det_tol) tol.det_tol = *det_tol;
    if (verify_tol) tol.verify_tol = *verify_tol;
    if (fd_step) tol.fd_step = *fd_step;
    if (seed) tol.seed = *seed;
    tol.validate();
    return tol;
  }
};

void emit(const CommonOpts& opts, const nlohmann::ordered_json& doc,
          const std::string& human) {
  if (!opts.output.empty()) metrize::write_text_file(opts.output, doc.dump(2) + "\n");
  if (opts.quiet) return;
  if (opts.json)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << human;
}

std::string verdict_text(const metrize::Verdict& v) {
  std::string text;
  text += std::string("metrizable: ") + (v.metrizable ? "yes" : "no") + "\n";
  text += "obstruction dimension: " + std::to_string(v.obstruction_dim) + "\n";
  text += "compatible metrics at the base point: dimension " + std::to_string(v.solution_dim) +
          "\n";
  if (v.sig)
    text += "representative signature: (" + std::to_string(v.sig->positive) + ", " +
            std::to_string(v.sig->negative) + ", " + std::to_string(v.sig->zero) + ")\n";
  for (const auto& [name, value] : v.residuals)
    text += "residual " + name + ": " + std::to_string(value) + "\n";
  if (v.inconsistency) text += "INTERNAL CROSS-CHECK FAILURE: " + *v.inconsistency + "\n";
  return text;
}

int verdict_exit(const metrize::Verdict& v) {
  if (v.inconsistency) return kExitInconsistent;
  return v.metrizable ? kExitYes : kExitNo;
}

int run_analyze(const std::string& path, const CommonOpts& opts) {
  metrize::Problem problem = metrize::problem_from_json(metrize::load_json_file(path));
  Tolerances tol = opts.merge(problem.tol);
  metrize::Verdict verdict = problem.euclidean()
                                 ? metrize::analyze(problem.constant(), tol)
                                 : metrize::analyze_lg(problem.invariant(), tol);
  emit(opts, metrize::verdict_to_json(verdict, tol.seed), verdict_text(verdict));
  return verdict_exit(verdict);
}

int run_verify(const std::string& path, const std::string& metric_path, const CommonOpts& opts) {
  metrize::Problem problem = metrize::problem_from_json(metrize::load_json_file(path));
  Tolerances tol = opts.merge(problem.tol);
  metrize::SymBilinearForm g0 = metrize::metric_from_json(metrize::load_json_file(metric_path));
  if (!g0.nondegenerate(tol)) throw metrize::InvalidInput("metric file: degenerate metric");

  nlohmann::ordered_json doc;
  bool pass = false;
  std::string text;
  if (problem.euclidean()) {
    const metrize::ConstantConnection& conn = problem.constant();
    auto [extendable, residual] = metrize::extendable_with(conn, g0, tol);
    doc["extendable"] = extendable;
    doc["residuals"]["antisymmetry"] = residual;
    pass = extendable;
    if (extendable) {
      metrize::MetricField field(conn, g0, tol);
      metrize::VerifyReport report = metrize::verify_metric(field, tol);
      doc["residuals"]["compatibility"] = report.compatibility;
      doc["residuals"]["christoffel_recovery"] = report.christoffel_recovery;
      doc["residuals"]["holonomy"] = report.holonomy;
      doc["samples_used"] = report.samples_used;
      pass = report.pass(tol);
    }
  } else {
    const metrize::InvariantConnection& conn = problem.invariant();
    auto [extendable, residual] = metrize::extendable_with_lg(conn, g0, tol);
    doc["extendable"] = extendable;
    doc["residuals"]["antisymmetry"] = residual;
    pass = extendable;
    if (extendable) {
      double sampled = metrize::sample_condition_group(conn, g0, 100, tol);
      doc["residuals"]["sample_condition"] = sampled;
      pass = sampled < tol.verify_tol;
    }
  }
  doc["pass"] = pass;
  text = std::string(pass ? "pass" : "FAIL") + ": the metric " +
         (doc["extendable"].get<bool>() ? "matches the connection"
                                        : "is not compatible with the connection") +
         "\n";
  emit(opts, doc, text);
  return pass ? kExitYes : kExitNo;
}

int run_classify2(const std::string& path, const CommonOpts& opts) {
  metrize::Problem problem = metrize::problem_from_json(metrize::load_json_file(path));
  if (!problem.euclidean())
    throw metrize::InvalidInput("classify2 expects a problem of kind \"euclidean\"");
  const metrize::ConstantConnection& conn = problem.constant();
  if (conn.dim() != 2) throw metrize::InvalidInput("classify2 expects dimension 2");
  Tolerances tol = opts.merge(problem.tol);

  metrize::Dim2Classification cls = metrize::classify_dim2(conn, tol);
  metrize::Verdict verdict = metrize::analyze(conn, tol);

  nlohmann::ordered_json doc;
  doc["commuting"] = cls.commuting;
  doc["witness"] = {{cls.witness(0, 0), cls.witness(0, 1)},
                    {cls.witness(1, 0), cls.witness(1, 1)}};
  doc["analyze_metrizable"] = verdict.metrizable;
  bool agree = cls.commuting == verdict.metrizable;
  doc["agreement"] = agree;

  std::string text = std::string("commuting generators: ") + (cls.commuting ? "yes" : "no") +
                     "\nanalysis verdict: " + (verdict.metrizable ? "metrizable" : "not metrizable") +
                     "\n";
  if (!agree) text += "INTERNAL CROSS-CHECK FAILURE: classification disagrees with analysis\n";
  emit(opts, doc, text);
  if (!agree) return kExitInconsistent;
  return cls.commuting ? kExitYes : kExitNo;
}

int run_generate(const std::string& kind, int n, const CommonOpts& opts) {
  if (opts.output.empty())
    throw metrize::InvalidInput("generate requires -o/--output for the problem file");
  Tolerances tol;
  if (opts.seed) tol.seed = *opts.seed;
  metrize::SplitRng rng = metrize::SplitRng(tol.seed).split(metrize::stream_tag("generate"));

  nlohmann::ordered_json problem;
  std::optional<nlohmann::ordered_json> sidecar;
  if (kind == "zero") {
    problem = metrize::problem_to_json(metrize::ConstantConnection::zero(n), tol);
  } else if (kind == "commuting") {
    problem = metrize::problem_to_json(metrize::random_commuting_connection(n, rng), tol);
  } else if (kind == "random") {
    problem = metrize::problem_to_json(metrize::random_connection(n, rng), tol);
  } else if (kind == "noncommuting2") {
    problem = metrize::problem_to_json(metrize::noncommuting2_example(), tol);
  } else if (kind.rfind("koszul:", 0) == 0) {
    std::string rest = kind.substr(7);
    auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw metrize::InvalidInput("generate: koszul kind is koszul:<algebra>:<p>,<q>");
    std::string algebra = rest.substr(0, colon);
    std::string sig = rest.substr(colon + 1);
    if (!sig.empty() && sig.front() == '(') sig.erase(0, 1);
    if (!sig.empty() && sig.back() == ')') sig.pop_back();
    auto comma = sig.find(',');
    if (comma == std::string::npos)
      throw metrize::InvalidInput("generate: koszul signature must be <p>,<q>");
    int p = 0, q = 0;
    try {
      p = std::stoi(sig.substr(0, comma));
      q = std::stoi(sig.substr(comma + 1));
    } catch (const std::exception&) {
      throw metrize::InvalidInput("generate: koszul signature must be two integers");
    }
    metrize::KoszulInstance inst = metrize::koszul_instance(algebra, p, q, rng, tol);
    problem = metrize::problem_to_json(inst.conn, tol);
    sidecar = metrize::metric_to_json(inst.h);
  } else {
    throw metrize::InvalidInput("generate: unknown kind '" + kind + "'");
  }

  metrize::write_text_file(opts.output, problem.dump(2) + "\n");
  std::string note = "wrote " + opts.output + "\n";
  if (sidecar) {
    std::string side_path = opts.output + ".metric.json";
    metrize::write_text_file(side_path, sidecar->dump(2) + "\n");
    note += "wrote " + side_path + " (the metric the connection was built from)\n";
  }
  if (!opts.quiet && !opts.json) std::cout << note;
  return kExitYes;
}

int run_twoform(const std::string& path, const std::string& conn_path, bool require_nondegenerate,
                const CommonOpts& opts) {
  metrize::PolyTwoForm w = metrize::two_form_from_json(metrize::load_json_file(path));
  Tolerances tol = opts.merge(Tolerances{});

  if (require_nondegenerate) {
    if (w.dim() % 2 != 0)
      throw metrize::InvalidInput("two-form: nondegeneracy requires an even dimension");
    metrize::SplitRng rng = metrize::SplitRng(tol.seed).split(metrize::stream_tag("twoform"));
    std::vector<metrize::VectorXd> pts{metrize::VectorXd::Zero(w.dim())};
    for (int i = 0; i < 8; ++i) pts.push_back(metrize::random_ball_point(w.dim(), rng));
    for (const metrize::VectorXd& x : pts)
      if (!metrize::nondegenerate_at(w, x, tol))
        throw metrize::InvalidInput("two-form: degenerate at a sample point");
  }

  double dmax = metrize::exterior_derivative_max_coeff(w);
  bool closed = dmax == 0.0;

  nlohmann::ordered_json doc;
  doc["closed"] = closed;
  doc["d_max_coeff"] = dmax;
  std::string text = std::string("closed: ") + (closed ? "yes" : "no") +
                     " (largest derivative coefficient " + std::to_string(dmax) + ")\n";

  if (!conn_path.empty()) {
    metrize::Problem problem = metrize::problem_from_json(metrize::load_json_file(conn_path));
    if (!problem.euclidean())
      throw metrize::InvalidInput("two-form: --connection expects a euclidean problem");
    metrize::SplitRng rng = metrize::SplitRng(tol.seed).split(metrize::stream_tag("twoform_pts"));
    std::vector<metrize::VectorXd> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(metrize::random_ball_point(w.dim(), rng));
    double residual = metrize::alt_nabla_identity_residual(w, problem.constant(), pts);
    doc["alt_nabla_residual"] = residual;
    text += "alternated covariant derivative identity residual: " + std::to_string(residual) +
            "\n";
  }

  emit(opts, doc, text);
  return closed ? kExitYes : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decide whether a connection comes from a metric, and verify it"};
  app.require_subcommand(1);

  CommonOpts analyze_opts, verify_opts, classify_opts, generate_opts, twoform_opts;
  std::string analyze_in, verify_in, verify_metric, classify_in, twoform_in, twoform_conn;
  std::string generate_kind = "zero";
  int generate_n = 2;
  bool twoform_nondeg = false;

  CLI::App* analyze = app.add_subcommand("analyze", "decide metrizability of a problem file");
  analyze->add_option("input", analyze_in, "problem JSON file")->required();
  analyze_opts.attach(analyze);

  CLI::App* verify = app.add_subcommand("verify", "check a proposed metric against a connection");
  verify->add_option("input", verify_in, "problem JSON file")->required();
  verify->add_option("-m,--metric", verify_metric, "metric JSON file")->required();
  verify_opts.attach(verify);

  CLI::App* classify2 = app.add_subcommand("classify2", "two-dimensional commutativity test");
  classify2->add_option("input", classify_in, "problem JSON file (euclidean, dimension 2)")
      ->required();
  classify_opts.attach(classify2);

  CLI::App* generate = app.add_subcommand("generate", "emit a sample problem file");
  generate->add_option("--kind", generate_kind,
                       "zero | commuting | random | noncommuting2 | koszul:<algebra>:<p>,<q>");
  generate->add_option("--n", generate_n, "dimension for zero/commuting/random kinds");
  generate_opts.attach(generate);

  CLI::App* twoform = app.add_subcommand("twoform", "closedness of a polynomial 2-form");
  twoform->add_option("input", twoform_in, "two-form JSON file")->required();
  twoform->add_option("--connection", twoform_conn,
                      "euclidean problem file for the covariant-derivative identity");
  twoform->add_flag("--require-nondegenerate", twoform_nondeg,
                    "reject forms that are degenerate at sample points");
  twoform_opts.attach(twoform);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (app.got_subcommand(analyze)) return run_analyze(analyze_in, analyze_opts);
    if (app.got_subcommand(verify)) return run_verify(verify_in, verify_metric, verify_opts);
    if (app.got_subcommand(classify2)) return run_classify2(classify_in, classify_opts);
    if (app.got_subcommand(generate)) return run_generate(generate_kind, generate_n, generate_opts);
    if (app.got_subcommand(twoform))
      return run_twoform(twoform_in, twoform_conn, twoform_nondeg, twoform_opts);
  } catch (const metrize::TorsionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const metrize::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const metrize::NotSupported& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const metrize::CapacityExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const metrize::SingularMetric& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNo;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
