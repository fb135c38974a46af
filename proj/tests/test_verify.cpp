// Transport along segments, paths and loops; the full metric-field
// verification battery; and the Monte-Carlo soundness checks.

#include "doctest.h"

#include <cmath>
#include <vector>

#include "metrize/generate.hpp"
#include "metrize/rng.hpp"
#include "metrize/solver.hpp"
#include "metrize/verify.hpp"

using namespace metrize;

TEST_CASE("segment transport: frozen value, identity, and inversion") {
  ConstantConnection conn = commuting2_example();  // gamma(e_1) = I
  VectorXd a = VectorXd::Zero(2), b = VectorXd::Unit(2, 0);
  MatrixXd p = segment_transport(conn, a, b);
  CHECK((p - std::exp(-1.0) * MatrixXd::Identity(2, 2)).norm() < 1e-14);
  CHECK((segment_transport(conn, a, a) - MatrixXd::Identity(2, 2)).norm() == 0.0);
  // Reversing the segment inverts the transport.
  CHECK((segment_transport(conn, b, a) * p - MatrixXd::Identity(2, 2)).norm() < 1e-14);

  SplitRng rng(3);
  ConstantConnection rc = random_connection(3, rng);
  VectorXd u = random_ball_point(3, rng), v = random_ball_point(3, rng);
  CHECK((segment_transport(rc, v, u) * segment_transport(rc, u, v) -
         MatrixXd::Identity(3, 3)).norm() < 1e-13);
}

TEST_CASE("path transport composes segments in order") {
  SplitRng rng(5);
  ConstantConnection conn = random_connection(2, rng);
  VectorXd o = VectorXd::Zero(2), a = VectorXd::Unit(2, 0), b = VectorXd::Unit(2, 1);
  MatrixXd direct = segment_transport(conn, a, b) * segment_transport(conn, o, a);
  CHECK((path_transport(conn, {o, a, b}) - direct).norm() == 0.0);
  CHECK((path_transport(conn, {o}) - MatrixXd::Identity(2, 2)).norm() == 0.0);
  CHECK_THROWS_AS(path_transport(conn, {}), InvalidInput);
  CHECK_THROWS_AS(path_transport(conn, {VectorXd::Zero(3)}), InvalidInput);
}

TEST_CASE("loop holonomy closes the polygon and is trivial for commuting generators") {
  VectorXd o = VectorXd::Zero(2), a = VectorXd::Unit(2, 0), b = VectorXd::Unit(2, 1);

  // Commuting generators: the exponents add up and the loop cancels exactly.
  ConstantConnection comm = commuting2_example();
  CHECK((loop_holonomy(comm, {o, a, b, o}) - MatrixXd::Identity(2, 2)).norm() < 1e-13);

  // Noncommuting generators: the same triangle has visible holonomy.
  ConstantConnection nc = noncommuting2_example();
  CHECK((loop_holonomy(nc, {o, a, b, o}) - MatrixXd::Identity(2, 2)).norm() > 1e-2);

  CHECK_THROWS_AS(loop_holonomy(nc, {o, a, b}), InvalidInput);  // not closed
  CHECK_THROWS_AS(loop_holonomy(nc, {}), InvalidInput);
}

TEST_CASE("path transport is path independent for commuting generators") {
  SplitRng rng(7);
  ConstantConnection conn = random_commuting_connection(3, rng);
  for (int t = 0; t < 10; ++t) {
    VectorXd target = random_ball_point(3, rng);
    std::vector<VectorXd> p1 = random_path(3, target, rng);
    std::vector<VectorXd> p2 = random_path(3, target, rng);
    CHECK((path_transport(conn, p1) - path_transport(conn, p2)).norm() < 1e-12);
  }
}

TEST_CASE("spread metric is invariant under transport along its own ray") {
  // G((t+s)v) pulled back by the extra segment equals G(tv) for *any*
  // connection, metrizable or not: along a fixed ray the one-parameter
  // transports commute.
  SplitRng rng(9);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 2 + trial % 3;
    ConstantConnection conn =
        (trial % 2 == 0) ? random_connection(n, rng) : random_commuting_connection(n, rng);
    Tolerances tol;
    MetricField f(conn, SymBilinearForm::identity(n), tol);
    VectorXd v = random_ball_point(n, rng);
    double t = 0.6, s = 0.7;
    MatrixXd p = mat_exp(-s * conn.gamma(v));
    MatrixXd pulled = p.transpose() * f.at((t + s) * v).matrix() * p;
    CHECK((pulled - f.at(t * v).matrix()).norm() < 1e-10);
  }
}

TEST_CASE("verification battery: exact zeros for the flat field") {
  Tolerances tol;
  MetricField f(ConstantConnection::zero(3), SymBilinearForm::identity(3), tol);
  VerifyReport r = verify_metric(f, tol);
  CHECK(r.compatibility == 0.0);
  CHECK(r.christoffel_recovery == 0.0);
  CHECK(r.holonomy == 0.0);
  CHECK(r.samples_used == 247);  // 5^3 grid + 32 + 20 + 50 + 20
  CHECK(r.pass(tol));
}

TEST_CASE("verification battery: commuting example with the flat origin form") {
  Tolerances tol;
  MetricField f(commuting2_example(), SymBilinearForm::identity(2), tol);
  VerifyReport r = verify_metric(f, tol);
  CHECK(r.samples_used == 147);  // 5^2 grid + 32 + 20 + 50 + 20
  CHECK(r.compatibility < 1e-8);
  CHECK(r.christoffel_recovery < 1e-6);
  CHECK(r.holonomy < 1e-8);
  CHECK(r.pass(tol));
}

TEST_CASE("verification battery: random commuting connections with their representatives") {
  Tolerances tol;
  SplitRng rng(11);
  for (int t = 0; t < 4; ++t) {
    int n = 2 + t % 3;
    ConstantConnection conn = random_commuting_connection(n, rng);
    Verdict v = analyze(conn, tol);
    REQUIRE(v.metrizable);
    MetricField f(conn, *v.representative, tol);
    VerifyReport r = verify_metric(f, tol);
    CHECK(r.pass(tol));
    CHECK(r.holonomy < 1e-10);
  }
}

TEST_CASE("sampled conjugated-curvature condition on R^n") {
  Tolerances tol;
  // Commuting generators: every curvature sample is pruned as zero.
  CHECK(sample_condition_rn(commuting2_example(), SymBilinearForm::identity(2), 100, tol) == 0.0);

  // The noncommuting example fails visibly against any candidate form.
  double bad = sample_condition_rn(noncommuting2_example(), SymBilinearForm::identity(2), 50, tol);
  CHECK(bad > 1e-2);

  MatrixXd d(2, 2);
  d << 1.0, 0.0, 0.0, -1.0;
  CHECK(sample_condition_rn(noncommuting2_example(), SymBilinearForm(d), 50, tol) > 1e-2);

  CHECK_THROWS_AS(
      sample_condition_rn(commuting2_example(), SymBilinearForm::identity(3), 10, tol),
      InvalidInput);
  CHECK_THROWS_AS(
      sample_condition_rn(commuting2_example(), SymBilinearForm(MatrixXd::Zero(2, 2)), 10, tol),
      InvalidInput);
}

TEST_CASE("sampled condition on the group side") {
  Tolerances tol;
  SplitRng rng(13);

  // A Levi-Civita connection passes against its own metric.
  KoszulInstance inst = koszul_instance("so3", 3, 0, rng, tol);
  CHECK(sample_condition_group(inst.conn, inst.h, 50, tol) < 1e-9);

  // The torsion-free nonmetrizable connection on the 2d nonabelian algebra
  // fails against every form.
  std::vector<MatrixXd> c(2, MatrixXd::Zero(2, 2));
  c[1](0, 1) = 1.0;
  c[1](1, 0) = -1.0;
  std::vector<MatrixXd> g(2, MatrixXd::Zero(2, 2));
  g[1](0, 1) = 0.5;
  g[1](1, 0) = -0.5;
  InvariantConnection nm(LieAlgebraStructure(c), g);
  CHECK(sample_condition_group(nm, SymBilinearForm::identity(2), 50, tol) > 1e-2);

  // Torsion is rejected, trivial algebras trivially pass.
  InvariantConnection torsioned(LieAlgebraStructure(c),
                                std::vector<MatrixXd>(2, MatrixXd::Zero(2, 2)));
  CHECK_THROWS_AS(sample_condition_group(torsioned, SymBilinearForm::identity(2), 10, tol),
                  TorsionError);
  InvariantConnection line(LieAlgebraStructure::abelian(1),
                           std::vector<MatrixXd>(1, MatrixXd::Zero(1, 1)));
  CHECK(sample_condition_group(line, SymBilinearForm::identity(1), 10, tol) == 0.0);
}

TEST_CASE("sampled word soundness against the computed span") {
  Tolerances tol;
  ConstantConnection conn = noncommuting2_example();
  MatrixSubspace s = generators(conn, tol);
  MatrixSubspace seeds = commutator_span(s, s, tol);
  MatrixSubspace v = obstruction_space(conn, tol);
  CHECK(word_soundness_residual(s, seeds, v, 100, tol) < 1e-7);

  // Group side: same soundness check for a catalog Levi-Civita connection.
  SplitRng rng(17);
  KoszulInstance inst = koszul_instance("sl2", 2, 1, rng, tol);
  std::vector<MatrixXd> gammas;
  for (int i = 0; i < 3; ++i) gammas.push_back(inst.conn.gamma_basis(i));
  MatrixSubspace sg = span(gammas, tol);
  std::vector<MatrixXd> curv;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) curv.push_back(curvature_lg(inst.conn, i, j));
  MatrixSubspace seedsg = span(curv, tol);
  MatrixSubspace vg = obstruction_space_lg(inst.conn, tol);
  CHECK(word_soundness_residual(sg, seedsg, vg, 100, tol) < 1e-7);

  // Empty inputs short-circuit to zero.
  CHECK(word_soundness_residual(MatrixSubspace{2, {}}, seeds, v, 10, tol) == 0.0);
  CHECK(word_soundness_residual(s, MatrixSubspace{2, {}}, v, 10, tol) == 0.0);
}
