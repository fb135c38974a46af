// Dimension-two specials: the commutator criterion, the so(g) form built
// from a single traceless map, and the bracket-closure profile.

#include "doctest.h"

#include <cmath>

#include "metrize/dim2.hpp"
#include "metrize/generate.hpp"
#include "metrize/lie_closure.hpp"
#include "metrize/rng.hpp"
#include "metrize/solver.hpp"

using namespace metrize;

namespace {

MatrixXd random_traceless_invertible(SplitRng& rng) {
  while (true) {
    MatrixXd a(2, 2);
    a(0, 0) = rng.gaussian();
    a(0, 1) = rng.gaussian();
    a(1, 0) = rng.gaussian();
    a(1, 1) = -a(0, 0);
    double scale = a.norm();
    if (scale > 1e-3 && std::abs(a.determinant()) >= 1e-3 * scale * scale) return a;
  }
}

}  // namespace

TEST_CASE("classification by the commutator of the two generators") {
  Tolerances tol;
  Dim2Classification yes = classify_dim2(commuting2_example(), tol);
  CHECK(yes.commuting);
  CHECK(yes.witness.norm() == 0.0);  // [I, E21] vanishes exactly

  Dim2Classification no = classify_dim2(noncommuting2_example(), tol);
  CHECK(!no.commuting);
  MatrixXd w(2, 2);
  w << 0.0, -1.0, 0.0, 0.0;
  CHECK((no.witness - w).norm() == 0.0);

  CHECK_THROWS_AS(classify_dim2(ConstantConnection::zero(3), tol), InvalidInput);
}

TEST_CASE("so-form for a traceless map: frozen cases") {
  Tolerances tol;
  // Rotation generator: negative determinant is impossible here; J has
  // det = +1, so the form is definite.
  MatrixXd J(2, 2);
  J << 0.0, 1.0, -1.0, 0.0;
  auto r = so_form_for(J, tol);
  REQUIRE(r.has_value());
  CHECK((r->form.matrix() - MatrixXd::Identity(2, 2) / std::sqrt(2.0)).norm() < 1e-14);
  CHECK(r->sig.positive == 2);
  CHECK(r->sig.negative == 0);

  // Boost generator: det = -1 gives a (1,1) form.
  MatrixXd B(2, 2);
  B << 0.0, 1.0, 1.0, 0.0;
  r = so_form_for(B, tol);
  REQUIRE(r.has_value());
  MatrixXd D(2, 2);
  D << 1.0, 0.0, 0.0, -1.0;
  CHECK((r->form.matrix() - D / std::sqrt(2.0)).norm() < 1e-14);
  CHECK(r->sig.positive == 1);
  CHECK(r->sig.negative == 1);
  CHECK(r->sig.zero == 0);

  // Gates: visible trace, and near-zero determinant.
  MatrixXd traced(2, 2);
  traced << 1.0, 1.0, -1.0, -0.9;
  CHECK(!so_form_for(traced, tol).has_value());
  MatrixXd singularish(2, 2);
  singularish << 0.0, 1.0, 1e-10, 0.0;
  CHECK(!so_form_for(singularish, tol).has_value());
}

TEST_CASE("so-form: scale invariance and the defining property") {
  Tolerances tol;
  SplitRng rng(13);
  for (int t = 0; t < 30; ++t) {
    MatrixXd a = random_traceless_invertible(rng);
    auto r = so_form_for(a, tol);
    REQUIRE(r.has_value());
    // A lies in so(form): form*A is antisymmetric.
    CHECK(antisym_residual(a / a.norm(), r->form) < 1e-9);
    // Signature follows the sign of the determinant.
    if (a.determinant() < 0.0) {
      CHECK(r->sig.positive == 1);
      CHECK(r->sig.negative == 1);
    } else {
      CHECK(r->sig.positive == 2);
      CHECK(r->sig.negative == 0);
    }
    CHECK(r->sig.zero == 0);
    // Rescaling the map leaves the form unchanged.
    auto r2 = so_form_for(17.0 * a, tol);
    REQUIRE(r2.has_value());
    CHECK((r->form.matrix() - r2->form.matrix()).norm() < 1e-12);
  }
}

TEST_CASE("bracket-closure profile of the fixed examples") {
  Tolerances tol;
  // gamma_1 - gamma_2 = E12 already lies in the span, so the two generators
  // span a bracket-closed 2-dimensional algebra with derived line R E12.
  Dim2Report no = derived_algebra_dim2_report(noncommuting2_example(), tol);
  CHECK(no.closure_dim == 2);
  CHECK(no.derived_dim == 1);
  REQUIRE(no.derived_generator_invertible.has_value());
  CHECK(!*no.derived_generator_invertible);  // derived line is R E12, nilpotent

  Dim2Report yes = derived_algebra_dim2_report(commuting2_example(), tol);
  CHECK(yes.closure_dim == 2);
  CHECK(yes.derived_dim == 0);
  CHECK(!yes.derived_generator_invertible.has_value());

  // Gamma(e_2, e_2) = e_1 together with Gamma(e_1, e_2) = e_2 closes up to
  // gl2 with a 3-dimensional derived algebra.
  std::vector<MatrixXd> comp(2, MatrixXd::Zero(2, 2));
  comp[1](0, 1) = 1.0;
  comp[1](1, 0) = 1.0;
  comp[0](1, 1) = 1.0;
  Dim2Report big = derived_algebra_dim2_report(ConstantConnection(comp), tol);
  CHECK(big.closure_dim == 4);
  CHECK(big.derived_dim == 3);
  CHECK(!big.derived_generator_invertible.has_value());
}

TEST_CASE("obstruction space equals the derived algebra of the closure in dimension two") {
  Tolerances tol;
  SplitRng rng(37);
  for (int t = 0; t < 15; ++t) {
    ConstantConnection conn = random_connection(2, rng);
    MatrixSubspace obstruction = obstruction_space(conn, tol);
    MatrixSubspace lie = bracket_closure(generators(conn, tol), tol);
    MatrixSubspace derived = derived_algebra(lie, tol);
    CHECK(obstruction.dim() == derived.dim());
    for (int c = 0; c < obstruction.dim(); ++c)
      CHECK(derived.residual(obstruction.basis[c]) < 1e-8);
  }
}
