#include "metrize/dim2.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "metrize/lie_closure.hpp"

namespace metrize {

namespace {

void require_dim2(const ConstantConnection& conn, const char* what) {
  if (conn.dim() != 2) throw InvalidInput(std::string(what) + ": only defined in dimension 2");
}

// Unit vector with the sign of its first nonzero coordinate positive.
Eigen::Vector2d unit_sign_fixed(Eigen::Vector2d v) {
  v /= v.norm();
  double lead = v(0) != 0.0 ? v(0) : v(1);
  return lead < 0.0 ? Eigen::Vector2d(-v) : v;
}

}  // namespace

Dim2Classification classify_dim2(const ConstantConnection& conn, const Tolerances& tol) {
  tol.validate();
  require_dim2(conn, "classify_dim2");
  MatrixXd g1 = conn.gamma_basis(0), g2 = conn.gamma_basis(1);
  Dim2Classification out;
  out.witness = g1 * g2 - g2 * g1;
  out.commuting = out.witness.norm() < tol.verify_tol;
  return out;
}

std::optional<SoFormResult> so_form_for(const MatrixXd& a, const Tolerances& tol) {
  tol.validate();
  if (a.rows() != 2 || a.cols() != 2) throw InvalidInput("so_form_for: expected a 2 x 2 matrix");
  if (!is_finite(a)) throw InvalidInput("so_form_for: non-finite entries");

  const double norm = a.norm();
  const double det = a.determinant();
  if (std::abs(a.trace()) >= tol.verify_tol * norm) return std::nullopt;
  if (std::abs(det) < tol.det_tol * norm * norm) return std::nullopt;

  const double alpha = a(0, 0), beta = a(0, 1), gamma = a(1, 0), delta = a(1, 1);
  const double s = std::sqrt(std::abs(det));
  Eigen::Vector2d b1, b2;
  if (det < 0.0) {
    // Real eigenvalues +-s; in the basis (u+ + u-, u+ - u-) the map is
    // [[0, s], [s, 0]].
    auto eigvec = [&](double lambda) {
      Eigen::Vector2d v = std::abs(beta) >= std::abs(gamma)
                              ? Eigen::Vector2d(beta, lambda - alpha)
                              : Eigen::Vector2d(lambda - delta, gamma);
      return unit_sign_fixed(v);
    };
    Eigen::Vector2d up = eigvec(s), um = eigvec(-s);
    b1 = up + um;
    b2 = up - um;
  } else {
    // Complex eigenvalues +-is with eigenvector p + iq; in the basis (q, p)
    // the map is [[0, -s], [s, 0]].
    Eigen::Vector2d p, q;
    if (std::abs(beta) >= std::abs(gamma)) {
      p = Eigen::Vector2d(beta, -alpha);
      q = Eigen::Vector2d(0.0, s);
    } else {
      p = Eigen::Vector2d(-delta, gamma);
      q = Eigen::Vector2d(s, 0.0);
    }
    b1 = q;
    b2 = p;
  }

  // Joint scaling keeps the matrix of `a` in this basis intact.
  double scale = b1.norm();
  b1 /= scale;
  b2 /= scale;
  double lead = b1(0) != 0.0 ? b1(0) : b1(1);
  if (lead < 0.0) {
    b1 = -b1;
    b2 = -b2;
  }

  // g0(b1, b1) = 1, g0(b2, b2) = -eps = sign(det), g0(b1, b2) = 0.
  MatrixXd basis(2, 2);
  basis.col(0) = b1;
  basis.col(1) = b2;
  MatrixXd basis_inv = basis.fullPivLu().inverse();
  Eigen::Matrix2d d = Eigen::Matrix2d::Zero();
  d(0, 0) = 1.0;
  d(1, 1) = det > 0.0 ? 1.0 : -1.0;
  MatrixXd g = basis_inv.transpose() * d * basis_inv;

  SoFormResult out{SymBilinearForm(g).normalized(), {}};
  out.sig = signature(out.form, tol);
  return out;
}

Dim2Report derived_algebra_dim2_report(const ConstantConnection& conn, const Tolerances& tol) {
  tol.validate();
  require_dim2(conn, "derived_algebra_dim2_report");
  MatrixSubspace g = bracket_closure(generators(conn, tol), tol);
  MatrixSubspace gprime = derived_algebra(g, tol);
  Dim2Report out;
  out.closure_dim = g.dim();
  out.derived_dim = gprime.dim();
  if (gprime.dim() == 1)
    out.derived_generator_invertible = std::abs(gprime.basis[0].determinant()) > tol.det_tol;
  return out;
}

}  // namespace metrize
