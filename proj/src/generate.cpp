#include "metrize/generate.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace metrize {

MatrixXd random_orthogonal(int n, SplitRng& rng) {
  MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.gaussian();
  Eigen::HouseholderQR<MatrixXd> qr(a);
  MatrixXd q = qr.householderQ();
  MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  return q;
}

MatrixXd random_invertible(int n, double max_cond, SplitRng& rng) {
  if (!(max_cond >= 1.0)) throw InvalidInput("random_invertible: condition bound below 1");
  MatrixXd u = random_orthogonal(n, rng);
  MatrixXd v = random_orthogonal(n, rng);
  double half_log = 0.5 * std::log(max_cond);
  VectorXd sing(n);
  for (int i = 0; i < n; ++i) sing(i) = std::exp(rng.uniform(-half_log, half_log));
  return u * sing.asDiagonal() * v.transpose();
}

VectorXd random_ball_point(int n, SplitRng& rng) {
  VectorXd v(n);
  double norm = 0.0;
  while (norm <= 1e-12) {
    for (int i = 0; i < n; ++i) v(i) = rng.gaussian();
    norm = v.norm();
  }
  double radius = std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
  return v * (radius / norm);
}

SymBilinearForm random_nondegenerate_form(int n, int positive, SplitRng& rng) {
  if (positive < 0 || positive > n)
    throw InvalidInput("random_nondegenerate_form: signature out of range");
  MatrixXd q = random_orthogonal(n, rng);
  VectorXd eigs(n);
  for (int i = 0; i < n; ++i) {
    double mag = rng.uniform(0.5, 2.0);
    eigs(i) = i < positive ? mag : -mag;
  }
  return SymBilinearForm(q * eigs.asDiagonal() * q.transpose());
}

ConstantConnection random_commuting_connection(int n, SplitRng& rng) {
  // Multiplication table of a random commutative associative algebra on R^n:
  // mult[k](i,j) is the e_k coefficient of e_i * e_j.
  std::vector<MatrixXd> mult(n, MatrixXd::Zero(n, n));
  int kind = rng.uniform_int(0, 2);
  auto diag_block = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) mult[i](i, i) = rng.uniform(0.5, 2.0) * (rng.uniform() < 0.25 ? -1.0 : 1.0);
  };
  auto poly_block = [&](int lo, int hi) {
    // Truncated polynomial algebra on e_lo..e_{hi-1}: e_{lo+a} * e_{lo+b} =
    // e_{lo+a+b} while it stays inside the block, else 0.
    for (int a = 0; lo + a < hi; ++a)
      for (int b = 0; lo + b < hi; ++b)
        if (lo + a + b < hi) mult[lo + a + b](lo + a, lo + b) = 1.0;
  };
  if (kind == 0 || n == 1) {
    diag_block(0, n);
  } else if (kind == 1) {
    poly_block(0, n);
  } else {
    int split = rng.uniform_int(1, n - 1);
    diag_block(0, split);
    poly_block(split, n);
  }

  ConstantConnection conn = conjugate(ConstantConnection(std::move(mult)),
                                      random_invertible(n, 10.0, rng));

  // Rescale so the largest coefficient sits near 0.12 / n: keeps the metric
  // field and its finite differences in the numerically comfortable range.
  double target = rng.uniform(0.10, 0.15) / static_cast<double>(n);
  double top = 0.0;
  for (const MatrixXd& m : conn.components()) top = std::max(top, m.cwiseAbs().maxCoeff());
  if (top > 0.0) {
    std::vector<MatrixXd> scaled;
    for (const MatrixXd& m : conn.components()) scaled.push_back(m * (target / top));
    conn = ConstantConnection(std::move(scaled));
  }
  return conn;
}

ConstantConnection random_connection(int n, SplitRng& rng) {
  std::vector<MatrixXd> comp(n, MatrixXd::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double value = rng.uniform(-2.0, 2.0);
        comp[k](i, j) = value;
        comp[k](j, i) = value;
      }
  return ConstantConnection(std::move(comp));
}

ConstantConnection noncommuting2_example() {
  std::vector<MatrixXd> comp(2, MatrixXd::Zero(2, 2));
  comp[0] << 1.0, 1.0, 1.0, 0.0;
  return ConstantConnection(std::move(comp));
}

ConstantConnection commuting2_example() {
  std::vector<MatrixXd> comp(2, MatrixXd::Zero(2, 2));
  comp[0](0, 0) = 1.0;
  comp[1](0, 1) = 1.0;
  comp[1](1, 0) = 1.0;
  return ConstantConnection(std::move(comp));
}

std::vector<VectorXd> random_loop(int n, SplitRng& rng) {
  int corners = rng.uniform_int(2, 3);
  std::vector<VectorXd> loop;
  loop.push_back(VectorXd::Zero(n));
  for (int i = 0; i < corners; ++i) loop.push_back(random_ball_point(n, rng));
  loop.push_back(VectorXd::Zero(n));
  return loop;
}

std::vector<VectorXd> random_path(int n, const VectorXd& target, SplitRng& rng) {
  if (target.size() != n) throw InvalidInput("random_path: target dimension mismatch");
  std::vector<VectorXd> path;
  path.push_back(VectorXd::Zero(n));
  int inner = rng.uniform_int(1, 2);
  for (int i = 0; i < inner; ++i) path.push_back(random_ball_point(n, rng));
  path.push_back(target);
  return path;
}

KoszulInstance koszul_instance(const std::string& algebra, int positive, int negative,
                               SplitRng& rng, const Tolerances& tol) {
  LieAlgebraStructure alg = catalog_algebra(algebra);
  if (positive < 0 || negative < 0 || positive + negative != alg.dim())
    throw InvalidInput("koszul_instance: signature does not match the algebra dimension");
  SymBilinearForm h = random_nondegenerate_form(alg.dim(), positive, rng);
  InvariantConnection conn = levi_civita_invariant(alg, h, tol);
  return KoszulInstance{std::move(conn), std::move(h)};
}

}  // namespace metrize
