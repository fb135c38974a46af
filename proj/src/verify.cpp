#include "metrize/verify.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "metrize/generate.hpp"
#include "metrize/rng.hpp"

namespace metrize {

namespace {

// Odometer over the tensor grid {-1, -0.5, 0, 0.5, 1}^n.
std::vector<VectorXd> sample_grid(int n) {
  const double levels[5] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  std::vector<VectorXd> out;
  std::vector<int> idx(n, 0);
  while (true) {
    VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = levels[idx[i]];
    out.push_back(std::move(x));
    int i = 0;
    while (i < n && ++idx[i] == 5) idx[i++] = 0;
    if (i == n) break;
  }
  return out;
}

}  // namespace

MatrixXd segment_transport(const ConstantConnection& conn, const VectorXd& a, const VectorXd& b) {
  return mat_exp(-conn.gamma(b - a));
}

MatrixXd path_transport(const ConstantConnection& conn, const std::vector<VectorXd>& vertices) {
  if (vertices.empty()) throw InvalidInput("path transport: no vertices");
  const int n = conn.dim();
  for (const VectorXd& v : vertices)
    if (v.size() != n) throw InvalidInput("path transport: vertex dimension mismatch");
  MatrixXd p = MatrixXd::Identity(n, n);
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    p = segment_transport(conn, vertices[i], vertices[i + 1]) * p;
  return p;
}

MatrixXd loop_holonomy(const ConstantConnection& conn, const std::vector<VectorXd>& vertices) {
  if (vertices.empty()) throw InvalidInput("loop holonomy: no vertices");
  double scale = 1.0;
  for (const VectorXd& v : vertices) scale = std::max(scale, v.norm());
  if ((vertices.front() - vertices.back()).norm() > kZeroFloor * scale)
    throw InvalidInput("loop holonomy: polygon is not closed");
  return path_transport(conn, vertices);
}

VerifyReport verify_metric(const MetricField& f, const Tolerances& tol) {
  tol.validate();
  const int n = f.dim();
  const ConstantConnection& conn = f.connection();
  const MatrixXd& g0 = f.origin_form().matrix();
  SplitRng root = SplitRng(tol.seed).split(stream_tag("verify_metric"));
  VerifyReport report;

  // Compatibility of the field with the connection; worst case over the
  // tensor grid and random interior points.
  std::vector<VectorXd> points = sample_grid(n);
  SplitRng compat_rng = root.split(stream_tag("points"));
  for (int i = 0; i < 32; ++i) points.push_back(random_ball_point(n, compat_rng));
  for (const VectorXd& x : points)
    report.compatibility = std::max(report.compatibility, compatibility_residual(f, x, tol));

  // Christoffel recovery from finite differences of the field.
  SplitRng chris_rng = root.split(stream_tag("christoffel"));
  for (int s = 0; s < 20; ++s) {
    VectorXd x = random_ball_point(n, chris_rng);
    std::vector<MatrixXd> rec = christoffels_from_metric(f, x, tol);
    for (int k = 0; k < n; ++k) {
      double diff = (rec[k] - conn.components()[k]).cwiseAbs().maxCoeff();
      report.christoffel_recovery = std::max(report.christoffel_recovery, diff);
    }
  }

  // Transport around closed polygons must preserve the origin form ...
  SplitRng loop_rng = root.split(stream_tag("loops"));
  const double g0_norm = g0.norm();
  for (int s = 0; s < 50; ++s) {
    MatrixXd p = loop_holonomy(conn, random_loop(n, loop_rng));
    double defect = (p.transpose() * g0 * p - g0).norm() / g0_norm;
    report.holonomy = std::max(report.holonomy, defect);
  }

  // ... and transporting the origin form out to x along any polygonal path
  // must reproduce the field value there (path independence).
  SplitRng path_rng = root.split(stream_tag("paths"));
  int path_checks = 0;
  for (int s = 0; s < 10; ++s) {
    VectorXd target = random_ball_point(n, path_rng);
    MatrixXd gx = f.at(target).matrix();
    for (int rep = 0; rep < 2; ++rep) {
      std::vector<VectorXd> path = random_path(n, target, path_rng);
      std::reverse(path.begin(), path.end());
      MatrixXd q = path_transport(conn, path);  // inverse transport: x -> 0
      double defect = (q.transpose() * g0 * q - gx).norm() / g0_norm;
      report.holonomy = std::max(report.holonomy, defect);
      ++path_checks;
    }
  }

  report.samples_used = static_cast<int>(points.size()) + 20 + 50 + path_checks;
  return report;
}

double sample_condition_rn(const ConstantConnection& conn, const SymBilinearForm& g0, int count,
                           const Tolerances& tol) {
  tol.validate();
  if (conn.dim() != g0.dim()) throw InvalidInput("sample condition: dimension mismatch");
  if (!g0.nondegenerate(tol)) throw InvalidInput("sample condition: degenerate form");
  const int n = conn.dim();
  SplitRng rng = SplitRng(tol.seed).split(stream_tag("sample_rn"));
  double worst = 0.0;
  for (int s = 0; s < count; ++s) {
    VectorXd v = random_ball_point(n, rng);
    VectorXd w1 = random_ball_point(n, rng);
    VectorXd w2 = random_ball_point(n, rng);
    MatrixXd a = conn.gamma(w1), b = conn.gamma(w2);
    MatrixXd k = a * b - b * a;
    if (k.norm() <= kZeroFloor * 2.0 * a.norm() * b.norm()) continue;
    MatrixXd c = mat_exp(conn.gamma(v)) * k * mat_exp(-conn.gamma(v));
    worst = std::max(worst, antisym_residual(c / c.norm(), g0));
  }
  return worst;
}

double sample_condition_group(const InvariantConnection& conn, const SymBilinearForm& h,
                              int count, const Tolerances& tol) {
  tol.validate();
  if (conn.dim() != h.dim()) throw InvalidInput("sample condition: dimension mismatch");
  if (!h.nondegenerate(tol)) throw InvalidInput("sample condition: degenerate form");
  double torsion_res = torsion_residual(conn);
  if (torsion_res >= kStructureTol)
    throw TorsionError("sample condition: connection has torsion", torsion(conn), torsion_res);

  const int n = conn.dim();
  if (n < 2) return 0.0;
  SplitRng rng = SplitRng(tol.seed).split(stream_tag("sample_lg"));
  double worst = 0.0;
  for (int s = 0; s < count; ++s) {
    VectorXd z = random_ball_point(n, rng);
    int i = rng.uniform_int(0, n - 1);
    int j = rng.uniform_int(0, n - 2);
    if (j >= i) ++j;
    MatrixXd r = curvature_lg(conn, i, j);
    VectorXd br(n);
    for (int k = 0; k < n; ++k) br(k) = conn.algebra().coeff(k, i, j);
    double scale = 2.0 * conn.gamma_basis(i).norm() * conn.gamma_basis(j).norm() +
                   conn.gamma(br).norm();
    if (r.norm() <= kZeroFloor * scale) continue;
    MatrixXd c = mat_exp(conn.gamma(z)) * r * mat_exp(-conn.gamma(z));
    worst = std::max(worst, antisym_residual(c / c.norm(), h));
  }
  return worst;
}

double word_soundness_residual(const MatrixSubspace& s, const MatrixSubspace& seeds,
                               const MatrixSubspace& v, int count, const Tolerances& tol) {
  tol.validate();
  if (s.dim() == 0 || seeds.dim() == 0) return 0.0;
  SplitRng rng = SplitRng(tol.seed).split(stream_tag("word_soundness"));
  auto random_element = [&rng](const MatrixSubspace& space) {
    VectorXd c(space.dim());
    for (int i = 0; i < space.dim(); ++i) c(i) = rng.gaussian();
    c /= c.norm();
    MatrixXd out = MatrixXd::Zero(space.n, space.n);
    for (int i = 0; i < space.dim(); ++i) out += c(i) * space.basis[i];
    return out;
  };

  double worst = 0.0;
  for (int trial = 0; trial < count; ++trial) {
    MatrixXd x = random_element(s);
    MatrixXd t = random_element(seeds);
    int k = rng.uniform_int(0, 4);
    double mu = t.norm();
    for (int step = 0; step < k; ++step) {
      t = x * t - t * x;
      mu *= 2.0 * x.norm();
    }
    if (t.norm() <= kZeroFloor * std::max(1.0, mu)) continue;
    worst = std::max(worst, v.residual(t / t.norm()));
  }
  return worst;
}

}  // namespace metrize
