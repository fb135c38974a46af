#include "metrize/connection.hpp"

#include <cmath>
#include <utility>

namespace metrize {

ConstantConnection::ConstantConnection(std::vector<MatrixXd> components)
    : comp_(std::move(components)) {
  n_ = static_cast<int>(comp_.size());
  if (n_ < 1) throw InvalidInput("connection: empty coefficient tensor");
  if (n_ > kMaxDim) throw NotSupported("connection: dimension exceeds supported cap");
  for (const MatrixXd& c : comp_) {
    if (c.rows() != n_ || c.cols() != n_)
      throw InvalidInput("connection: coefficient tensor must be n x n x n");
    if (!is_finite(c)) throw InvalidInput("connection: non-finite coefficients");
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (c(i, j) != c(j, i))
          throw InvalidInput("connection: coefficients must be exactly symmetric in (i, j)");
  }
}

ConstantConnection ConstantConnection::zero(int n) {
  if (n < 1) throw InvalidInput("connection: dimension must be positive");
  return ConstantConnection(std::vector<MatrixXd>(n, MatrixXd::Zero(n, n)));
}

MatrixXd ConstantConnection::gamma(const VectorXd& v) const {
  if (v.size() != n_) throw InvalidInput("connection: vector dimension mismatch");
  MatrixXd out = MatrixXd::Zero(n_, n_);
  for (int k = 0; k < n_; ++k)
    for (int j = 0; j < n_; ++j) {
      double s = 0.0;
      for (int i = 0; i < n_; ++i) s += v(i) * comp_[k](i, j);
      out(k, j) = s;
    }
  return out;
}

MatrixXd ConstantConnection::gamma_basis(int i) const {
  if (i < 0 || i >= n_) throw InvalidInput("connection: basis index out of range");
  MatrixXd out(n_, n_);
  for (int k = 0; k < n_; ++k)
    for (int j = 0; j < n_; ++j) out(k, j) = comp_[k](i, j);
  return out;
}

MatrixSubspace generators(const ConstantConnection& conn, const Tolerances& tol) {
  std::vector<MatrixXd> gens;
  gens.reserve(conn.dim());
  for (int i = 0; i < conn.dim(); ++i) gens.push_back(conn.gamma_basis(i));
  MatrixSubspace s = span(gens, tol);
  s.n = conn.dim();
  return s;
}

MatrixXd curvature(const ConstantConnection& conn, const VectorXd& v, const VectorXd& w) {
  MatrixXd a = conn.gamma(v), b = conn.gamma(w);
  return a * b - b * a;
}

MatrixXd ray_transport(const ConstantConnection& conn, const VectorXd& v, double t) {
  return mat_exp(-t * conn.gamma(v));
}

ConstantConnection conjugate(const ConstantConnection& conn, const MatrixXd& l) {
  const int n = conn.dim();
  if (l.rows() != n || l.cols() != n) throw InvalidInput("conjugate: frame matrix must be n x n");
  Eigen::FullPivLU<MatrixXd> lu(l);
  if (!lu.isInvertible()) throw InvalidInput("conjugate: frame matrix must be invertible");
  MatrixXd linv = lu.inverse();
  // comp'[k](i,j) = sum_{c,a,b} linv(k,c) comp[c](a,b) l(a,i) l(b,j)
  std::vector<MatrixXd> out(n, MatrixXd::Zero(n, n));
  for (int c = 0; c < n; ++c) {
    MatrixXd mid = l.transpose() * conn.components()[c] * l;
    for (int k = 0; k < n; ++k) out[k] += linv(k, c) * mid;
  }
  // Roundoff can break the exact (i,j) symmetry; restore it exactly.
  for (int k = 0; k < n; ++k) out[k] = 0.5 * (out[k] + out[k].transpose().eval());
  return ConstantConnection(std::move(out));
}

MetricField::MetricField(ConstantConnection conn, SymBilinearForm g0, const Tolerances& tol)
    : conn_(std::move(conn)), g0_(std::move(g0)) {
  tol.validate();
  if (g0_.dim() != conn_.dim()) throw InvalidInput("metric field: dimension mismatch");
  if (!g0_.nondegenerate(tol)) throw InvalidInput("metric field: origin form is degenerate");
}

SymBilinearForm MetricField::at(const VectorXd& x) const {
  if (x.size() != conn_.dim()) throw InvalidInput("metric field: point dimension mismatch");
  MatrixXd e = mat_exp(conn_.gamma(x));
  return SymBilinearForm(e.transpose() * g0_.matrix() * e);
}

namespace {

// Entrywise d/dx_k of x |-> G(x), central differences + one Richardson level.
MatrixXd metric_partial(const MetricField& f, const VectorXd& x, int k, double h) {
  auto diff = [&](double step) {
    VectorXd xp = x, xm = x;
    xp(k) += step;
    xm(k) -= step;
    return ((f.at(xp).matrix() - f.at(xm).matrix()) / (2.0 * step)).eval();
  };
  MatrixXd d1 = diff(h), d2 = diff(h / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

double compatibility_residual(const MetricField& f, const VectorXd& x, const Tolerances& tol) {
  tol.validate();
  const int n = f.dim();
  if (x.size() != n) throw InvalidInput("compatibility: point dimension mismatch");
  MatrixXd g = f.at(x).matrix();
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    MatrixXd d = metric_partial(f, x, k, tol.fd_step);
    MatrixXd gk = f.connection().gamma_basis(k);
    double r = (d - (gk.transpose() * g + g * gk)).cwiseAbs().maxCoeff();
    worst = std::max(worst, r);
  }
  return worst;
}

std::vector<MatrixXd> christoffels_from_metric(const MetricField& f, const VectorXd& x,
                                               const Tolerances& tol) {
  tol.validate();
  const int n = f.dim();
  if (x.size() != n) throw InvalidInput("christoffels: point dimension mismatch");
  SymBilinearForm gx = f.at(x);
  if (!gx.nondegenerate(tol))
    throw SingularMetric("christoffels: metric is numerically degenerate at the point");
  MatrixXd ginv = gx.matrix().fullPivLu().inverse();
  std::vector<MatrixXd> dg;
  dg.reserve(n);
  for (int l = 0; l < n; ++l) dg.push_back(metric_partial(f, x, l, tol.fd_step));
  std::vector<MatrixXd> out(n, MatrixXd::Zero(n, n));
  // Gamma^k_ij = 1/2 g^{kl} (d_i g_{jl} + d_j g_{il} - d_l g_{ij})
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        out[k](i, j) = 0.5 * s;
      }
    out[k] = 0.5 * (out[k] + out[k].transpose().eval());
  }
  return out;
}

}  // namespace metrize
