#include "metrize/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace metrize {

SymBilinearForm::SymBilinearForm(const MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw InvalidInput("bilinear form: matrix must be square and nonempty");
  if (!is_finite(m)) throw InvalidInput("bilinear form: non-finite entries");
  if (m.rows() > kMaxDim) throw NotSupported("bilinear form: dimension exceeds supported cap");
  // (m + m^T)/2 entrywise is exactly symmetric in floating point.
  g_ = 0.5 * (m + m.transpose());
}

SymBilinearForm SymBilinearForm::identity(int n) {
  return SymBilinearForm(MatrixXd::Identity(n, n));
}

double SymBilinearForm::operator()(const VectorXd& u, const VectorXd& v) const {
  if (u.size() != g_.rows() || v.size() != g_.rows())
    throw InvalidInput("bilinear form: vector dimension mismatch");
  return u.dot(g_ * v);
}

double SymBilinearForm::normalized_det() const {
  double fn = g_.norm();
  if (fn == 0.0) return 0.0;
  return (g_ / fn).determinant();
}

SymBilinearForm SymBilinearForm::normalized() const {
  double fn = g_.norm();
  if (fn == 0.0) throw InvalidInput("bilinear form: cannot normalize the zero form");
  return SymBilinearForm(g_ / fn);
}

MatrixXd MatrixSubspace::project(const MatrixXd& a) const {
  MatrixXd out = MatrixXd::Zero(n, n);
  for (const MatrixXd& b : basis) out += vectorize(b).dot(vectorize(a)) * b;
  return out;
}

double MatrixSubspace::residual(const MatrixXd& a) const { return (a - project(a)).norm(); }

bool MatrixSubspace::contains(const MatrixSubspace& other, double eps) const {
  for (const MatrixXd& b : other.basis)
    if (residual(b) > eps) return false;
  return true;
}

VectorXd vectorize(const MatrixXd& m) {
  return Eigen::Map<const VectorXd>(m.data(), m.size());
}

MatrixXd unvectorize(const VectorXd& v, int n) {
  return Eigen::Map<const MatrixXd>(v.data(), n, n);
}

bool is_finite(const MatrixXd& m) { return m.allFinite(); }

MatrixXd mat_exp(const MatrixXd& a) {
  if (a.rows() != a.cols()) throw InvalidInput("mat_exp: matrix must be square");
  if (!is_finite(a)) throw InvalidInput("mat_exp: non-finite entries");
  return a.exp();
}

namespace {

// Orthonormal span of already-vectorized rows.  One SVD when the family is
// small; otherwise the rows are folded in chunks so each SVD stays bounded.
MatrixSubspace span_rows(const MatrixXd& rows, int n, const Tolerances& tol) {
  const int cols = n * n;
  MatrixSubspace out{n, {}};
  auto reduce = [&](const MatrixXd& block) {
    Eigen::JacobiSVD<MatrixXd> svd(block, Eigen::ComputeThinV);
    if (svd.singularValues().size() == 0) return;
    double smax = svd.singularValues()(0);
    if (smax <= 0.0) return;
    int r = 0;
    while (r < svd.singularValues().size() && svd.singularValues()(r) > tol.rank_tol * smax) ++r;
    out.basis.clear();
    out.basis.reserve(r);
    for (int i = 0; i < r; ++i) out.basis.push_back(unvectorize(svd.matrixV().col(i), n));
  };

  const int chunk = 256;
  if (rows.rows() <= chunk + cols) {
    reduce(rows);
    return out;
  }
  for (int start = 0; start < rows.rows(); start += chunk) {
    int len = std::min<int>(chunk, static_cast<int>(rows.rows()) - start);
    MatrixXd block(out.dim() + len, cols);
    for (int i = 0; i < out.dim(); ++i) block.row(i) = vectorize(out.basis[i]).transpose();
    block.bottomRows(len) = rows.middleRows(start, len);
    reduce(block);
  }
  return out;
}

}  // namespace

MatrixSubspace span(const std::vector<MatrixXd>& mats, const Tolerances& tol) {
  tol.validate();
  if (mats.empty()) return MatrixSubspace{0, {}};
  const int n = static_cast<int>(mats[0].rows());
  MatrixXd rows(static_cast<int>(mats.size()), n * n);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (mats[i].rows() != n || mats[i].cols() != n)
      throw InvalidInput("span: matrices must share square dimensions");
    if (!is_finite(mats[i])) throw InvalidInput("span: non-finite entries");
    rows.row(static_cast<int>(i)) = vectorize(mats[i]).transpose();
  }
  return span_rows(rows, n, tol);
}

MatrixSubspace merge_span(const MatrixSubspace& base, const std::vector<MatrixXd>& extra,
                          const Tolerances& tol) {
  std::vector<MatrixXd> all = base.basis;
  all.insert(all.end(), extra.begin(), extra.end());
  MatrixSubspace out = span(all, tol);
  if (out.n == 0) out.n = base.n;
  return out;
}

MatrixXd nullspace_basis(const MatrixXd& m, const Tolerances& tol) {
  const int cols = static_cast<int>(m.cols());
  if (m.rows() == 0) return MatrixXd::Identity(cols, cols);
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullV);
  double smax = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
  int r = 0;
  if (smax > 0.0)
    while (r < svd.singularValues().size() && svd.singularValues()(r) > tol.rank_tol * smax) ++r;
  return svd.matrixV().rightCols(cols - r);
}

Signature signature(const SymBilinearForm& g, const Tolerances& tol) {
  tol.validate();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(g.matrix());
  if (es.info() != Eigen::Success) throw Error("signature: eigensolver failed");
  const VectorXd& ev = es.eigenvalues();
  double amax = ev.cwiseAbs().maxCoeff();
  Signature s;
  for (int i = 0; i < ev.size(); ++i) {
    if (amax == 0.0 || std::abs(ev(i)) <= tol.rank_tol * amax)
      ++s.zero;
    else if (ev(i) > 0.0)
      ++s.positive;
    else
      ++s.negative;
  }
  return s;
}

double antisym_residual(const MatrixXd& a, const SymBilinearForm& g) {
  if (a.rows() != g.dim() || a.cols() != g.dim())
    throw InvalidInput("antisym_residual: dimension mismatch");
  const MatrixXd& gm = g.matrix();
  return (a.transpose() * gm + gm * a).norm();
}

int trilinear_symmetry_nullspace_dim(int n) {
  if (n < 1 || n > 6) throw InvalidInput("trilinear nullspace: need 1 <= n <= 6");
  // Unknowns rho(i,j,k); constraints: rho(i,j,k) = rho(j,i,k) and
  // rho(i,j,k) = -rho(i,k,j).
  auto idx = [n](int i, int j, int k) { return (i * n + j) * n + k; };
  std::vector<Eigen::RowVectorXd> rows;
  const int total = n * n * n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(total);
        r(idx(i, j, k)) = 1.0;
        r(idx(j, i, k)) -= 1.0;
        rows.push_back(r);
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(total);
        r(idx(i, j, k)) += 1.0;
        r(idx(i, k, j)) += 1.0;
        rows.push_back(r);
      }
  MatrixXd m(static_cast<int>(rows.size()), total);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<int>(i)) = rows[i];
  Tolerances tol;  // defaults are fine for an integer matrix
  return static_cast<int>(nullspace_basis(m, tol).cols());
}

}  // namespace metrize
