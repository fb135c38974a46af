#include "metrize/two_form.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace metrize {

namespace {

constexpr int kMaxPolyDegree = 8;

void check_exponents(const std::vector<int>& e, int nvars) {
  if (static_cast<int>(e.size()) != nvars)
    throw InvalidInput("polynomial: exponent vector has the wrong length");
  int total = 0;
  for (int x : e) {
    if (x < 0) throw InvalidInput("polynomial: negative exponent");
    total += x;
  }
  if (total > kMaxPolyDegree) throw InvalidInput("polynomial: degree cap exceeded");
}

}  // namespace

Polynomial Polynomial::constant(int nvars, double c) {
  Polynomial p(nvars);
  p.add_term(std::vector<int>(nvars, 0), c);
  return p;
}

Polynomial Polynomial::monomial(int nvars, const std::vector<int>& exponents, double coeff) {
  Polynomial p(nvars);
  p.add_term(exponents, coeff);
  return p;
}

int Polynomial::total_degree() const {
  int deg = 0;
  for (const auto& [e, c] : terms_) deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
  return deg;
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

void Polynomial::add_term(const std::vector<int>& exponents, double coeff) {
  check_exponents(exponents, nvars_);
  if (!std::isfinite(coeff)) throw InvalidInput("polynomial: non-finite coefficient");
  if (coeff == 0.0) return;
  auto it = terms_.find(exponents);
  if (it == terms_.end()) {
    terms_.emplace(exponents, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == 0.0) terms_.erase(it);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (nvars_ != o.nvars_) throw InvalidInput("polynomial: variable count mismatch");
  Polynomial out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  if (nvars_ != o.nvars_) throw InvalidInput("polynomial: variable count mismatch");
  Polynomial out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
  return out;
}

Polynomial Polynomial::scaled(double c) const {
  Polynomial out(nvars_);
  if (c == 0.0) return out;
  for (const auto& [e, coeff] : terms_) out.terms_.emplace(e, c * coeff);
  return out;
}

Polynomial Polynomial::derivative(int var) const {
  if (var < 0 || var >= nvars_) throw InvalidInput("polynomial: derivative variable out of range");
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    std::vector<int> d = e;
    --d[var];
    out.terms_.emplace(std::move(d), c * static_cast<double>(e[var]));
  }
  return out;
}

double Polynomial::evaluate(const VectorXd& x) const {
  if (x.size() != nvars_) throw InvalidInput("polynomial: evaluation point dimension mismatch");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c;
    for (int v = 0; v < nvars_; ++v)
      for (int p = 0; p < e[v]; ++p) term *= x(v);
    sum += term;
  }
  return sum;
}

PolyTwoForm::PolyTwoForm(int n, std::map<std::pair<int, int>, Polynomial> upper) : n_(n) {
  if (n < 1) throw InvalidInput("two-form: dimension must be positive");
  if (n > kMaxDim) throw NotSupported("two-form: dimension above the supported maximum");
  for (auto& [key, poly] : upper) {
    auto [i, j] = key;
    if (i < 0 || j < 0 || i >= n || j >= n || i >= j)
      throw InvalidInput("two-form: component indices must satisfy 0 <= i < j < n");
    if (poly.nvars() != n) throw InvalidInput("two-form: coefficient variable count mismatch");
    if (!poly.is_zero()) upper_.emplace(key, std::move(poly));
  }
}

PolyTwoForm PolyTwoForm::standard_symplectic(int n) {
  if (n < 2 || n % 2 != 0) throw InvalidInput("standard symplectic form needs even dimension");
  std::map<std::pair<int, int>, Polynomial> upper;
  for (int k = 0; k + 1 < n; k += 2) upper.emplace(std::make_pair(k, k + 1), Polynomial::constant(n, 1.0));
  return PolyTwoForm(n, std::move(upper));
}

Polynomial PolyTwoForm::component(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw InvalidInput("two-form: index out of range");
  if (i == j) return Polynomial(n_);
  bool flip = i > j;
  auto it = upper_.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
  if (it == upper_.end()) return Polynomial(n_);
  return flip ? it->second.scaled(-1.0) : it->second;
}

MatrixXd PolyTwoForm::evaluate(const VectorXd& x) const {
  if (x.size() != n_) throw InvalidInput("two-form: evaluation point dimension mismatch");
  MatrixXd m = MatrixXd::Zero(n_, n_);
  for (const auto& [key, poly] : upper_) {
    double v = poly.evaluate(x);
    m(key.first, key.second) = v;
    m(key.second, key.first) = -v;
  }
  return m;
}

bool PolyTwoForm::constant_coefficients() const {
  for (const auto& [key, poly] : upper_)
    if (poly.total_degree() > 0) return false;
  return true;
}

Polynomial exterior_derivative_component(const PolyTwoForm& w, int i, int j, int k) {
  return w.component(j, k).derivative(i) - w.component(i, k).derivative(j) +
         w.component(i, j).derivative(k);
}

double exterior_derivative_max_coeff(const PolyTwoForm& w) {
  double worst = 0.0;
  for (int i = 0; i < w.dim(); ++i)
    for (int j = i + 1; j < w.dim(); ++j)
      for (int k = j + 1; k < w.dim(); ++k)
        worst = std::max(worst, exterior_derivative_component(w, i, j, k).max_abs_coeff());
  return worst;
}

double alt_nabla_identity_residual(const PolyTwoForm& w, const ConstantConnection& conn,
                                   const std::vector<VectorXd>& points) {
  const int n = w.dim();
  if (conn.dim() != n) throw InvalidInput("alt-nabla residual: dimension mismatch");

  // T_abc = d_a omega_bc - omega(Gamma(e_a,e_b), e_c) - omega(e_b, Gamma(e_a,e_c))
  // evaluated at x, with omega(u, v) = u^T M v for M = evaluate(x).
  auto t_term = [&](const MatrixXd& m, const VectorXd& x, int a, int b, int c) {
    double val = w.component(b, c).derivative(a).evaluate(x);
    VectorXd gab(n), gac(n);
    for (int k = 0; k < n; ++k) {
      gab(k) = conn.coeff(k, a, b);
      gac(k) = conn.coeff(k, a, c);
    }
    val -= gab.dot(m.col(c));          // omega(Gamma(e_a,e_b), e_c)
    val -= m.row(b).dot(gac);          // omega(e_b, Gamma(e_a,e_c))
    return val;
  };

  double worst = 0.0;
  for (const VectorXd& x : points) {
    MatrixXd m = w.evaluate(x);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          double lhs = exterior_derivative_component(w, i, j, k).evaluate(x);
          double rhs = t_term(m, x, i, j, k) - t_term(m, x, j, i, k) + t_term(m, x, k, i, j);
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  }
  return worst;
}

bool nondegenerate_at(const PolyTwoForm& w, const VectorXd& x, const Tolerances& tol) {
  tol.validate();
  MatrixXd m = w.evaluate(x);
  double norm = m.norm();
  if (!(norm > 0.0)) return false;
  return std::abs((m / norm).determinant()) > tol.det_tol;
}

ConstantConnection compatible_connection_for_constant(const PolyTwoForm& w,
                                                      const Tolerances& tol) {
  tol.validate();
  if (!w.constant_coefficients())
    throw NotSupported("compatible connection: only constant-coefficient forms are handled");
  if (!nondegenerate_at(w, VectorXd::Zero(w.dim()), tol))
    throw NotSupported("compatible connection: the form is degenerate");
  return ConstantConnection::zero(w.dim());
}

}  // namespace metrize
