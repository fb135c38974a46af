#include "metrize/lie_closure.hpp"

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>

namespace metrize {

namespace {

MatrixXd bracket(const MatrixXd& a, const MatrixXd& b) { return a * b - b * a; }

// Commutators from `a` x `b` (or the i < j half when self == true), with
// roundoff-sized results dropped.
std::vector<MatrixXd> raw_commutators(const MatrixSubspace& a, const MatrixSubspace& b,
                                      bool self) {
  std::vector<MatrixXd> out;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = self ? i + 1 : 0; j < b.dim(); ++j) {
      MatrixXd c = bracket(a.basis[i], b.basis[j]);
      double scale = 2.0 * a.basis[i].norm() * b.basis[j].norm();
      if (c.norm() > kZeroFloor * scale) out.push_back(std::move(c));
    }
  return out;
}

}  // namespace

MatrixSubspace commutator_span(const MatrixSubspace& a, const MatrixSubspace& b,
                               const Tolerances& tol) {
  if (a.n != b.n) throw InvalidInput("commutator_span: ambient dimension mismatch");
  bool self = &a == &b;
  MatrixSubspace s = span(raw_commutators(a, b, self), tol);
  s.n = a.n;
  return s;
}

MatrixSubspace bracket_closure(const MatrixSubspace& s, const Tolerances& tol) {
  tol.validate();
  MatrixSubspace cur = s;
  const int cap = cur.n * cur.n + 1;
  for (int iter = 0; iter < cap; ++iter) {
    std::vector<MatrixXd> add = raw_commutators(cur, cur, true);
    MatrixSubspace next = merge_span(cur, add, tol);
    next.n = cur.n;
    if (next.dim() == cur.dim()) return next;
    cur = std::move(next);
  }
  return cur;  // dimension is bounded by n^2, so we never actually fall through
}

MatrixSubspace derived_algebra(const MatrixSubspace& g, const Tolerances& tol) {
  tol.validate();
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i + 1; j < g.dim(); ++j) {
      MatrixXd c = bracket(g.basis[i], g.basis[j]);
      if (c.norm() > kZeroFloor * 2.0 && g.residual(c) > tol.verify_tol)
        throw InvalidInput("derived_algebra: family is not closed under brackets");
    }
  MatrixSubspace d = commutator_span(g, g, tol);
  d.n = g.n;
  return d;
}

MatrixSubspace center(const MatrixSubspace& g, const Tolerances& tol) {
  tol.validate();
  const int d = g.dim();
  if (d == 0) return g;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      MatrixXd c = bracket(g.basis[i], g.basis[j]);
      if (c.norm() > kZeroFloor * 2.0 && g.residual(c) > tol.verify_tol)
        throw InvalidInput("center: family is not closed under brackets");
    }
  // Coefficient vectors c with [sum_j c_j B_j, B_i] = 0 for every i.
  const int nn = g.n * g.n;
  MatrixXd m(d * nn, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i)
      m.block(i * nn, j, nn, 1) = vectorize(bracket(g.basis[j], g.basis[i]));
  MatrixXd ker = nullspace_basis(m, tol);
  MatrixSubspace out{g.n, {}};
  for (int c = 0; c < ker.cols(); ++c) {
    MatrixXd z = MatrixXd::Zero(g.n, g.n);
    for (int j = 0; j < d; ++j) z += ker(j, c) * g.basis[j];
    out.basis.push_back(std::move(z));  // orthonormal: orthonormal coefficients
  }
  return out;
}

MatrixSubspace invariant_closure(const MatrixSubspace& s, const MatrixSubspace& seed,
                                 const Tolerances& tol) {
  tol.validate();
  if (seed.dim() == 0) return seed;
  if (s.n != seed.n) throw InvalidInput("invariant_closure: ambient dimension mismatch");
  MatrixSubspace cur = seed;
  const int cap = cur.n * cur.n + 1;
  for (int iter = 0; iter < cap; ++iter) {
    std::vector<MatrixXd> add = raw_commutators(s, cur, false);
    MatrixSubspace next = merge_span(cur, add, tol);
    next.n = cur.n;
    if (next.dim() == cur.dim()) return next;
    cur = std::move(next);
  }
  return cur;
}

MatrixSubspace symmetrized_word_span(const MatrixSubspace& gens, const MatrixSubspace& seeds,
                                     const Tolerances& tol) {
  tol.validate();
  if (seeds.dim() == 0) return MatrixSubspace{seeds.n ? seeds.n : gens.n, {}};
  if (gens.n != seeds.n) throw InvalidInput("word span: ambient dimension mismatch");
  const int n = gens.n;
  const int d = gens.dim();
  const int max_len = n * n - 1;
  if (d == 0) return seeds;

  // Letter norms for the magnitude bound mu; gens is orthonormal so these
  // are all 1, but we do not rely on that.
  std::vector<double> letter_norm(d);
  for (int i = 0; i < d; ++i) letter_norm[i] = gens.basis[i].norm();

  MatrixSubspace out = span(seeds.basis, tol);  // the length-0 layer
  out.n = n;

  // Brackets are traceless, so when every seed is traceless the whole span
  // lives inside sl(n) and the reachable dimension is n^2 - 1, not n^2.
  bool traceless_seeds = true;
  for (const MatrixXd& s : seeds.basis)
    if (std::abs(s.trace()) > kZeroFloor * std::sqrt(static_cast<double>(n))) {
      traceless_seeds = false;
      break;
    }
  const int reachable = n * n - (traceless_seeds ? 1 : 0);

  struct Entry {
    MatrixXd t;  // symmetrized word value (unnormalized)
    double mu;   // upper bound on what ||t|| could be if nothing cancelled
  };

  // Total words materialized across all seeds and lengths.  Families whose
  // words neither die off nor fill the ambient matrix space can blow up
  // combinatorially; the budget turns that into a clean failure.
  std::size_t words = 0;
  for (int c = 0; c < seeds.dim() && out.dim() < reachable; ++c) {
    std::map<std::vector<int>, Entry> prev;
    prev.emplace(std::vector<int>(d, 0), Entry{seeds.basis[c], seeds.basis[c].norm()});
    for (int len = 1; len <= max_len && !prev.empty() && out.dim() < reachable; ++len) {
      std::map<std::vector<int>, Entry> next;
      for (const auto& [m, e] : prev) {
        for (int i = 0; i < d; ++i) {
          std::vector<int> child = m;
          ++child[i];
          auto [it, fresh] = next.try_emplace(child, Entry{MatrixXd::Zero(n, n), 0.0});
          if (fresh && ++words > kWordBudget)
            throw CapacityExceeded("word span: more than " + std::to_string(kWordBudget) +
                                   " symmetrized words enumerated");
          it->second.t += bracket(gens.basis[i], e.t);
          it->second.mu += 2.0 * letter_norm[i] * e.mu;
        }
      }
      // Prune words that are zero up to roundoff: they and their descendants
      // carry no information.
      std::vector<MatrixXd> survivors;
      for (auto it = next.begin(); it != next.end();) {
        double norm = it->second.t.norm();
        if (norm <= kZeroFloor * it->second.mu) {
          it = next.erase(it);
        } else {
          // Merge the raw value (downscaled when large, never blown up):
          // normalizing a heavily-cancelled word would amplify its roundoff
          // into a full-strength spurious direction.
          survivors.push_back(norm > 1.0 ? MatrixXd(it->second.t / norm) : it->second.t);
          ++it;
        }
      }
      out = merge_span(out, survivors, tol);
      out.n = n;
      prev = std::move(next);
    }
  }
  return out;
}

MatrixSubspace obstruction_space_exact(const MatrixSubspace& s, const Tolerances& tol) {
  MatrixSubspace seeds = commutator_span(s, s, tol);
  seeds.n = s.n;
  return symmetrized_word_span(s, seeds, tol);
}

MatrixSubspace obstruction_space(const ConstantConnection& conn, const Tolerances& tol) {
  return obstruction_space_exact(generators(conn, tol), tol);
}

}  // namespace metrize
