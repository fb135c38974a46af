#pragma once

#include <vector>

#include "metrize/connection.hpp"
#include "metrize/lie_group.hpp"

namespace metrize {

// Independent numerical checks of a metric field against its connection.
// `holonomy` covers both loop holonomy (transport around closed polygons
// preserves the origin form) and path independence of the induced isometry
// property; all residuals are scale-free.
struct VerifyReport {
  double compatibility = 0.0;
  double christoffel_recovery = 0.0;
  double holonomy = 0.0;
  int samples_used = 0;

  bool pass(const Tolerances& tol) const {
    return compatibility < tol.verify_tol && christoffel_recovery < tol.verify_tol &&
           holonomy < tol.verify_tol;
  }
};

// Battery: compatibility on the 5^n grid over [-1,1]^n plus 32 seeded random
// points; Christoffel recovery at 20 seeded points; holonomy around 50
// seeded polygonal loops through the origin; transport isometry along 10
// pairs of independent paths.
VerifyReport verify_metric(const MetricField& f, const Tolerances& tol);

// exp(-gamma(b - a)): parallel transport along the straight segment a -> b.
MatrixXd segment_transport(const ConstantConnection& conn, const VectorXd& a, const VectorXd& b);

// Transport along the polygonal path through `vertices`, in order.
MatrixXd path_transport(const ConstantConnection& conn, const std::vector<VectorXd>& vertices);

// Transport around a closed polygon (first vertex == last vertex required).
MatrixXd loop_holonomy(const ConstantConnection& conn, const std::vector<VectorXd>& vertices);

// Monte-Carlo check of the conjugated-curvature criterion on R^n: conjugates
// of curvature operators by ray transports must be antisymmetric for g0.
// Returns the worst residual over `count` samples.
double sample_condition_rn(const ConstantConnection& conn, const SymBilinearForm& g0, int count,
                           const Tolerances& tol);

// Same check for a left-invariant connection: exp(Gamma(z)) R(e_i, e_j)
// exp(-Gamma(z)) must be antisymmetric for h.  Throws TorsionError when the
// connection has torsion.
double sample_condition_group(const InvariantConnection& conn, const SymBilinearForm& h,
                              int count, const Tolerances& tol);

// Randomized containment check for the word-span machinery: sampled words
// (ad_x)^k c with x in span(s), c in span(seeds), k <= 4 must lie in v.
// Returns the worst relative projection residual over `count` samples.
double word_soundness_residual(const MatrixSubspace& s, const MatrixSubspace& seeds,
                               const MatrixSubspace& v, int count, const Tolerances& tol);

}  // namespace metrize
