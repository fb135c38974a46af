#pragma once

#include <string>

#include "metrize/connection.hpp"
#include "metrize/lie_group.hpp"
#include "metrize/rng.hpp"

namespace metrize {

// Deterministic generators used by tests, the corpus runs, and the CLI.
// Everything draws only from the SplitRng handed in.

// Haar-ish random orthogonal matrix (QR of a Gaussian matrix, signs fixed).
MatrixXd random_orthogonal(int n, SplitRng& rng);

// Random invertible matrix with condition number at most `max_cond`.
MatrixXd random_invertible(int n, double max_cond, SplitRng& rng);

// Uniform point in the unit ball.
VectorXd random_ball_point(int n, SplitRng& rng);

// Random symmetric form with signature (positive, n - positive, 0).
SymBilinearForm random_nondegenerate_form(int n, int positive, SplitRng& rng);

// Connection whose gamma(v) all commute: built from a random commutative
// associative algebra structure (diagonal, truncated-polynomial, or a mixed
// block sum), conjugated by a random frame and rescaled to a modest size.
ConstantConnection random_commuting_connection(int n, SplitRng& rng);

// Unstructured random connection (entries uniform, symmetrized).
ConstantConnection random_connection(int n, SplitRng& rng);

// The standard 2-dimensional example with noncommuting generators:
// gamma(e_1) = [[1,1],[0,0]], gamma(e_2) = [[1,0],[0,0]].
ConstantConnection noncommuting2_example();

// A 2-dimensional commuting example: Gamma(e_1, e_1) = e_1 and
// Gamma(e_1, e_2) = Gamma(e_2, e_1) = e_2, which gives gamma(e_1) = I and
// gamma(e_2) = [[0,0],[1,0]].
ConstantConnection commuting2_example();

// Random closed polygon through the origin (triangle or quadrilateral).
std::vector<VectorXd> random_loop(int n, SplitRng& rng);

// Random polygonal path from the origin to `target`.
std::vector<VectorXd> random_path(int n, const VectorXd& target, SplitRng& rng);

// A catalog algebra together with a random left-invariant metric of the
// requested signature and its Levi-Civita connection.
struct KoszulInstance {
  InvariantConnection conn;
  SymBilinearForm h;
};
KoszulInstance koszul_instance(const std::string& algebra, int positive, int negative,
                               SplitRng& rng, const Tolerances& tol);

}  // namespace metrize
