#pragma once

#include "metrize/connection.hpp"
#include "metrize/linalg.hpp"

namespace metrize {

// Span of all [a_i, b_j]; commutators whose norm is below the roundoff floor
// relative to 2 ||a_i|| ||b_j|| are discarded as exact zeros.  When both
// arguments are the same subspace only pairs i < j are formed.
MatrixSubspace commutator_span(const MatrixSubspace& a, const MatrixSubspace& b,
                               const Tolerances& tol);

// Smallest bracket-closed subspace containing s (iterate s <- s + [s, s]).
MatrixSubspace bracket_closure(const MatrixSubspace& s, const Tolerances& tol);

// [g, g] for a bracket-closed g; throws InvalidInput when g is not closed.
MatrixSubspace derived_algebra(const MatrixSubspace& g, const Tolerances& tol);

// { z in g : [z, g] = 0 } for a bracket-closed g.
MatrixSubspace center(const MatrixSubspace& g, const Tolerances& tol);

// Smallest subspace containing `seed` that is invariant under ad_x for every
// x in s (iterate seed <- seed + [s, seed]).
MatrixSubspace invariant_closure(const MatrixSubspace& s, const MatrixSubspace& seed,
                                 const Tolerances& tol);

// Span of all words (ad_{x_{i_1}} ... ad_{x_{i_k}}) c with x's drawn from the
// basis of `gens`, c from the basis of `seeds`, and word length k <= n^2 - 1.
// By polarization this span is generated by symmetrized words, which depend
// only on the multiset of letters; those are enumerated bottom-up, layer by
// layer, with numerically-zero words pruned.  Enumeration stops early once
// the span saturates everything words can reach -- all of gl(n), or sl(n)
// when every seed is traceless, since brackets are traceless.  If instead
// the number of distinct words enumerated exceeds 10^6 before saturation,
// CapacityExceeded is thrown.
MatrixSubspace symmetrized_word_span(const MatrixSubspace& gens, const MatrixSubspace& seeds,
                                     const Tolerances& tol);

// Obstruction space of a family s of endomorphisms: the span of all
// ad-words of elements of s applied to the pairwise commutators of s.
// A compatible form must make every element of this space antisymmetric.
MatrixSubspace obstruction_space_exact(const MatrixSubspace& s, const Tolerances& tol);

// Obstruction space of a constant connection (s = generators(conn)).
MatrixSubspace obstruction_space(const ConstantConnection& conn, const Tolerances& tol);

}  // namespace metrize
