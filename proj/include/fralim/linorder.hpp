#pragma once

#include "fralim/square.hpp"

namespace fralim {

// 0 < 1 < ... < n-1.
Structure chain(int n);

// Standard amalgam of two order embeddings over a shared apex. Between two
// consecutive apex points all of a's points precede all of b's new points.
CommutingSquare linorder_free_amalgam(const Morphism& i, const Morphism& j);

struct MixedAmalgamResult {
    Morphism extend;  // A -> W, weakly increasing
    Morphism include; // B -> W, embedding adding at most one point
};

// Completes a one-point order extension i: C -> A against an arbitrary
// increasing map f: C -> B. The new point lands at the least position of B
// consistent with f (identified with an existing point when forced).
MixedAmalgamResult linorder_mixed_amalgam(const Morphism& i, const Morphism& f);

struct AmalgamExtension {
    Morphism into_target; // h: W -> L with h|A = f, h|B = g
    Morphism from_left;   // A -> W, embedding
    Morphism from_right;  // B -> W, embedding
};

// Given one-point extensions A, B of a common C and increasing maps f: A -> L,
// g: B -> L agreeing on C, produces an order W on A ∪ B through which both
// factor. Cross pairs with f(u) < g(q) keep that orientation; ties go above
// unless a C point separates the pair (the naive all-ties-one-way rule is not
// transitive).
AmalgamExtension linorder_amalgamated_extension(const Morphism& f, const Morphism& g,
                                                const Morphism& iA, const Morphism& iB);

// Canonical retraction of an order embedding: r(b) is the greatest image
// point at or below b, or the least point of the domain when none exists.
Morphism linorder_left_inverse(const Morphism& j);

std::vector<Structure> enumerate_linorders(int n);

} // namespace fralim
