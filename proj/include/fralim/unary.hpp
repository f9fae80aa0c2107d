#pragma once

#include "fralim/square.hpp"

namespace fralim {

// n points in one orbit: the function steps i -> i+1 and wraps at the top.
Structure unary_cycle(int n);

// Least submodel containing the seeds, closed under the function.
Structure unary_generated_submodel(const Structure& m, const std::vector<int>& seeds);

CommutingSquare unary_free_amalgam(const Morphism& i, const Morphism& j);

// Pushout of an embedding f against an arbitrary function-preserving map g.
// The gluing never merges two points of b, so the b leg stays an embedding.
CommutingSquare unary_mixed_pushout(const Morphism& f, const Morphism& g);

std::vector<Structure> enumerate_unary(int n);

} // namespace fralim
