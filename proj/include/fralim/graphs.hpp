#pragma once

#include "fralim/square.hpp"

#include <vector>

namespace fralim {

Structure complete_graph(int n);
Structure path_graph(int n);

// Free amalgam of two graph embeddings over a shared apex: glue along the
// apex, no cross edges. Carrier convention: a's ids survive, b's new points
// get fresh ids in ascending b order. Both cospan legs are embeddings.
CommutingSquare graph_free_amalgam(const Morphism& i, const Morphism& j);

// Pushout of an embedding f against an arbitrary homomorphism g in the
// homomorphism category. Here b's ids survive and a's new points are fresh,
// so the b leg is an identity inclusion. If forbidden_clique > 0 the result
// must stay clique-free; a violating clique raises UnsupportedOperation.
CommutingSquare graph_mixed_pushout(const Morphism& f, const Morphism& g,
                                    int forbidden_clique = 0);

// All graphs on exactly n vertices, one per isomorphism class, in canonical
// form. forbidden_clique > 0 keeps only graphs with no clique of that size.
std::vector<Structure> enumerate_graphs(int n, int forbidden_clique = 0);

} // namespace fralim
