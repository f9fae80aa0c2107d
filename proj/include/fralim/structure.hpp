#pragma once

#include "fralim/rational.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace fralim {

enum class StructKind { graph, linorder, metric, unary };

std::string kind_name(StructKind k);

// One finite model over carrier {0, ..., size-1}.
//   graph    : irreflexive symmetric edge relation
//   linorder : total order given by a rank permutation (ranks[i] = position of i)
//   metric   : exact rational distances satisfying the metric axioms
//   unary    : one total unary function P
// Values are immutable once constructed; factories validate the axioms eagerly.
class Structure {
public:
    static Structure graph(int n, std::vector<std::pair<int, int>> edges);
    static Structure linorder(std::vector<int> ranks);
    static Structure metric(std::vector<std::vector<Rat>> dist);
    static Structure unary(std::vector<int> image);
    static Structure empty(StructKind kind); // invalid for metric (class excludes the empty space)

    StructKind kind() const { return kind_; }
    int size() const { return size_; }

    bool adjacent(int u, int v) const;
    const std::vector<std::pair<int, int>>& edges() const;

    int rank(int v) const;
    const std::vector<int>& ranks() const;
    // carrier ids sorted by rank, least first
    std::vector<int> by_rank() const;

    const Rat& dist(int u, int v) const;
    Rat diameter() const;

    int p(int v) const;
    const std::vector<int>& p_table() const;

    // Induced substructure on the given carrier subset (ids renumbered by
    // ascending original id). For unary models the subset must be P-closed.
    Structure induced(const std::vector<int>& points) const;

    // Structure obtained by relabelling point i as perm[i].
    Structure relabel(const std::vector<int>& perm) const;

    // Lexicographic comparison of the flattened relational data; only defined
    // between structures of equal kind and size.
    std::strong_ordering compare_data(const Structure& other) const;

    bool operator==(const Structure& other) const;

    std::string describe() const;

private:
    Structure() = default;

    StructKind kind_ = StructKind::graph;
    int size_ = 0;
    std::vector<std::pair<int, int>> edges_; // graph: sorted, u < v
    std::vector<uint64_t> adj_;              // graph: derived n*n bit matrix
    std::vector<int> ranks_;                 // linorder
    std::vector<Rat> dist_;                  // metric: row-major n*n
    std::vector<int> p_;                     // unary
};

using StructureRef = std::shared_ptr<const Structure>;

inline StructureRef make_ref(Structure s) {
    return std::make_shared<const Structure>(std::move(s));
}

// Lexicographically least relabelling under all carrier permutations.
// Branch-and-bound; exact, intended for desk-scale carriers.
Structure canonical_form(const Structure& s);
// Canonical form plus one witnessing permutation (new id of point i).
std::pair<Structure, std::vector<int>> canonical_form_with_perm(const Structure& s);

bool isomorphic(const Structure& a, const Structure& b);

// True when forbidding K_n: some n-subset of the carrier is a clique.
bool has_clique(const Structure& g, int n);

// Smallest P-closed subset containing seeds, as sorted carrier ids.
std::vector<int> unary_closure(const Structure& m, const std::vector<int>& seeds);

} // namespace fralim
