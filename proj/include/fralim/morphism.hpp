#pragma once

#include "fralim/structure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fralim {

// Arrow classes of the ambient category pair: embeddings form the smaller
// class, homomorphisms the larger one. Every embedding is a homomorphism.
enum class ArrowKind { embedding, hom };

std::string arrow_kind_name(ArrowKind k);

// map is a homomorphism dom -> cod of the given kind:
//   graph    : edges to edges (never collapses an edge; no loops exist)
//   linorder : weakly increasing
//   metric   : non-expansive
//   unary    : commutes with P
bool is_hom_map(const Structure& dom, const Structure& cod, const std::vector<int>& map);

// map is an embedding: injective, preserves and reflects the basic relations
// (isometric for metric spaces, strictly increasing for orders).
bool is_embedding_map(const Structure& dom, const Structure& cod, const std::vector<int>& map);

// A total map between two structures, tagged with its arrow class. The tag is
// validated on construction: requesting ArrowKind::embedding for a map that is
// merely a homomorphism throws std::invalid_argument.
class Morphism {
public:
    Morphism(StructureRef dom, StructureRef cod, std::vector<int> map, ArrowKind kind);

    static Morphism identity(StructureRef s);

    const Structure& dom() const { return *dom_; }
    const Structure& cod() const { return *cod_; }
    const StructureRef& dom_ref() const { return dom_; }
    const StructureRef& cod_ref() const { return cod_; }
    const std::vector<int>& map() const { return map_; }
    int operator()(int v) const { return map_.at(static_cast<size_t>(v)); }
    ArrowKind kind() const { return kind_; }
    bool is_embedding() const { return kind_ == ArrowKind::embedding; }

    // Same endpoints (structurally) and same underlying map. The kind tag is
    // not part of identity: it always reflects the strongest valid class when
    // arrows are built through the library.
    bool same_arrow(const Morphism& other) const;

    bool is_identity() const;
    bool is_surjective() const;

    std::string describe() const;

private:
    StructureRef dom_, cod_;
    std::vector<int> map_;
    ArrowKind kind_;
};

// g∘f; the composite is an embedding iff both factors are.
Morphism compose(const Morphism& g, const Morphism& f);

// Strongest valid tag for the map, embedding preferred. Throws if not even a
// homomorphism.
Morphism make_arrow(StructureRef dom, StructureRef cod, std::vector<int> map);

// All homomorphisms dom -> cod (odometer enumeration; desk scale only).
std::vector<Morphism> all_homs(const StructureRef& dom, const StructureRef& cod);
// All homomorphisms extending the partial assignment (-1 = free).
std::vector<Morphism> all_homs(const StructureRef& dom, const StructureRef& cod,
                               const std::vector<int>& partial);
// Number of homomorphisms extending the partial assignment; stops counting at
// limit, so the result is min(limit, true count).
int count_homs(const Structure& dom, const Structure& cod, const std::vector<int>& partial,
               int limit);
// All embeddings dom -> cod, via backtracking.
std::vector<Morphism> all_embeddings(const StructureRef& dom, const StructureRef& cod);
// First embedding extending the partial assignment (-1 = free), if any.
std::optional<std::vector<int>> find_embedding(const Structure& dom, const Structure& cod,
                                               const std::vector<int>& partial);
// First homomorphism extending the partial assignment, if any.
std::optional<std::vector<int>> find_hom(const Structure& dom, const Structure& cod,
                                         const std::vector<int>& partial);

} // namespace fralim
