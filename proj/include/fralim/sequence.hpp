#pragma once

#include "fralim/category.hpp"

namespace fralim {

// Finite prefix of an ω-chain of embeddings. Immutable; extension returns a
// new value sharing the old stages.
class SequenceK {
public:
    SequenceK(std::vector<StructureRef> stages, std::vector<Morphism> connectors);
    static SequenceK constant(StructureRef x, int depth);
    static SequenceK single(StructureRef x) { return constant(std::move(x), 1); }

    int depth() const { return static_cast<int>(stages_.size()); }
    const Structure& stage(int n) const;
    const StructureRef& stage_ref(int n) const;
    const Morphism& connector(int n) const; // stage n -> stage n+1
    Morphism between(int n, int m) const;   // composite stage n -> stage m

    SequenceK extended(const Morphism& next) const; // next: last stage -> new stage
    SequenceK prefix(int depth) const;
    SequenceK suffix(int from) const;

    bool same_prefix(const SequenceK& other, int depth) const;

    std::string describe() const;

private:
    std::vector<StructureRef> stages_;
    std::vector<Morphism> connect_;
};

// Arrow between sequence prefixes: a stage reindexing psi (weakly increasing)
// plus one component per domain stage, natural against the connectors. The
// arrow is all-K when every component is an embedding.
class SeqMorphism {
public:
    SeqMorphism(SequenceK dom, SequenceK cod, std::vector<int> psi,
                std::vector<Morphism> components);
    static SeqMorphism identity(const SequenceK& x);

    const SequenceK& dom() const { return dom_; }
    const SequenceK& cod() const { return cod_; }
    int depth() const { return static_cast<int>(psi_.size()); }
    int psi(int n) const;
    const Morphism& component(int n) const;
    bool all_K() const { return all_k_; }

    std::string describe() const;

private:
    SequenceK dom_, cod_;
    std::vector<int> psi_;
    std::vector<Morphism> comps_;
    bool all_k_ = true;
};

SeqMorphism compose(const SeqMorphism& g, const SeqMorphism& f);

// The arrow from stage n into the whole sequence, represented by its class of
// composites into later stages.
class StageInjection {
public:
    StageInjection(SequenceK seq, int stage);
    const SequenceK& seq() const { return seq_; }
    int stage() const { return stage_; }
    Morphism at(int m) const; // composite into stage m
    // constant sequence on stage n -> seq, identity components
    SeqMorphism as_arrow(int depth) const;

private:
    SequenceK seq_;
    int stage_;
};

// Arrow equivalence at finite depth: the two transformations agree after
// pushing both components of every stage below the depth into the later of
// their two target stages. Connectors are embeddings, so agreement there
// settles agreement everywhere beyond. The verdict is relative to the depth
// actually available.
bool seq_equivalent(const SeqMorphism& t0, const SeqMorphism& t1, int depth);

// Factors an arrow from a one-object sequence through the least stage of its
// codomain carrying the whole image.
std::pair<int, Morphism> factor_through_stage(const SeqMorphism& f);

// The isomorphism pair between a sequence and its cofinal subsequence along
// strictly increasing indices: into has identity components, back pushes each
// stage to the first index at or beyond it. back only covers stages up to the
// last index.
struct CofinalIso {
    SequenceK sub;
    SeqMorphism into; // sub -> X
    SeqMorphism back; // X (prefix) -> sub
};
CofinalIso cofinal_subsequence_iso(const SequenceK& x, const std::vector<int>& indices);

struct SeqAmalgam {
    SequenceK limit;
    SeqMorphism from_left;  // A -> W
    SeqMorphism from_right; // B -> W
};

// Stagewise amalgamation of two arrows out of a single object: one amalgam
// seeds the corner, then the remaining stages of both sides are absorbed
// alternately. Identity connectors are absorbed without growing the corner.
SeqAmalgam sequence_amalgamation(const CategoryPair& pair, const SeqMorphism& f,
                                 const SeqMorphism& g);

} // namespace fralim
