#pragma once

#include "fralim/graphs.hpp"
#include "fralim/linorder.hpp"
#include "fralim/metric.hpp"
#include "fralim/unary.hpp"

#include <optional>

namespace fralim {

// One of the four concrete embedding/homomorphism category pairs. Graphs may
// exclude a clique size (0 = no restriction); metric pairs carry the domain
// of admissible distance values.
class CategoryPair {
public:
    static CategoryPair graphs(int forbidden_clique = 0);
    static CategoryPair linorders();
    static CategoryPair metrics(RadiusDomain dom);
    static CategoryPair unary_models();

    StructKind kind() const { return kind_; }
    int forbidden_clique() const { return forbidden_clique_; }
    const RadiusDomain& domain() const; // metric pairs only

    // Linear orders complete embedding/hom spans but the completion is never
    // universal, so they are the one pair without mixed pushouts.
    bool has_mixed_pushouts() const { return kind_ != StructKind::linorder; }

    bool admits(const Structure& x) const;
    bool is_K(const Morphism& m) const;
    bool is_L(const Morphism& m) const;

    // One object per isomorphism class. Metric pairs need an explicit
    // diameter bound; the other kinds ignore it.
    std::vector<Structure> objects(int size) const;
    std::vector<Structure> objects(int size, const Rat& diameter_bound) const;

    // Every embedding of x into a structure with exactly one extra point, as
    // identity inclusions. Metric pairs draw the new distances from the
    // domain up to metric_bound.
    std::vector<Morphism> one_point_extensions(const StructureRef& x) const;
    std::vector<Morphism> one_point_extensions(const StructureRef& x,
                                               const Rat& metric_bound) const;

    std::string describe() const;

private:
    CategoryPair(StructKind k, int fc, std::optional<RadiusDomain> dom);

    StructKind kind_;
    int forbidden_clique_ = 0;
    std::optional<RadiusDomain> dom_;
};

// Completes a span of embeddings to a commuting square of embeddings, the
// free amalgam of the concrete kind.
CommutingSquare amalgamate(const CategoryPair& pair, const Morphism& i, const Morphism& j);

// Completes an embedding f against a homomorphism g so that the f side comes
// back as a homomorphism and the g side as an embedding, and the square is a
// pushout in the homomorphism category. Throws UnsupportedOperation for
// linear orders, and for clique-bounded graphs when the gluing would force a
// forbidden clique.
CommutingSquare mixed_pushout(const CategoryPair& pair, const Morphism& f, const Morphism& g);

struct PushoutReport {
    bool ok = true;
    std::string detail; // empty when ok
    std::optional<Structure> target;
    std::optional<Morphism> cocone_left, cocone_right;
    int mediating_count = -1; // filled on failure: 0 or 2 (2 meaning "several")
    explicit operator bool() const { return ok; }
};

// Brute-force universal property check: every commuting cocone out of the
// square's span into a class object with at most size_bound points must admit
// exactly one mediating homomorphism from the corner. Exhaustive per size for
// graphs, orders and unary models. Metric targets run over the domain values
// up to twice the largest distance in the square (longer target distances
// never constrain a mediating map); for a dense domain the value grid is the
// square's own distances closed under one pairwise sum, a documented bounded
// approximation.
PushoutReport verify_pushout_universal(const CategoryPair& pair, const CommutingSquare& square,
                                       int size_bound);

// Splits an embedding into a chain of primitive steps: one-point extensions,
// except for unary models where each step adjoins one generator together with
// its orbit. The pieces compose to f exactly; identities yield the empty list
// and other isomorphisms come back whole.
std::vector<Morphism> decompose_into_primitives(const CategoryPair& pair, const Morphism& f);

} // namespace fralim
