#pragma once

#include "fralim/category.hpp"
#include "fralim/sequence.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fralim {

// d(u,v) < threshold when strict, <= threshold otherwise. The two readings
// describe the same spaces but not the same positive formulas, and several
// verdicts below genuinely depend on which one is in force.
struct MetricFact {
    int u = 0, v = 0;
    Rat threshold;
    bool strict = false;
};

// A conjunction of positive atomic facts over variables 0..vars-1. Only the
// fact families matching the structure kind under discussion are populated.
class AtomicDiagram {
public:
    AtomicDiagram(int vars, std::vector<std::pair<int, int>> edges,
                  std::vector<std::pair<int, int>> order, std::vector<MetricFact> metric,
                  std::vector<std::pair<int, int>> unary);

    // Complete positive diagram of the listed (distinct) points of x, one
    // variable per point in order. Unary facts P(u) = v appear only when the
    // image lands inside the tuple; metric facts are the non-strict reading.
    static AtomicDiagram of_tuple(const Structure& x, const std::vector<int>& points);

    int vars() const { return vars_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<std::pair<int, int>>& order() const { return order_; } // u weakly below v
    const std::vector<MetricFact>& metric() const { return metric_; }
    const std::vector<std::pair<int, int>>& unary() const { return unary_; } // P(u) = v

    // assignment[i] is the x-point interpreting variable i
    bool satisfied_by(const Structure& x, const std::vector<int>& assignment) const;

    std::string describe() const;

private:
    int vars_;
    std::vector<std::pair<int, int>> edges_, order_;
    std::vector<MetricFact> metric_;
    std::vector<std::pair<int, int>> unary_;
};

// Outcome of a bounded injectivity search. A positive criterion verdict
// carries the completing arrow, already rechecked against the defining
// equation; negative verdicts carry the pair that refused to complete.
struct InjectivityVerdict {
    bool verdict = false;
    int depth_used = 0;
    int stage = -1;                            // codomain stage of a positive sequence check
    std::optional<Morphism> completion;        // positive: g with g∘f equal to the connector
    std::optional<Morphism> failed_embedding;  // negative: the K-arrow j
    std::optional<Morphism> failed_arrow;      // negative: the arrow that j cannot push through
    explicit operator bool() const { return verdict; }
};

// Stagewise criterion: X is injective for f: x_n -> y exactly when some
// L-arrow g: y -> x_m closes g∘f = x_n^m. Searches m from n up to depth
// (clamped to the sequence); sound in both directions at the depth reached.
InjectivityVerdict check_injectivity_criterion(const SequenceK& x, int n, const Morphism& f,
                                               int depth);

// Every K-arrow j with carriers within size_bound, against every hom from
// j's domain into x, must complete through j. The workhorse behind the
// retract characterizations; fails fast with the offending (j, f) pair.
InjectivityVerdict injectivity_battery(const CategoryPair& pair, const Structure& x,
                                       int size_bound);

struct HyperconvexResult {
    bool hyperconvex = true;
    std::vector<ClosedBall> balls;  // a violating family when the verdict is negative
    explicit operator bool() const { return hyperconvex; }
};

// No family of closed balls with radii in s (at most max_balls of them,
// default all of x) has pairwise-compatible radii yet empty intersection.
// Dense domains go through exact rational feasibility over escape-coordinate
// choices; generated domains grid over admissible values up to the diameter,
// beyond which larger radii never help a violation.
HyperconvexResult is_finitely_hyperconvex(const Structure& x, const RadiusDomain& s,
                                          int max_balls = -1);

// Cross-validates is_finitely_hyperconvex against a direct search for an
// unextendable one-point s-extension of a subspace of size <= size_bound,
// with both enumerations capped at the same bound. Returns whether the two
// verdicts agree.
bool hyperconvex_equals_injective(const Structure& x, const RadiusDomain& s, int size_bound);

struct AcWitness {
    std::vector<int> params;  // points of x
    Structure extension;      // class extension realizing the diagram
    AtomicDiagram diagram;    // over params followed by the extension's new points
};

struct AcResult {
    bool closed = true;
    int arity_bound = 0, extension_bound = 0;
    std::optional<AcWitness> witness;
    explicit operator bool() const { return closed; }
};

// Every parameter tuple of length <= arity_bound, whose positive diagram
// together with <= extension_bound fresh points is realized in some class
// extension of x, must be realized inside x. Exact at these bounds for
// graphs, linear orders and unary models; metric closedness is not
// enumerable this way and throws UnsupportedOperation.
AcResult is_algebraically_closed(const CategoryPair& pair, const Structure& x, int arity_bound,
                                 int extension_bound);

struct MixedAmalgamationVerdict {
    bool holds = true;
    std::optional<Span> witness;  // left leg the embedding, right leg the hom
    explicit operator bool() const { return holds; }
};

// Exhaustive mixed amalgamation over spans with carriers within size_bound,
// cut down to primitive K-legs against surjective L-legs; completions are
// searched over class cospans no larger than the glued carriers. Primitive
// means one extra point, except for unary models where one generator drags
// its whole orbit along.
MixedAmalgamationVerdict check_mixed_amalgamation(const CategoryPair& pair, int size_bound);

struct HensonWitness {
    Structure s;         // n-1 isolated vertices
    Structure t;         // s plus one dominating vertex
    Morphism inclusion;  // s into t, the embedding leg
    Morphism collapse;   // s onto the complete graph K_{n-1}, the hom leg
};

// The span certifying that clique-free graphs fail mixed amalgamation: any
// hom extension of the collapse would close the forbidden clique. Requires
// n > 2.
HensonWitness henson_witness(int n);

struct HomHomResult {
    bool homogeneous = true;
    std::optional<Morphism> partial;  // a substructure map with no endomorphism extension
    explicit operator bool() const { return homogeneous; }
};

// Every hom between substructures of size <= sub_bound extends to an
// endomorphism. Complete for a finite structure; the sequence form checks
// extendability of stage-depth substructure maps across the visible stages.
HomHomResult is_hom_homogeneous(const Structure& x, int sub_bound);
HomHomResult is_hom_homogeneous(const SequenceK& x, int sub_bound, int depth);

// All K-arrows j with carriers within arrow_size_bound, one per arrow
// isomorphism class, such that x is j-injective and receives at least one
// arrow from j's domain. Closed under composition and contains the
// identities of every admissible object.
std::vector<Morphism> compute_injective_subcategory(const CategoryPair& pair, const Structure& x,
                                                    int arrow_size_bound);
std::vector<Morphism> compute_injective_subcategory(const CategoryPair& pair, const SequenceK& x,
                                                    int arrow_size_bound, int depth);

} // namespace fralim
