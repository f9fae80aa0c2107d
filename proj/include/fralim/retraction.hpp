#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fralim/fraisse.hpp"
#include "fralim/injectivity.hpp"

namespace fralim {

// An arrow into a sequence, factored through a finite stage.
struct StageArrow {
    int stage = 0;
    Morphism arrow;
};

// Compose with the connectors up to stage m >= f.stage.
StageArrow push_to(const SequenceK& seq, const StageArrow& f, int m);

// The ambient sequence prefix ran out; callers recover by growing it and
// retrying. Target-side exhaustion stays plain DepthExhausted.
class AmbientExhausted : public DepthExhausted {
public:
    using DepthExhausted::DepthExhausted;
};

// Extension requests against a fixed target sequence: complete(i, f) answers
// with g such that g composed with i equals f pushed to g's stage. Answers
// are rechecked before they leave, so a buggy callback fails loudly here
// instead of corrupting a matrix.
class InjectivityOracle {
public:
    using Callback =
        std::function<std::optional<StageArrow>(const Morphism&, const StageArrow&)>;

    InjectivityOracle(SequenceK target, Callback fn);

    const SequenceK& target() const { return target_; }
    std::optional<StageArrow> complete(const Morphism& i, const StageArrow& f) const;

private:
    SequenceK target_;
    Callback fn_;
};

// Sweeps stages f.stage..hi for a homomorphism completion with the image of
// f pinned; answers at the least stage that works.
InjectivityOracle criterion_oracle(const SequenceK& target, int hi);

// Answers f composed with a left inverse of i, staying at f's stage. Order
// embeddings always have one; elsewhere a missing inverse throws with the
// witness arrow.
InjectivityOracle left_inverse_oracle(const CategoryPair& pair, const SequenceK& target);

struct ExtensionStep {
    Morphism k;    // a -> w
    Morphism ell;  // b -> w
    StageArrow H;  // w -> target, H.k = F and H.ell = G after pushing
};

// One amalgamated extension: a span i: c -> a, j: c -> b plus target arrows
// F (out of a) and G (out of b) agreeing over c come back as a corner w with
// both triangles commuting exactly. The corner is the free amalgam, or for
// orders the separation-aware compatible amalgam.
ExtensionStep amalgamated_extension_step(const CategoryPair& pair, const Morphism& i,
                                         const Morphism& j, const StageArrow& F,
                                         const StageArrow& G, const InjectivityOracle& oracle);

struct MatrixRow {
    std::vector<StructureRef> entries;   // w_{r,0} .. w_{r,r+1}
    std::vector<Morphism> horizontal;    // h_{r,j}: w_{r,j} -> w_{r,j+1}, the last lands in the ambient
    std::vector<Morphism> vertical;      // w_{r-1,j} -> w_{r,j}, j = 0..r; empty in row 0
    std::vector<StageArrow> components;  // F_{r,j}: w_{r,j} -> target
    int ell = 0;                         // ambient stage of the row's last entry
};

// Triangular grid interpolating between a source sequence (column 0) and a
// cofinal run up the ambient (the diagonal), every cell carrying an arrow to
// the target. Row r reads x_r -> w_{r,1} -> ... -> w_{r,r} -> u_{ell(r)} with
// ell strictly increasing.
class TriangularMatrix {
public:
    TriangularMatrix(CategoryPair pair, SequenceK source, SequenceK ambient, SequenceK target,
                     std::vector<MatrixRow> rows);

    const CategoryPair& pair() const { return pair_; }
    const SequenceK& source() const { return source_; }
    const SequenceK& ambient() const { return ambient_; }
    const SequenceK& target() const { return target_; }

    int rows() const { return static_cast<int>(rows_.size()); }
    const MatrixRow& row(int i) const;
    const Structure& entry(int i, int j) const;
    const Morphism& horizontal(int i, int j) const;  // j <= i
    const Morphism& vertical(int i, int j) const;    // between rows i and i+1, j <= i+1
    const StageArrow& component(int i, int j) const;
    int ell(int i) const;

    Morphism row_composite(int i) const;  // x_i -> u_{ell(i)}

    // Exact recheck of every unit square, hop triangle, and target relation.
    bool verify() const;

private:
    CategoryPair pair_;
    SequenceK source_, ambient_, target_;
    std::vector<MatrixRow> rows_;
};

// Builds the grid for F: X -> A row by row: the first ambient stage absorbing
// x_0 starts it, inner squares come from amalgamated_extension_step, and each
// diagonal hop is the least F2 witness extending the previous ambient stage.
// Ambient shortage throws AmbientExhausted naming the stuck task; a refused
// oracle completion throws DepthExhausted.
TriangularMatrix build_triangular_matrix(const CategoryPair& pair, const SequenceK& x,
                                         const SequenceK& u, const SeqMorphism& F,
                                         const InjectivityOracle& oracle, int rows);

struct RetractionPair {
    SeqMorphism J;  // all components K-arrows
    SeqMorphism R;
    int verified_depth = 0;
};

// Runs the matrix on the identity of x's prefix and reads off J (row
// composites) and R (diagonal components pulled back along the ambient).
// The round trip R after J is checked against the identity to the stated
// depth before returning.
RetractionPair build_retraction(const CategoryPair& pair, const SequenceK& x, const SequenceK& u,
                                const InjectivityOracle& oracle, int depth);

struct RetractionOutcome {
    std::optional<RetractionPair> retraction;
    std::optional<Morphism> refusal_embedding;  // set when the battery refuses up front
    std::optional<Morphism> refusal_arrow;
    int ambient_steps = 0;  // generic steps spent growing the ambient
    explicit operator bool() const { return retraction.has_value(); }
};

// End-to-end driver: refuses constant sources that fail the injectivity
// battery at battery_bound, otherwise grows a generic ambient sequence
// (doubling steps up to step_budget) until the matrix fits.
RetractionOutcome build_retraction_driver(const CategoryPair& pair, const SequenceK& x, int depth,
                                          unsigned long long seed, int step_budget,
                                          int battery_bound = 3);

struct PushoutChain {
    std::vector<SequenceK> columns;   // W^0 = source prefix, ..., W^rows = the diagonal
    std::vector<SeqMorphism> arrows;  // W^n -> W^{n+1}, identity stages then a horizontal
};

// Reads the matrix columns as a chain of sequences when the kind has mixed
// pushouts, certifying each unit square's universal property up to
// certify_bound first. Column n agrees with the diagonal on every stage
// below n.
PushoutChain pushout_chain_to_limit(const TriangularMatrix& m, int certify_bound = 4);

// When every K-arrow in a bounded fragment is left-invertible, a retraction
// needs no stage search: the oracle answers in place. Throws
// UnsupportedOperation with a witness when some embedding has no inverse.
RetractionPair left_invertible_shortcut(const CategoryPair& pair, const SequenceK& x,
                                        const SequenceK& u, int depth);

}  // namespace fralim
