#pragma once

#include "fralim/sequence.hpp"

#include <optional>

namespace fralim {

// A pending or completed absorption task. F1 entries ask for some stage to
// contain the object; F2 entries ask for a stage completing the extension
// over its source stage.
struct F1Entry {
    StructureRef object;
    int enqueued_step = -1;
    int completed_step = -1;
    int stage = -1;
    std::optional<Morphism> embedding; // object -> u_stage
};

struct F2Entry {
    int stage_n = -1;
    Morphism extension; // u_n -> y, a one-point class embedding
    int enqueued_step = -1;
    int completed_step = -1;
    int stage_m = -1;
    std::optional<Morphism> completion; // g: y -> u_m with g . extension = u_n^m
};

struct FraisseRun;

class TaskLedger {
public:
    const std::vector<F1Entry>& f1() const { return f1_; }
    const std::vector<F2Entry>& f2() const { return f2_; }
    int pending() const;

    // least completed F2 witness for an isomorphic copy of the task, if any
    std::optional<F2Entry> find_f2(int stage_n, const Morphism& extension) const;

private:
    std::vector<F1Entry> f1_;
    std::vector<F2Entry> f2_;
    friend FraisseRun build_fraisse_sequence(const CategoryPair&, int, unsigned long long);
};

struct FraisseRun {
    SequenceK sequence;
    TaskLedger ledger;
};

// Grows a sequence prefix by fair dovetailing: objects and one-point
// extensions are enqueued in size order as the frontier widens, each step
// serves the oldest pending task (the seed may swap the two oldest). Tasks
// already witnessed by the current prefix are closed without extending it.
FraisseRun build_fraisse_sequence(const CategoryPair& pair, int steps,
                                  unsigned long long seed);

// Least stage admitting an embedding of x, by exhaustive search.
std::optional<std::pair<int, Morphism>> check_F1(const SequenceK& u, const Structure& x);

// Least m >= n admitting g with g . f = u_n^m, f an embedding out of stage n.
std::optional<std::pair<int, Morphism>> check_F2(const SequenceK& u, int n, const Morphism& f);

} // namespace fralim
