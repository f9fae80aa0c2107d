#pragma once

#include "fralim/square.hpp"

#include <optional>
#include <vector>

namespace fralim {

struct ClosedBall {
    int center;
    Rat radius;
};

// The set S of admissible positive distance values: either all positive
// rationals or the additive closure of a finite generator set, optionally
// truncated at a cap (sums beyond the cap collapse onto it).
class RadiusDomain {
public:
    static RadiusDomain all_rationals(std::optional<Rat> cap = {});
    static RadiusDomain generated(std::vector<Rat> gens, std::optional<Rat> cap = {});
    static RadiusDomain integers(std::optional<Rat> cap = {}) { return generated({Rat(1)}, cap); }

    bool dense() const { return dense_; }
    const std::optional<Rat>& cap() const { return cap_; }
    const std::vector<Rat>& generators() const { return gens_; }

    bool contains(const Rat& r) const;
    // all values up to the bound, ascending; throws for a dense domain
    std::vector<Rat> values_up_to(const Rat& bound) const;
    // least admissible value >= r (any positive value when r = 0)
    Rat least_value_at_least(const Rat& r) const;

    bool admits(const Structure& x) const; // every distance of x lies in S

    std::string describe() const;

private:
    RadiusDomain() = default;
    bool dense_ = false;
    std::vector<Rat> gens_;
    std::optional<Rat> cap_;
};

struct MetricExtendResult {
    StructureRef space;  // Y with the new point appended, or Y itself if identified
    Morphism extended;   // X∪{a} -> space
    Morphism include;    // Y -> space, identity inclusion
    int identified = -1; // id of the Y point the new point collapsed onto
};

// Pushes a one-point metric extension of X through a non-expansive map
// f: X -> Y. ext carries X's points (same ids, same distances) plus the new
// point as its last id. New distances: d(y,b) = min over x of d(y,f(x)) +
// d(x,a), capped when a cap is given.
MetricExtendResult metric_pushout_extend(const Morphism& f, const Structure& ext,
                                         std::optional<Rat> cap = {});

struct BallExtensionResult {
    StructureRef space;
    int identified = -1;
};

// Adjoins one point meeting every listed closed ball: d(a,x) = min over i of
// d(x, center_i) + radius_i. Requires pairwise d(c_i,c_j) <= r_i + r_j; the
// violating pair is reported otherwise.
BallExtensionResult one_point_ball_extension(const Structure& x,
                                             const std::vector<ClosedBall>& balls);

// d_C(x,y) = min(d(x,y), C).
Structure truncate_metric(const Structure& x, const Rat& c);

// Amalgam of two isometric embeddings, distances through the apex.
CommutingSquare metric_free_amalgam(const Morphism& i, const Morphism& j,
                                    const RadiusDomain& dom);

struct MetricJoin {
    StructureRef space;
    Morphism left, right;
};

// Side-by-side join of two spaces (metric spaces are never empty, so there is
// no span to amalgamate over): constant cross distance, the least admissible
// value covering both diameters.
MetricJoin metric_join(StructureRef a, StructureRef b, const RadiusDomain& dom);

// Pushout of an isometric embedding f against a non-expansive g; the span
// apex must be nonempty.
CommutingSquare metric_mixed_pushout(const Morphism& f, const Morphism& g,
                                     std::optional<Rat> cap = {});

// All spaces on exactly n points with distances in the domain, bounded by
// diameter_bound, one per isometry class.
std::vector<Structure> enumerate_metrics(int n, const RadiusDomain& dom,
                                         const Rat& diameter_bound);
// Same, over an explicit list of admissible distance values.
std::vector<Structure> enumerate_metrics(int n, const std::vector<Rat>& values);

} // namespace fralim
