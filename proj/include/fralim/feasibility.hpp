#pragma once

#include "fralim/rational.hpp"

#include <optional>
#include <vector>

namespace fralim {

// One row of a linear system: sum of coeffs[i] * x_i <= bound, or < bound
// when strict is set. Rows may carry fewer coefficients than the system has
// variables; missing entries are zero.
struct LinearConstraint {
    std::vector<Rat> coeffs;
    Rat bound;
    bool strict = false;
};

// Exact feasibility over the rationals, by Fourier-Motzkin elimination.
// Returns a satisfying point or nullopt. Back-substitution prefers attainable
// lower bounds, so returned points sit on the small side of the region.
std::optional<std::vector<Rat>> feasible_point(int nvars,
                                               const std::vector<LinearConstraint>& rows);

} // namespace fralim
