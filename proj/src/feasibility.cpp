#include "fralim/feasibility.hpp"

#include <stdexcept>
#include <utility>

namespace fralim {

namespace {

Rat coeff(const LinearConstraint& r, int v) {
    return v < static_cast<int>(r.coeffs.size()) ? r.coeffs[static_cast<size_t>(v)] : Rat(0);
}

// (-l) * up + u * lo with u = up.coeffs[v] > 0 and l = lo.coeffs[v] < 0; the
// x_v terms cancel and the positive combination keeps the inequality.
LinearConstraint combine(const LinearConstraint& up, const LinearConstraint& lo, int v) {
    Rat u = coeff(up, v), l = coeff(lo, v);
    LinearConstraint out;
    out.coeffs.assign(static_cast<size_t>(v), Rat(0));
    for (int i = 0; i < v; ++i)
        out.coeffs[static_cast<size_t>(i)] = (-l) * coeff(up, i) + u * coeff(lo, i);
    out.bound = (-l) * up.bound + u * lo.bound;
    out.strict = up.strict || lo.strict;
    return out;
}

struct Bound {
    Rat value;
    bool strict = false;
    bool present = false;
};

void tighten_lower(Bound& b, const Rat& v, bool strict) {
    if (!b.present || v > b.value || (v == b.value && strict && !b.strict)) {
        b.value = v;
        b.strict = strict;
        b.present = true;
    }
}

void tighten_upper(Bound& b, const Rat& v, bool strict) {
    if (!b.present || v < b.value || (v == b.value && strict && !b.strict)) {
        b.value = v;
        b.strict = strict;
        b.present = true;
    }
}

// Interval pick biased toward the lower end: an attainable lower bound is
// returned verbatim, which keeps witness radii minimal.
std::optional<Rat> pick(const Bound& lo, const Bound& hi) {
    if (lo.present && hi.present) {
        if (lo.value > hi.value) return std::nullopt;
        if (lo.value == hi.value) {
            if (lo.strict || hi.strict) return std::nullopt;
            return lo.value;
        }
        if (!lo.strict) return lo.value;
        return (lo.value + hi.value) / Rat(2);
    }
    if (lo.present) return lo.strict ? lo.value + Rat(1) : lo.value;
    if (hi.present) return hi.strict ? hi.value - Rat(1) : hi.value;
    return Rat(0);
}

} // namespace

std::optional<std::vector<Rat>> feasible_point(int nvars,
                                               const std::vector<LinearConstraint>& rows) {
    if (nvars < 0) throw std::invalid_argument("feasible_point: negative variable count");
    for (const auto& r : rows)
        if (static_cast<int>(r.coeffs.size()) > nvars)
            throw std::invalid_argument("feasible_point: constraint row wider than the system");

    // levels[v] keeps the rows that still mention x_v when it is eliminated;
    // each such row mentions variables <= v only.
    std::vector<std::vector<LinearConstraint>> levels(static_cast<size_t>(nvars));
    std::vector<LinearConstraint> work = rows;
    for (int v = nvars - 1; v >= 0; --v) {
        std::vector<LinearConstraint> uppers, lowers, rest;
        for (auto& r : work) {
            Rat c = coeff(r, v);
            if (c > Rat(0))
                uppers.push_back(std::move(r));
            else if (c < Rat(0))
                lowers.push_back(std::move(r));
            else
                rest.push_back(std::move(r));
        }
        work = std::move(rest);
        for (const auto& up : uppers)
            for (const auto& lo : lowers) work.push_back(combine(up, lo, v));
        levels[static_cast<size_t>(v)] = std::move(uppers);
        for (auto& r : lowers) levels[static_cast<size_t>(v)].push_back(std::move(r));
    }

    for (const auto& r : work)
        if (r.bound < Rat(0) || (r.strict && r.bound == Rat(0))) return std::nullopt;

    std::vector<Rat> point(static_cast<size_t>(nvars), Rat(0));
    for (int v = 0; v < nvars; ++v) {
        Bound lo, hi;
        for (const auto& r : levels[static_cast<size_t>(v)]) {
            Rat c = coeff(r, v);
            Rat residual = r.bound;
            for (int i = 0; i < v; ++i) residual -= coeff(r, i) * point[static_cast<size_t>(i)];
            if (c > Rat(0))
                tighten_upper(hi, residual / c, r.strict);
            else
                tighten_lower(lo, residual / c, r.strict);
        }
        auto x = pick(lo, hi);
        // elimination already certified every pairwise combination
        if (!x) throw std::logic_error("feasible_point: empty interval after elimination");
        point[static_cast<size_t>(v)] = *x;
    }
    return point;
}

} // namespace fralim
