#include "fralim/feasibility.hpp"

#include "doctest.h"

#include <random>

using namespace fralim;

namespace {

bool satisfies(const std::vector<Rat>& x, const std::vector<LinearConstraint>& rows) {
    for (const auto& r : rows) {
        Rat lhs(0);
        for (size_t i = 0; i < r.coeffs.size(); ++i) lhs += r.coeffs[i] * x[i];
        if (lhs > r.bound || (r.strict && lhs == r.bound)) return false;
    }
    return true;
}

LinearConstraint row(std::vector<Rat> c, Rat b, bool strict = false) {
    return LinearConstraint{std::move(c), b, strict};
}

} // namespace

TEST_CASE("intervals resolve to attainable lower bounds") {
    // x >= 1 and x <= 3
    auto p = feasible_point(1, {row({Rat(-1)}, Rat(-1)), row({Rat(1)}, Rat(3))});
    REQUIRE(p);
    CHECK((*p)[0] == Rat(1));

    // pinched to a point
    p = feasible_point(1, {row({Rat(-1)}, Rat(-1)), row({Rat(1)}, Rat(1))});
    REQUIRE(p);
    CHECK((*p)[0] == Rat(1));
}

TEST_CASE("strictness separates touching bounds") {
    // x < 1 and x >= 1
    CHECK(!feasible_point(1, {row({Rat(1)}, Rat(1), true), row({Rat(-1)}, Rat(-1))}));
    // x <= 1 and x > 1
    CHECK(!feasible_point(1, {row({Rat(1)}, Rat(1)), row({Rat(-1)}, Rat(-1), true)}));
    // open interval picks an interior rational
    auto p = feasible_point(1, {row({Rat(-1)}, Rat(-1), true), row({Rat(1)}, Rat(2), true)});
    REQUIRE(p);
    CHECK((*p)[0] == Rat(3, 2));
}

TEST_CASE("variable-free residue decides feasibility") {
    CHECK(feasible_point(0, {row({}, Rat(0))}));
    CHECK(!feasible_point(0, {row({}, Rat(0), true)}));
    CHECK(!feasible_point(0, {row({}, Rat(-1))}));
    auto p = feasible_point(2, {});
    REQUIRE(p);
    CHECK(p->size() == 2);
}

TEST_CASE("the two-radius ball system lands on unit radii") {
    // r0 + r1 >= 2, r_i < 2, r_i > 0
    std::vector<LinearConstraint> rows = {
        row({Rat(-1), Rat(-1)}, Rat(-2)),
        row({Rat(1), Rat(0)}, Rat(2), true),
        row({Rat(0), Rat(1)}, Rat(2), true),
        row({Rat(-1), Rat(0)}, Rat(0), true),
        row({Rat(0), Rat(-1)}, Rat(0), true),
    };
    auto p = feasible_point(2, rows);
    REQUIRE(p);
    CHECK((*p)[0] == Rat(1));
    CHECK((*p)[1] == Rat(1));
    CHECK(satisfies(*p, rows));
}

TEST_CASE("equality pairs propagate through elimination") {
    // x + y = 3, y + z = 5, x >= 2 forces x = 2 under the lower-bound bias
    std::vector<LinearConstraint> rows = {
        row({Rat(1), Rat(1), Rat(0)}, Rat(3)),  row({Rat(-1), Rat(-1), Rat(0)}, Rat(-3)),
        row({Rat(0), Rat(1), Rat(1)}, Rat(5)),  row({Rat(0), Rat(-1), Rat(-1)}, Rat(-5)),
        row({Rat(-1), Rat(0), Rat(0)}, Rat(-2)),
    };
    auto p = feasible_point(3, rows);
    REQUIRE(p);
    CHECK((*p)[0] == Rat(2));
    CHECK((*p)[1] == Rat(1));
    CHECK((*p)[2] == Rat(4));
}

TEST_CASE("planted systems stay feasible and contradictions are caught") {
    std::mt19937 rng(20260819u);
    std::uniform_int_distribution<int> small(-3, 3);
    std::uniform_int_distribution<int> slack(0, 4);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 4);
        std::vector<Rat> planted;
        for (int i = 0; i < n; ++i) planted.push_back(Rat(small(rng), 1 + (rng() % 3)));
        std::vector<LinearConstraint> rows;
        for (int k = 0; k < n + 3; ++k) {
            LinearConstraint r;
            Rat lhs(0);
            for (int i = 0; i < n; ++i) {
                r.coeffs.push_back(Rat(small(rng)));
                lhs += r.coeffs.back() * planted[static_cast<size_t>(i)];
            }
            int s = slack(rng);
            r.bound = lhs + Rat(s);
            r.strict = s > 0 && (rng() & 1);
            rows.push_back(std::move(r));
        }
        auto p = feasible_point(n, rows);
        REQUIRE(p);
        CHECK(satisfies(*p, rows));

        // negate one row strictly: the closed and open half-spaces are disjoint
        auto bad = rows;
        LinearConstraint flip = rows[0];
        for (auto& c : flip.coeffs) c = -c;
        flip.bound = -rows[0].bound;
        flip.strict = true;
        bad.push_back(flip);
        CHECK(!feasible_point(n, bad));
    }
}
