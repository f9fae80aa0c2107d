#include "doctest.h"

#include "fralim/rational.hpp"
#include "fralim/structure.hpp"

#include <stdexcept>

using namespace fralim;

TEST_CASE("rational parse and format") {
    CHECK(parse_rational("3/4") == rat(3, 4));
    CHECK(parse_rational("-2") == rat(-2));
    CHECK(parse_rational("6/4") == rat(3, 2));
    CHECK(to_string(rat(5)) == "5");
    CHECK(to_string(rat(7, 2)) == "7/2");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK(rat_ceil(rat(7, 2)) == rat(4));
    CHECK(rat_ceil(rat(-7, 2)) == rat(-3));
    CHECK(rat_ceil(rat(4)) == rat(4));
}

TEST_CASE("graph construction and validation") {
    auto g = Structure::graph(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(g.size() == 4);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 0));
    CHECK_FALSE(g.adjacent(0, 2));
    CHECK(g.edges().size() == 3);

    CHECK_THROWS_AS(Structure::graph(2, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Structure::graph(2, {{0, 2}}), std::invalid_argument);
    // duplicate edges collapse
    auto h = Structure::graph(2, {{1, 0}, {0, 1}});
    CHECK(h.edges().size() == 1);
}

TEST_CASE("linorder construction and validation") {
    auto o = Structure::linorder({2, 0, 1});
    CHECK(o.rank(0) == 2);
    CHECK(o.by_rank() == std::vector<int>{1, 2, 0});
    CHECK_THROWS_AS(Structure::linorder({0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Structure::linorder({0, 3, 1}), std::invalid_argument);
}

TEST_CASE("metric construction and validation") {
    auto m = Structure::metric({{rat(0), rat(1), rat(2)},
                                {rat(1), rat(0), rat(1)},
                                {rat(2), rat(1), rat(0)}});
    CHECK(m.dist(0, 2) == rat(2));
    CHECK(m.diameter() == rat(2));

    // triangle violation 0-1-2
    CHECK_THROWS_AS(Structure::metric({{rat(0), rat(1), rat(3)},
                                       {rat(1), rat(0), rat(1)},
                                       {rat(3), rat(1), rat(0)}}),
                    std::invalid_argument);
    // asymmetry
    CHECK_THROWS_AS(Structure::metric({{rat(0), rat(1)}, {rat(2), rat(0)}}),
                    std::invalid_argument);
    // zero distance between distinct points
    CHECK_THROWS_AS(Structure::metric({{rat(0), rat(0)}, {rat(0), rat(0)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Structure::empty(StructKind::metric), std::invalid_argument);
}

TEST_CASE("unary construction and closure") {
    auto u = Structure::unary({1, 2, 2, 0});
    CHECK(u.p(0) == 1);
    CHECK(u.p(2) == 2);
    CHECK_THROWS_AS(Structure::unary({4, 0, 0, 0}), std::invalid_argument);

    CHECK(unary_closure(u, {0}) == std::vector<int>{0, 1, 2});
    CHECK(unary_closure(u, {2}) == std::vector<int>{2});
    CHECK(unary_closure(u, {3}) == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("induced substructures") {
    auto g = Structure::graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    auto sub = g.induced({0, 1, 2});
    CHECK(sub.size() == 3);
    CHECK(sub.adjacent(0, 1));
    CHECK(sub.adjacent(1, 2));
    CHECK_FALSE(sub.adjacent(0, 2));

    auto o = Structure::linorder({2, 0, 1});
    auto osub = o.induced({0, 2}); // ranks 2 and 1: point 2 below point 0
    CHECK(osub.rank(0) == 1);
    CHECK(osub.rank(1) == 0);

    auto u = Structure::unary({1, 2, 2, 0});
    CHECK_THROWS_AS(u.induced({0, 1}), std::invalid_argument); // p(1)=2 missing
    auto usub = u.induced({1, 2});
    CHECK(usub.p(0) == 1);
    CHECK(usub.p(1) == 1);
}

TEST_CASE("canonical form is relabelling invariant") {
    // 5-cycle under a scramble
    auto c5 = Structure::graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    auto scrambled = c5.relabel({2, 4, 1, 3, 0});
    CHECK(canonical_form(c5) == canonical_form(scrambled));
    CHECK(isomorphic(c5, scrambled));

    // same degree sequence, different graphs: C6 vs two triangles
    auto c6 = Structure::graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    auto tt = Structure::graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
    CHECK_FALSE(isomorphic(c6, tt));

    auto m = Structure::metric({{rat(0), rat(1), rat(2)},
                                {rat(1), rat(0), rat(1)},
                                {rat(2), rat(1), rat(0)}});
    auto mp = m.relabel({2, 0, 1});
    CHECK(canonical_form(m) == canonical_form(mp));

    auto u = Structure::unary({1, 2, 2, 0});
    auto up = u.relabel({3, 1, 0, 2});
    CHECK(canonical_form(u) == canonical_form(up));
    CHECK(isomorphic(u, up));
}

TEST_CASE("canonical permutation is a certificate") {
    auto g = Structure::graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}});
    auto [cg, perm] = canonical_form_with_perm(g);
    CHECK(g.relabel(perm) == cg);
}

TEST_CASE("clique detection") {
    auto g = Structure::graph(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {2, 4}});
    CHECK(has_clique(g, 3));
    CHECK_FALSE(has_clique(g, 4));
    CHECK(has_clique(g, 1));
    CHECK(has_clique(Structure::graph(1, {}), 1));
    CHECK_FALSE(has_clique(Structure::graph(3, {{0, 1}}), 3));
}
