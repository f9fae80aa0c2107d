#include "doctest.h"

#include "fralim/unary.hpp"

using namespace fralim;

TEST_CASE("cycles step and wrap") {
    auto s4 = unary_cycle(4);
    CHECK(s4.p(0) == 1);
    CHECK(s4.p(2) == 3);
    CHECK(s4.p(3) == 0);
    CHECK(unary_cycle(1).p(0) == 0);
}

TEST_CASE("generated submodel closes under the function") {
    auto s5 = unary_cycle(5);
    CHECK(unary_generated_submodel(s5, {2}) == s5);

    CHECK(unary_generated_submodel(s5, {}).size() == 0);

    // two disjoint 2-cycles: a seed reaches only its own
    auto both = Structure::unary({1, 0, 3, 2});
    auto one = unary_generated_submodel(both, {2});
    CHECK(one.size() == 2);
    CHECK(one.p(0) == 1);
    CHECK(one.p(1) == 0);
}

TEST_CASE("free amalgam with empty apex is the disjoint sum") {
    auto c = make_ref(Structure::empty(StructKind::unary));
    auto a = make_ref(unary_cycle(2));
    auto b = make_ref(unary_cycle(3));
    Morphism i(c, a, {}, ArrowKind::embedding);
    Morphism j(c, b, {}, ArrowKind::embedding);
    auto sq = unary_free_amalgam(i, j);
    CHECK(sq.corner().size() == 5);
    CHECK(sq.cospan_left().is_embedding());
    CHECK(sq.cospan_right().is_embedding());
    CHECK(isomorphic(sq.corner(), Structure::unary({1, 0, 3, 4, 2})));
}

TEST_CASE("free amalgam glues tails over a shared cycle") {
    // apex: 2-cycle; both sides hang one extra point feeding into it
    auto c = make_ref(unary_cycle(2));
    auto a = make_ref(Structure::unary({1, 0, 0}));
    auto b = make_ref(Structure::unary({1, 0, 1}));
    Morphism i(c, a, {0, 1}, ArrowKind::embedding);
    Morphism j(c, b, {0, 1}, ArrowKind::embedding);
    auto sq = unary_free_amalgam(i, j);
    CHECK(sq.corner().size() == 4);
    CHECK(compose(sq.cospan_left(), i).same_arrow(compose(sq.cospan_right(), j)));
    // both tails present, feeding opposite cycle points
    CHECK(sq.corner().p(2) == 0);
    CHECK(sq.corner().p(3) == 1);
}

TEST_CASE("mixed pushout drags a tail along a collapse") {
    // apex: 2-cycle, collapsed by g onto a fixpoint; a adds a tail into it
    auto c = make_ref(unary_cycle(2));
    auto a = make_ref(Structure::unary({1, 0, 0})); // tail 2 -> 0
    auto b = make_ref(Structure::unary({0}));       // single fixpoint
    Morphism f(c, a, {0, 1}, ArrowKind::embedding);
    Morphism g(c, b, {0, 0}, ArrowKind::hom);
    auto sq = unary_mixed_pushout(f, g);
    CHECK(sq.corner().size() == 2);
    CHECK(sq.corner().p(0) == 0);
    CHECK(sq.corner().p(1) == 0);
    CHECK(sq.cospan_left().kind() == ArrowKind::hom);
    CHECK(sq.cospan_right().is_embedding());
}

TEST_CASE("mixed pushout against the identity changes nothing") {
    auto c = make_ref(unary_cycle(2));
    auto a = make_ref(Structure::unary({1, 0, 0}));
    Morphism f(c, a, {0, 1}, ArrowKind::embedding);
    Morphism g = Morphism::identity(c);
    auto sq = unary_mixed_pushout(f, g);
    CHECK(isomorphic(sq.corner(), *a));
}

TEST_CASE("unary enumeration by isomorphism class") {
    CHECK(enumerate_unary(0).size() == 1);
    CHECK(enumerate_unary(1).size() == 1);
    CHECK(enumerate_unary(2).size() == 3);
    // maps on three points: 7 classes
    CHECK(enumerate_unary(3).size() == 7);
}
