#include "doctest.h"

#include "fralim/linorder.hpp"

#include <stdexcept>

using namespace fralim;

namespace {

// Independent oracle: smallest chain admitting embeddings k, l with
// k∘i = l∘j, found by exhaustive search.
int least_square_size(const Morphism& i, const Morphism& j, int bound) {
    for (int n = 0; n <= bound; ++n) {
        auto w = make_ref(chain(n));
        for (const auto& k : all_embeddings(i.cod_ref(), w))
            for (const auto& l : all_embeddings(j.cod_ref(), w))
                if (compose(k, i).same_arrow(compose(l, j))) return n;
    }
    return -1;
}

} // namespace

TEST_CASE("free amalgam routes both sides around the apex") {
    // c one point, sitting above p in a and below q in b: w must be q < c < p
    auto c = make_ref(chain(1));
    auto a = make_ref(chain(2));
    auto b = make_ref(chain(2));
    Morphism i(c, a, {0}, ArrowKind::embedding); // c is the bottom of a
    Morphism j(c, b, {1}, ArrowKind::embedding); // c is the top of b

    CHECK(least_square_size(i, j, 4) == 3);

    auto sq = linorder_free_amalgam(i, j);
    const Structure& w = sq.corner();
    CHECK(w.size() == 3);
    int cw = sq.cospan_left()(i(0));
    CHECK(cw == sq.cospan_right()(j(0)));
    CHECK(w.rank(cw) == 1); // apex point in the middle
    CHECK(w.rank(sq.cospan_left()(1)) == 2);
    CHECK(w.rank(sq.cospan_right()(0)) == 0);
}

TEST_CASE("free amalgam over the empty order concatenates deterministically") {
    auto c = make_ref(chain(0));
    auto a = make_ref(chain(2));
    auto b = make_ref(chain(1));
    Morphism i(c, a, {}, ArrowKind::embedding);
    Morphism j(c, b, {}, ArrowKind::embedding);
    auto sq = linorder_free_amalgam(i, j);
    CHECK(sq.corner().size() == 3);
    // single gap: a's points first
    CHECK(sq.corner().rank(sq.cospan_right()(0)) == 2);
}

TEST_CASE("mixed amalgam pinches onto an existing point") {
    // C = {c0 < c1}, A inserts a between them, B one point, f constant
    auto c = make_ref(chain(2));
    auto a = make_ref(chain(3));
    auto b = make_ref(chain(1));
    Morphism i(c, a, {0, 2}, ArrowKind::embedding);
    Morphism f(c, b, {0, 0}, ArrowKind::hom);
    auto r = linorder_mixed_amalgam(i, f);
    CHECK(r.include.is_identity());
    CHECK(r.extend.cod() == *b);
    CHECK(r.extend(1) == 0); // the new point landed on b's only point
    CHECK(compose(r.extend, i).same_arrow(compose(r.include, f)));
}

TEST_CASE("mixed amalgam with a free apex inserts at the bottom") {
    auto c = make_ref(chain(0));
    auto a = make_ref(chain(1));
    auto b = make_ref(chain(2));
    Morphism i(c, a, {}, ArrowKind::embedding);
    Morphism f(c, b, {}, ArrowKind::hom);
    auto r = linorder_mixed_amalgam(i, f);
    const Structure& w = r.extend.cod();
    CHECK(w.size() == 3);
    CHECK(w.rank(r.extend(0)) == 0);                          // w at the very bottom
    CHECK(w.rank(r.include(0)) == 1);
    CHECK(w.rank(r.include(1)) == 2);
}

TEST_CASE("mixed amalgam inserts just above the binding image") {
    // C = {c}, A = {c < a}, B = {b0 < b1}, f(c) = b0: w goes between b0 and b1
    auto c = make_ref(chain(1));
    auto a = make_ref(chain(2));
    auto b = make_ref(chain(2));
    Morphism i(c, a, {0}, ArrowKind::embedding);
    Morphism f(c, b, {0}, ArrowKind::hom);
    auto r = linorder_mixed_amalgam(i, f);
    const Structure& w = r.extend.cod();
    CHECK(w.size() == 3);
    CHECK(w.rank(r.include(0)) == 0);
    CHECK(w.rank(r.extend(1)) == 1);
    CHECK(w.rank(r.include(1)) == 2);
    CHECK(r.include.is_embedding());
    CHECK(compose(r.extend, i).same_arrow(compose(r.include, f)));
}

TEST_CASE("mixed amalgam invariants, exhaustively") {
    // all apexes up to 3, all one-point extensions, all increasing maps into
    // chains up to 3
    for (int nc = 0; nc <= 3; ++nc) {
        auto c = make_ref(chain(nc));
        auto a = make_ref(chain(nc + 1));
        for (int nb = 1; nb <= 3; ++nb) {
            auto b = make_ref(chain(nb));
            for (const auto& i : all_embeddings(c, a))
                for (const auto& f : all_homs(c, b)) {
                    auto r = linorder_mixed_amalgam(i, f);
                    CHECK(compose(r.extend, i).same_arrow(compose(r.include, f)));
                    CHECK(r.include.is_embedding());
                    CHECK(r.extend.cod().size() - b->size() <= 1);
                }
        }
    }
}

TEST_CASE("amalgamated extension follows the target order") {
    // strict separation: f(a) < g(b) forces a < b
    auto c = make_ref(chain(0));
    auto a = make_ref(chain(1));
    auto b = make_ref(chain(1));
    auto l = make_ref(chain(2));
    Morphism iA(c, a, {}, ArrowKind::embedding);
    Morphism iB(c, b, {}, ArrowKind::embedding);
    Morphism f(a, l, {0}, ArrowKind::hom);
    Morphism g(b, l, {1}, ArrowKind::hom);
    auto r = linorder_amalgamated_extension(f, g, iA, iB);
    const Structure& w = r.from_left.cod();
    CHECK(w.size() == 2);
    CHECK(w.rank(r.from_left(0)) == 0);
    CHECK(w.rank(r.from_right(0)) == 1);
    CHECK(compose(r.into_target, r.from_left).same_arrow(f));
    CHECK(compose(r.into_target, r.from_right).same_arrow(g));
}

TEST_CASE("amalgamated extension breaks unseparated ties downward") {
    // f(a) = g(b), no apex point between them: b goes below a
    auto c = make_ref(chain(0));
    auto a = make_ref(chain(1));
    auto b = make_ref(chain(1));
    auto l = make_ref(chain(1));
    Morphism iA(c, a, {}, ArrowKind::embedding);
    Morphism iB(c, b, {}, ArrowKind::embedding);
    Morphism f(a, l, {0}, ArrowKind::hom);
    Morphism g(b, l, {0}, ArrowKind::hom);
    auto r = linorder_amalgamated_extension(f, g, iA, iB);
    const Structure& w = r.from_left.cod();
    CHECK(w.size() == 2);
    CHECK(w.rank(r.from_right(0)) == 0); // b < a
    CHECK(w.rank(r.from_left(0)) == 1);
}

TEST_CASE("amalgamated extension respects an apex separator on ties") {
    // A = {a < c}, B = {c < b}, everything mapped to one point: the naive
    // tie rule would close the cycle a < c < b < a
    auto c = make_ref(chain(1));
    auto a = make_ref(chain(2));
    auto b = make_ref(chain(2));
    auto l = make_ref(chain(1));
    Morphism iA(c, a, {1}, ArrowKind::embedding); // c on top of A
    Morphism iB(c, b, {0}, ArrowKind::embedding); // c at the bottom of B
    Morphism f(a, l, {0, 0}, ArrowKind::hom);
    Morphism g(b, l, {0, 0}, ArrowKind::hom);
    auto r = linorder_amalgamated_extension(f, g, iA, iB);
    const Structure& w = r.from_left.cod();
    CHECK(w.size() == 3);
    CHECK(w.rank(r.from_left(0)) == 0);  // a
    CHECK(w.rank(r.from_left(1)) == 1);  // c
    CHECK(w.rank(r.from_right(1)) == 2); // b
    CHECK(compose(r.into_target, r.from_left).same_arrow(f));
    CHECK(compose(r.into_target, r.from_right).same_arrow(g));
}

TEST_CASE("amalgamated extension invariants, exhaustively") {
    for (int nc = 0; nc <= 2; ++nc) {
        auto c = make_ref(chain(nc));
        auto a = make_ref(chain(nc + 1));
        auto b = make_ref(chain(nc + 1));
        for (int nl = 1; nl <= 3; ++nl) {
            auto l = make_ref(chain(nl));
            for (const auto& iA : all_embeddings(c, a))
                for (const auto& iB : all_embeddings(c, b))
                    for (const auto& f : all_homs(a, l))
                        for (const auto& g : all_homs(b, l)) {
                            if (!compose(f, iA).same_arrow(compose(g, iB))) continue;
                            auto r = linorder_amalgamated_extension(f, g, iA, iB);
                            CHECK(compose(r.into_target, r.from_left).same_arrow(f));
                            CHECK(compose(r.into_target, r.from_right).same_arrow(g));
                            CHECK(compose(r.from_left, iA)
                                      .same_arrow(compose(r.from_right, iB)));
                        }
        }
    }
}

TEST_CASE("left inverse of the identity is the identity") {
    auto a = make_ref(chain(3));
    auto r = linorder_left_inverse(Morphism::identity(a));
    CHECK(r.is_identity());
}

TEST_CASE("left inverse onto a singleton is constant") {
    auto a = make_ref(chain(1));
    auto b = make_ref(chain(2));
    Morphism j(a, b, {0}, ArrowKind::embedding);
    auto r = linorder_left_inverse(j);
    CHECK(r.map() == std::vector<int>{0, 0});
}

TEST_CASE("left inverse sends gaps to the floor image") {
    // A = {0 < 1} into B = {p < q < r} hitting p and r: q retracts onto 0
    auto a = make_ref(chain(2));
    auto b = make_ref(chain(3));
    Morphism j(a, b, {0, 2}, ArrowKind::embedding);
    auto r = linorder_left_inverse(j);
    CHECK(r(1) == 0);
    CHECK(compose(r, j).is_identity());
}

TEST_CASE("left inverse exists for every embedding into chains up to five") {
    for (int na = 1; na <= 5; ++na)
        for (int nb = na; nb <= 5; ++nb) {
            auto a = make_ref(chain(na));
            auto b = make_ref(chain(nb));
            for (const auto& j : all_embeddings(a, b)) {
                auto r = linorder_left_inverse(j);
                CHECK(compose(r, j).is_identity());
                CHECK(is_hom_map(*b, *a, r.map()));
            }
        }
}

TEST_CASE("left inverse fails only from the empty order") {
    auto e = make_ref(chain(0));
    auto b = make_ref(chain(1));
    Morphism j(e, b, {}, ArrowKind::embedding);
    CHECK_THROWS_AS(linorder_left_inverse(j), std::invalid_argument);
    CHECK(compose(linorder_left_inverse(Morphism::identity(e)), Morphism::identity(e))
              .is_identity());
}
