#include "fralim/category.hpp"
#include "fralim/errors.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace fralim;

namespace {

Morphism fold_compose(const std::vector<Morphism>& steps) {
    REQUIRE(!steps.empty());
    Morphism acc = steps.front();
    for (size_t i = 1; i < steps.size(); ++i) acc = compose(steps[i], acc);
    return acc;
}

} // namespace

TEST_CASE("amalgamate dispatches the free construction per kind") {
    SUBCASE("two edges over a shared vertex give the 3-path") {
        auto k1 = make_ref(complete_graph(1));
        auto k2 = make_ref(complete_graph(2));
        Morphism i(k1, k2, {0}, ArrowKind::embedding);
        auto sq = amalgamate(CategoryPair::graphs(), i, i);
        CHECK(sq.corner().size() == 3);
        CHECK(isomorphic(sq.corner(), path_graph(3)));
        CHECK(sq.cospan_left().is_embedding());
        CHECK(sq.cospan_right().is_embedding());
        CHECK(compose(sq.cospan_left(), sq.span().left())
                  .same_arrow(compose(sq.cospan_right(), sq.span().right())));
    }
    SUBCASE("an identity leg is absorbed") {
        auto k1 = make_ref(complete_graph(1));
        auto p3 = make_ref(path_graph(3));
        Morphism j(k1, p3, {1}, ArrowKind::embedding);
        auto sq = amalgamate(CategoryPair::graphs(), Morphism::identity(k1), j);
        CHECK(isomorphic(sq.corner(), *p3));
        CHECK(sq.cospan_right().is_surjective());
    }
    SUBCASE("orders go through the standard amalgam") {
        auto c = make_ref(chain(1));
        auto two = make_ref(chain(2));
        Morphism i(c, two, {0}, ArrowKind::embedding); // c bottom, p above
        Morphism j(c, two, {1}, ArrowKind::embedding); // q below c
        auto sq = amalgamate(CategoryPair::linorders(), i, j);
        CHECK(sq.corner().size() == 3);
        // c sits between q and p
        int cw = sq.cospan_left()(i(0));
        CHECK(sq.corner().rank(cw) == 1);
    }
    SUBCASE("metric and unary legs dispatch too") {
        auto pt = make_ref(Structure::metric({{Rat(0)}}));
        auto seg = make_ref(Structure::metric({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}}));
        Morphism i(pt, seg, {0}, ArrowKind::embedding);
        auto sq = amalgamate(CategoryPair::metrics(RadiusDomain::integers()), i, i);
        CHECK(sq.corner().size() == 3);

        auto fix = make_ref(Structure::unary({0}));
        auto tail = make_ref(Structure::unary({0, 0}));
        Morphism u(fix, tail, {0}, ArrowKind::embedding);
        auto usq = amalgamate(CategoryPair::unary_models(), u, u);
        CHECK(usq.corner().size() == 3);
    }
    SUBCASE("legs outside the class are rejected") {
        auto k1 = make_ref(complete_graph(1));
        auto k3 = make_ref(complete_graph(3));
        Morphism into_triangle(k1, k3, {0}, ArrowKind::embedding);
        CHECK_THROWS_AS(amalgamate(CategoryPair::graphs(3), into_triangle, into_triangle),
                        std::invalid_argument);
        auto p3 = make_ref(path_graph(3));
        auto k2 = make_ref(complete_graph(2));
        Morphism fold(p3, k2, {0, 1, 0}, ArrowKind::hom);
        CHECK_THROWS_AS(amalgamate(CategoryPair::graphs(), fold, fold),
                        std::invalid_argument);
    }
}

TEST_CASE("mixed pushout dispatch and the linear order refusal") {
    SUBCASE("graphs complete an embedding against a collapse") {
        // apex: two isolated points, f adds a common neighbor, g merges onto an edge
        auto d2 = make_ref(Structure::graph(2, {}));
        auto hat = make_ref(Structure::graph(3, {{0, 2}, {1, 2}}));
        auto k2 = make_ref(complete_graph(2));
        Morphism f(d2, hat, {0, 1}, ArrowKind::embedding);
        Morphism g(d2, k2, {0, 1}, ArrowKind::hom);
        auto sq = mixed_pushout(CategoryPair::graphs(), f, g);
        CHECK(isomorphic(sq.corner(), complete_graph(3)));
        CHECK(sq.cospan_right().is_embedding());
        CHECK_THROWS_AS(mixed_pushout(CategoryPair::graphs(3), f, g), UnsupportedOperation);
    }
    SUBCASE("an identity homomorphism leg changes nothing") {
        auto k1 = make_ref(complete_graph(1));
        auto k2 = make_ref(complete_graph(2));
        Morphism f(k1, k2, {1}, ArrowKind::embedding);
        auto sq = mixed_pushout(CategoryPair::graphs(), f, Morphism::identity(k1));
        CHECK(isomorphic(sq.corner(), *k2));
        CHECK(sq.cospan_left().is_embedding());
    }
    SUBCASE("linear orders refuse with a witness") {
        auto c = make_ref(chain(1));
        auto two = make_ref(chain(2));
        Morphism f(c, two, {0}, ArrowKind::embedding);
        try {
            mixed_pushout(CategoryPair::linorders(), f, Morphism::identity(c));
            FAIL("expected UnsupportedOperation");
        } catch (const UnsupportedOperation& e) {
            CHECK(std::string(e.what()).find("no mixed pushouts") != std::string::npos);
            CHECK(!e.witness().empty());
        }
    }
    SUBCASE("metric spans delegate to the one-point gluing") {
        auto pt = make_ref(Structure::metric({{Rat(0)}}));
        auto seg2 = make_ref(Structure::metric({{Rat(0), Rat(2)}, {Rat(2), Rat(0)}}));
        Morphism f(pt, seg2, {0}, ArrowKind::embedding);
        auto sq = mixed_pushout(CategoryPair::metrics(RadiusDomain::integers()), f,
                                Morphism::identity(pt));
        CHECK(sq.corner().size() == 2);
        CHECK(sq.corner().dist(0, 1) == Rat(2));
    }
}

TEST_CASE("composition is associative on random hom triples") {
    std::mt19937_64 rng(20260819);
    auto random_graph = [&](int n) {
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() & 1) edges.push_back({u, v});
        return make_ref(Structure::graph(n, std::move(edges)));
    };
    int done = 0;
    while (done < 40) {
        auto a = random_graph(2 + static_cast<int>(rng() % 2));
        auto b = random_graph(3);
        auto c = random_graph(3);
        auto d = random_graph(2 + static_cast<int>(rng() % 3));
        auto fs = all_homs(a, b), gs = all_homs(b, c), hs = all_homs(c, d);
        if (fs.empty() || gs.empty() || hs.empty()) continue;
        const Morphism& f = fs[rng() % fs.size()];
        const Morphism& g = gs[rng() % gs.size()];
        const Morphism& h = hs[rng() % hs.size()];
        CHECK(compose(compose(h, g), f).same_arrow(compose(h, compose(g, f))));
        ++done;
    }
}

TEST_CASE("pushout verification accepts the honest squares") {
    SUBCASE("free graph amalgam over an induced subgraph") {
        auto k1 = make_ref(complete_graph(1));
        auto k2 = make_ref(complete_graph(2));
        Morphism i(k1, k2, {0}, ArrowKind::embedding);
        auto pair = CategoryPair::graphs();
        auto sq = amalgamate(pair, i, i);
        auto report = verify_pushout_universal(pair, sq, 4);
        CHECK(report.ok);
        CHECK(sq.certified().pushout_certified());
    }
    SUBCASE("unary free amalgams are pushouts") {
        auto fix = make_ref(Structure::unary({0}));
        auto tail = make_ref(Structure::unary({0, 0}));
        Morphism u(fix, tail, {0}, ArrowKind::embedding);
        auto pair = CategoryPair::unary_models();
        auto sq = amalgamate(pair, u, u);
        CHECK(verify_pushout_universal(pair, sq, 3).ok);
    }
    SUBCASE("order amalgams commute but are never universal") {
        auto c = make_ref(chain(1));
        auto two = make_ref(chain(2));
        Morphism i(c, two, {0}, ArrowKind::embedding);
        auto pair = CategoryPair::linorders();
        auto sq = amalgamate(pair, i, i);
        auto report = verify_pushout_universal(pair, sq, 3);
        CHECK_FALSE(report.ok);
        CHECK(report.mediating_count == 0);
    }
}

TEST_CASE("pushout verification rejects broken corners") {
    auto k1 = make_ref(complete_graph(1));
    auto k2 = make_ref(complete_graph(2));
    Morphism i(k1, k2, {0}, ArrowKind::embedding);
    auto pair = CategoryPair::graphs();

    SUBCASE("a spurious corner edge kills the mediating map") {
        auto sq = amalgamate(pair, i, i);
        auto padded = make_ref(Structure::graph(3, {{0, 1}, {0, 2}, {1, 2}}));
        CommutingSquare bad(sq.span(),
                            Morphism(k2, padded, sq.cospan_left().map(), ArrowKind::hom),
                            Morphism(k2, padded, sq.cospan_right().map(), ArrowKind::hom));
        auto report = verify_pushout_universal(pair, bad, 4);
        CHECK_FALSE(report.ok);
        CHECK(report.mediating_count == 0);
        CHECK(report.target.has_value());
        CHECK(report.cocone_left.has_value());
    }
    SUBCASE("a collapsed corner loses uniqueness or existence") {
        auto d2 = make_ref(Structure::graph(2, {}));
        auto empty = make_ref(Structure::empty(StructKind::graph));
        Morphism ia(empty, d2, {}, ArrowKind::embedding);
        CommutingSquare bad(Span(ia, ia), Morphism(d2, k1, {0, 0}, ArrowKind::hom),
                            Morphism(d2, k1, {0, 0}, ArrowKind::hom));
        auto report = verify_pushout_universal(pair, bad, 2);
        CHECK_FALSE(report.ok);
    }
}

TEST_CASE("mixed pushouts verify universally on small spans") {
    auto pair = CategoryPair::graphs();
    auto graph_sizes = {0, 1, 2};
    std::vector<StructureRef> all;
    for (int n : graph_sizes)
        for (auto& s : pair.objects(n)) all.push_back(make_ref(std::move(s)));
    int checked = 0;
    for (const auto& c : all)
        for (const auto& a : all)
            for (const auto& b : all)
                for (const auto& f : all_embeddings(c, a))
                    for (const auto& g : all_homs(c, b)) {
                        auto sq = mixed_pushout(pair, f, g);
                        CAPTURE(f.describe());
                        CAPTURE(g.describe());
                        CHECK(verify_pushout_universal(pair, sq, 3).ok);
                        ++checked;
                    }
    CHECK(checked > 50);

    auto mpair = CategoryPair::metrics(RadiusDomain::integers());
    auto pt = make_ref(Structure::metric({{Rat(0)}}));
    auto seg = make_ref(Structure::metric({{Rat(0), Rat(2)}, {Rat(2), Rat(0)}}));
    for (const auto& f : all_embeddings(pt, seg))
        for (const auto& g : all_homs(pt, seg)) {
            auto sq = mixed_pushout(mpair, f, g);
            CHECK(verify_pushout_universal(mpair, sq, 3).ok);
        }
}

TEST_CASE("decomposition into primitive steps") {
    SUBCASE("identities vanish and lone extensions come back whole") {
        auto k2 = make_ref(complete_graph(2));
        CHECK(decompose_into_primitives(CategoryPair::graphs(), Morphism::identity(k2)).empty());
        auto k1 = make_ref(complete_graph(1));
        Morphism one(k1, k2, {1}, ArrowKind::embedding);
        auto steps = decompose_into_primitives(CategoryPair::graphs(), one);
        REQUIRE(steps.size() == 1);
        CHECK(steps[0].same_arrow(one));
    }
    SUBCASE("a vertex into a triangle splits in two") {
        auto k1 = make_ref(complete_graph(1));
        auto k3 = make_ref(complete_graph(3));
        Morphism f(k1, k3, {0}, ArrowKind::embedding);
        auto steps = decompose_into_primitives(CategoryPair::graphs(), f);
        REQUIRE(steps.size() == 2);
        for (const auto& s : steps) {
            CHECK(s.is_embedding());
            CHECK(s.cod().size() == s.dom().size() + 1);
        }
        CHECK(fold_compose(steps).same_arrow(f));
    }
    SUBCASE("two-point order extension gives two steps") {
        auto c2 = make_ref(chain(2));
        auto c4 = make_ref(chain(4));
        Morphism f(c2, c4, {1, 2}, ArrowKind::embedding);
        auto steps = decompose_into_primitives(CategoryPair::linorders(), f);
        REQUIRE(steps.size() == 2);
        CHECK(fold_compose(steps).same_arrow(f));
    }
    SUBCASE("unary steps drag whole orbits") {
        // one fixpoint plus a 2-chain feeding it: a single generator
        auto fix = make_ref(Structure::unary({0}));
        auto chain3 = make_ref(Structure::unary({0, 2, 0})); // 1 -> 2 -> 0, P(0)=0
        Morphism f(fix, chain3, {0}, ArrowKind::embedding);
        auto steps = decompose_into_primitives(CategoryPair::unary_models(), f);
        REQUIRE(steps.size() == 1);
        CHECK(steps[0].same_arrow(f));

        // two independent tails onto the fixpoint: two generators
        auto fork = make_ref(Structure::unary({0, 0, 0}));
        Morphism g(fix, fork, {0}, ArrowKind::embedding);
        auto gsteps = decompose_into_primitives(CategoryPair::unary_models(), g);
        REQUIRE(gsteps.size() == 2);
        CHECK(fold_compose(gsteps).same_arrow(g));
    }
    SUBCASE("metric decomposition recomposes exactly") {
        auto pt = make_ref(Structure::metric({{Rat(0)}}));
        auto path = make_ref(Structure::metric({{Rat(0), Rat(1), Rat(2)},
                                                {Rat(1), Rat(0), Rat(1)},
                                                {Rat(2), Rat(1), Rat(0)}}));
        Morphism f(pt, path, {1}, ArrowKind::embedding);
        auto steps = decompose_into_primitives(CategoryPair::metrics(RadiusDomain::integers()), f);
        REQUIRE(steps.size() == 2);
        CHECK(fold_compose(steps).same_arrow(f));
        for (const auto& s : steps) CHECK(s.is_embedding());
    }
    SUBCASE("exhaustive recomposition over small graph embeddings") {
        auto pair = CategoryPair::graphs();
        for (int n = 0; n <= 2; ++n)
            for (auto& small : pair.objects(n)) {
                auto dom = make_ref(std::move(small));
                for (auto& big : pair.objects(3)) {
                    auto cod = make_ref(std::move(big));
                    for (const auto& f : all_embeddings(dom, cod)) {
                        auto steps = decompose_into_primitives(pair, f);
                        REQUIRE(steps.size() == static_cast<size_t>(3 - n));
                        CHECK(fold_compose(steps).same_arrow(f));
                    }
                }
            }
    }
}

TEST_CASE("class objects and one-point extensions") {
    SUBCASE("object enumeration dispatches with the frozen counts") {
        CHECK(CategoryPair::graphs().objects(4).size() == 11);
        CHECK(CategoryPair::graphs(3).objects(3).size() == 3);
        CHECK(CategoryPair::linorders().objects(5).size() == 1);
        CHECK(CategoryPair::unary_models().objects(3).size() == 7);
        auto mpair = CategoryPair::metrics(RadiusDomain::integers());
        CHECK(mpair.objects(3, Rat(2)).size() == 4);
        CHECK_THROWS_AS(mpair.objects(3), std::invalid_argument);
    }
    SUBCASE("graph extensions enumerate neighborhoods, clique-filtered") {
        auto k2 = make_ref(complete_graph(2));
        CHECK(CategoryPair::graphs().one_point_extensions(k2).size() == 4);
        CHECK(CategoryPair::graphs(3).one_point_extensions(k2).size() == 3);
        for (const auto& e : CategoryPair::graphs().one_point_extensions(k2)) {
            CHECK(e.is_embedding());
            CHECK(e.cod().size() == 3);
            CHECK(e.is_identity() == false);
        }
    }
    SUBCASE("order slots, unary targets, metric distance vectors") {
        auto c2 = make_ref(chain(2));
        CHECK(CategoryPair::linorders().one_point_extensions(c2).size() == 3);
        auto u2 = make_ref(Structure::unary({1, 0}));
        CHECK(CategoryPair::unary_models().one_point_extensions(u2).size() == 3);
        auto pt = make_ref(Structure::metric({{Rat(0)}}));
        auto mpair = CategoryPair::metrics(RadiusDomain::integers());
        CHECK(mpair.one_point_extensions(pt, Rat(2)).size() == 2);
        auto seg = make_ref(Structure::metric({{Rat(0), Rat(2)}, {Rat(2), Rat(0)}}));
        // distance vectors to a 2-point space of diameter 2, entries in {1,2}:
        // (1,1), (1,2)? needs |d0-d1| <= 2 <= d0+d1: (1,1) ok, (1,2) ok, (2,1) ok, (2,2) ok
        CHECK(mpair.one_point_extensions(seg, Rat(2)).size() == 4);
    }
    SUBCASE("class membership checks") {
        auto pair = CategoryPair::graphs(3);
        CHECK(pair.admits(path_graph(3)));
        CHECK_FALSE(pair.admits(complete_graph(3)));
        CHECK_FALSE(pair.admits(chain(2)));
        auto mpair = CategoryPair::metrics(RadiusDomain::integers());
        CHECK(mpair.admits(Structure::metric({{Rat(0), Rat(2)}, {Rat(2), Rat(0)}})));
        CHECK_FALSE(mpair.admits(Structure::metric({{Rat(0), rat(1, 2)}, {rat(1, 2), Rat(0)}})));
    }
}
