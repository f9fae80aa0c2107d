#include "fralim/fraisse.hpp"
#include "fralim/graphs.hpp"

#include <doctest.h>

using namespace fralim;

namespace {

bool identical_runs(const FraisseRun& a, const FraisseRun& b) {
    if (a.sequence.depth() != b.sequence.depth()) return false;
    for (int n = 0; n < a.sequence.depth(); ++n)
        if (a.sequence.stage(n).compare_data(b.sequence.stage(n)) != 0) return false;
    for (int n = 0; n + 1 < a.sequence.depth(); ++n)
        if (a.sequence.connector(n).map() != b.sequence.connector(n).map()) return false;
    return a.ledger.f1().size() == b.ledger.f1().size() &&
           a.ledger.f2().size() == b.ledger.f2().size();
}

void check_ledger_sound(const FraisseRun& run) {
    for (const auto& e : run.ledger.f1()) {
        if (e.completed_step < 0) continue;
        REQUIRE(e.embedding.has_value());
        CHECK(e.embedding->is_embedding());
        CHECK(e.embedding->cod() == run.sequence.stage(e.stage));
    }
    for (const auto& e : run.ledger.f2()) {
        if (e.completed_step < 0) continue;
        REQUIRE(e.completion.has_value());
        Morphism glued = compose(*e.completion, e.extension);
        CHECK(glued.map() == run.sequence.between(e.stage_n, e.stage_m).map());
    }
}

// A completed task may be overtaken by at most one younger task; anything
// worse means the scheduler is starving someone.
void check_no_starvation(const FraisseRun& run) {
    struct Row {
        int enq, done;
    };
    std::vector<Row> rows;
    for (const auto& e : run.ledger.f1()) rows.push_back({e.enqueued_step, e.completed_step});
    for (const auto& e : run.ledger.f2()) rows.push_back({e.enqueued_step, e.completed_step});
    for (const auto& r : rows) {
        int overtakes = 0;
        for (const auto& o : rows)
            if (o.enq > r.enq && o.done >= 0 && (r.done < 0 || o.done < r.done)) ++overtakes;
        CHECK(overtakes <= 1);
    }
}

} // namespace

TEST_CASE("identical inputs rebuild the identical prefix") {
    auto pair = CategoryPair::graphs();
    auto a = build_fraisse_sequence(pair, 120, 9);
    auto b = build_fraisse_sequence(pair, 120, 9);
    CHECK(identical_runs(a, b));
    auto c = build_fraisse_sequence(pair, 120, 10);
    CHECK(c.sequence.depth() > 1);
}

TEST_CASE("ledger witnesses compose exactly") {
    check_ledger_sound(build_fraisse_sequence(CategoryPair::graphs(), 150, 3));
    check_ledger_sound(build_fraisse_sequence(CategoryPair::linorders(), 120, 3));
    check_ledger_sound(build_fraisse_sequence(CategoryPair::unary_models(), 80, 3));
}

TEST_CASE("the scheduler is fair") {
    auto run = build_fraisse_sequence(CategoryPair::graphs(), 300, 5);
    check_no_starvation(run);
    // everything enqueued early has been served well before the end
    for (const auto& e : run.ledger.f1())
        if (e.enqueued_step <= 50) CHECK(e.completed_step >= 0);
    for (const auto& e : run.ledger.f2())
        if (e.enqueued_step <= 50) CHECK(e.completed_step >= 0);
}

TEST_CASE("check_F1 reports the least absorbing stage") {
    auto pair = CategoryPair::graphs();
    auto run = build_fraisse_sequence(pair, 200, 7);
    const auto& u = run.sequence;

    auto self = check_F1(u, u.stage(0));
    REQUIRE(self.has_value());
    CHECK(self->first == 0);
    CHECK(self->second.is_identity());

    auto k3 = check_F1(u, complete_graph(3));
    REQUIRE(k3.has_value());
    CHECK(k3->second.is_embedding());
    for (int n = 0; n < k3->first; ++n)
        CHECK_FALSE(find_embedding(complete_graph(3), u.stage(n), {-1, -1, -1}).has_value());

    CHECK_FALSE(check_F1(u, complete_graph(200)).has_value());
}

TEST_CASE("check_F2 completes one-point extensions and matches the ledger") {
    auto pair = CategoryPair::graphs();
    auto run = build_fraisse_sequence(pair, 150, 11);
    const auto& u = run.sequence;

    auto idext = Morphism::identity(u.stage_ref(0));
    auto trivial = check_F2(u, 0, idext);
    REQUIRE(trivial.has_value());
    CHECK(trivial->first == 0);
    CHECK(trivial->second.is_identity());

    for (const auto& f : pair.one_point_extensions(u.stage_ref(0))) {
        auto hit = check_F2(u, 0, f);
        REQUIRE(hit.has_value());
        CHECK(compose(hit->second, f).map() == u.between(0, hit->first).map());
        auto entry = run.ledger.find_f2(0, f);
        REQUIRE(entry.has_value());
        CHECK(hit->first <= entry->stage_m); // check_F2 reports the least stage
    }

    // an extension of the final stage cannot be completed inside the prefix
    int last = u.depth() - 1;
    auto exts = pair.one_point_extensions(u.stage_ref(last));
    CHECK_FALSE(check_F2(u, last, exts.front()).has_value());
}

TEST_CASE("linear orders grow dense between the roots") {
    auto run = build_fraisse_sequence(CategoryPair::linorders(), 200, 2);
    const auto& u = run.sequence;
    int d = u.depth() - 1;
    Morphism down = u.between(0, d);
    const Structure& top = u.stage(d);
    int lo = top.rank(down(0)), hi = top.rank(down(1));
    if (lo > hi) std::swap(lo, hi);
    CHECK(hi - lo >= 2); // some point settled strictly between the two roots
    // and the root pair keeps outgrowing both ends
    CHECK(lo >= 1);
    CHECK(hi <= top.size() - 2);
}

TEST_CASE("metric prefixes respect the radius domain") {
    auto dom = RadiusDomain::generated({Rat(1)}, Rat(8));
    auto pair = CategoryPair::metrics(dom);
    auto run = build_fraisse_sequence(pair, 60, 4);
    const auto& u = run.sequence;
    for (int n = 0; n < u.depth(); ++n) CHECK(pair.admits(u.stage(n)));

    // distance-2 extensions of the root pair were scheduled and completed
    bool found = false;
    for (const auto& f : pair.one_point_extensions(u.stage_ref(0), Rat(2))) {
        auto entry = run.ledger.find_f2(0, f);
        if (entry && entry->completed_step >= 0) found = true;
    }
    CHECK(found);
    check_ledger_sound(run);
}

TEST_CASE("prefixes from different seeds match by back-and-forth") {
    auto pair = CategoryPair::graphs();
    auto ra = build_fraisse_sequence(pair, 220, 1);
    auto rb = build_fraisse_sequence(pair, 220, 2);

    auto extendable = [&](const SequenceK& x, const SequenceK& y, int depth) {
        auto start = check_F1(y, x.stage(0));
        REQUIRE(start.has_value());
        int prev = start->first;
        std::vector<int> cur = start->second.map();
        for (int k = 1; k <= depth; ++k) {
            const Morphism& step = x.connector(k - 1);
            bool done = false;
            for (int m = prev; m < y.depth() && !done; ++m) {
                Morphism push = y.between(prev, m);
                // old points must land where the system already put them
                std::vector<int> partial(static_cast<size_t>(x.stage(k).size()), -1);
                for (size_t v = 0; v < cur.size(); ++v)
                    partial[static_cast<size_t>(step(static_cast<int>(v)))] = push(cur[v]);
                if (auto g = find_embedding(x.stage(k), y.stage(m), partial)) {
                    cur = *g;
                    prev = m;
                    done = true;
                }
            }
            if (!done) return false;
        }
        return true;
    };
    CHECK(extendable(ra.sequence, rb.sequence, 3));
    CHECK(extendable(rb.sequence, ra.sequence, 3));
}
