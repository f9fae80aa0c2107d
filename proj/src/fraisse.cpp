#include "fralim/fraisse.hpp"

#include "fralim/graphs.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <string>

namespace fralim {

int TaskLedger::pending() const {
    int n = 0;
    for (const auto& e : f1_)
        if (e.completed_step < 0) ++n;
    for (const auto& e : f2_)
        if (e.completed_step < 0) ++n;
    return n;
}

std::optional<F2Entry> TaskLedger::find_f2(int stage_n, const Morphism& extension) const {
    for (const auto& e : f2_)
        if (e.completed_step >= 0 && e.stage_n == stage_n && e.extension.same_arrow(extension))
            return e;
    return std::nullopt;
}

std::optional<std::pair<int, Morphism>> check_F1(const SequenceK& u, const Structure& x) {
    auto xref = make_ref(x);
    std::vector<int> free_partial(static_cast<size_t>(x.size()), -1);
    for (int n = 0; n < u.depth(); ++n) {
        if (u.stage(n).size() < x.size()) continue;
        if (auto m = find_embedding(x, u.stage(n), free_partial))
            return std::pair<int, Morphism>{n, Morphism(xref, u.stage_ref(n), *m,
                                                        ArrowKind::embedding)};
    }
    return std::nullopt;
}

std::optional<std::pair<int, Morphism>> check_F2(const SequenceK& u, int n, const Morphism& f) {
    if (n < 0 || n >= u.depth()) throw std::out_of_range("check_F2: stage " + std::to_string(n));
    bool at_stage = f.dom_ref().get() == u.stage_ref(n).get() || f.dom() == u.stage(n);
    if (!f.is_embedding() || !at_stage)
        throw std::invalid_argument("check_F2: extension must be an embedding out of stage " +
                                    std::to_string(n));
    const Structure& y = f.cod();
    Morphism along = Morphism::identity(u.stage_ref(n));
    for (int m = n; m < u.depth(); ++m) {
        if (m > n) along = compose(u.connector(m - 1), along);
        std::vector<int> partial(static_cast<size_t>(y.size()), -1);
        for (int v = 0; v < f.dom().size(); ++v) partial[static_cast<size_t>(f(v))] = along(v);
        if (auto g = find_embedding(y, u.stage(m), partial))
            return std::pair<int, Morphism>{m, Morphism(f.cod_ref(), u.stage_ref(m), *g,
                                                        ArrowKind::embedding)};
    }
    return std::nullopt;
}

namespace {

// Disjoint join of two class objects, both sides embedded. Used to satisfy an
// F1 task the current prefix cannot absorb.
struct Join {
    StructureRef space;
    Morphism left, right;
};

Join jep_join(const CategoryPair& pair, const StructureRef& a, const StructureRef& b) {
    const int na = a->size(), nb = b->size();
    std::vector<int> left_map(static_cast<size_t>(na)), right_map(static_cast<size_t>(nb));
    for (int v = 0; v < na; ++v) left_map[static_cast<size_t>(v)] = v;
    for (int v = 0; v < nb; ++v) right_map[static_cast<size_t>(v)] = na + v;

    StructureRef w;
    switch (a->kind()) {
    case StructKind::graph: {
        auto edges = a->edges();
        for (auto [u, v] : b->edges()) edges.emplace_back(na + u, na + v);
        w = make_ref(Structure::graph(na + nb, edges));
        break;
    }
    case StructKind::linorder: {
        std::vector<int> ranks(static_cast<size_t>(na + nb));
        for (int v = 0; v < na; ++v) ranks[static_cast<size_t>(v)] = a->rank(v);
        for (int v = 0; v < nb; ++v) ranks[static_cast<size_t>(na + v)] = na + b->rank(v);
        w = make_ref(Structure::linorder(ranks));
        break;
    }
    case StructKind::metric: {
        MetricJoin j = metric_join(a, b, pair.domain());
        return {j.space, j.left, j.right};
    }
    case StructKind::unary: {
        std::vector<int> p(static_cast<size_t>(na + nb));
        for (int v = 0; v < na; ++v) p[static_cast<size_t>(v)] = a->p(v);
        for (int v = 0; v < nb; ++v) p[static_cast<size_t>(na + v)] = na + b->p(v);
        w = make_ref(Structure::unary(p));
        break;
    }
    }
    return {w, Morphism(a, w, left_map, ArrowKind::embedding),
            Morphism(b, w, right_map, ArrowKind::embedding)};
}

std::vector<Structure> sorted_objects(const CategoryPair& pair, int size,
                                      const std::optional<Rat>& band) {
    std::vector<Structure> objs = band ? pair.objects(size, *band) : pair.objects(size);
    std::sort(objs.begin(), objs.end(), [](const Structure& a, const Structure& b) {
        return a.compare_data(b) < 0;
    });
    return objs;
}

struct Task {
    bool is_f2;
    size_t idx;
};

class FraisseBuilder {
public:
    FraisseBuilder(const CategoryPair& pair, unsigned long long seed)
        : pair_(pair), rng_(seed), metric_(pair.kind() == StructKind::metric) {
        if (metric_) {
            unit_ = pair_.domain().least_value_at_least(Rat(1));
            band_ = unit_;
        }
        auto roots = sorted_objects(pair_, 2, metric_ ? std::optional<Rat>(band_) : std::nullopt);
        stages_.push_back(make_ref(roots.front()));
        stream_size_ = metric_ ? 1 : 0;
    }

    void run(int steps) {
        for (step_ = 0; step_ < steps; ++step_) {
            replenish();
            if (!queue_.empty()) serve();
        }
    }

    SequenceK sequence() const { return SequenceK(stages_, connectors_); }
    std::vector<F1Entry> take_f1() { return std::move(f1_entries_); }
    std::vector<F2Entry> take_f2() { return std::move(f2_entries_); }

private:
    int f1_ceiling() const {
        // failing searches for size-5 patterns in late stages already cost
        // seconds; the stream saturates before that regime
        switch (pair_.kind()) {
        case StructKind::graph: return 4;
        case StructKind::linorder: return 40;
        case StructKind::metric: return 3;
        case StructKind::unary: return 5;
        }
        return 4;
    }

    void widen() {
        // extension counts per stage: graphs 2^n, metric |values|^n, chains
        // and unary models n+1; the frontier ceiling follows
        int ceiling = 64;
        if (metric_) ceiling = 4;
        else if (pair_.kind() == StructKind::graph) ceiling = 12;
        f2_cap_ = std::min(f2_cap_ + 1, ceiling);
        if (metric_) {
            if (band_ + unit_ <= pair_.domain().cap()) band_ += unit_;
            // freshly reachable objects: diameter in (band - unit, band]
            for (int s = 2; s <= std::min(stream_size_ - 1, f1_ceiling()); ++s)
                for (auto& x : sorted_objects(pair_, s, band_))
                    if (x.diameter() > band_ - unit_) enqueue_f1(std::move(x));
        }
        stream_budget_ += 4;
    }

    void enqueue_f1(Structure x) {
        std::string key = canonical_form(x).describe();
        if (!f1_seen_.insert(std::move(key)).second) return;
        F1Entry e;
        e.object = make_ref(std::move(x));
        e.enqueued_step = step_;
        queue_.push_back({false, f1_entries_.size()});
        f1_entries_.push_back(std::move(e));
    }

    void advance_f1_stream() {
        while (stream_budget_ > 0 && stream_size_ <= f1_ceiling()) {
            if (stream_pos_ == 0)
                stream_cache_ = sorted_objects(
                    pair_, stream_size_, metric_ ? std::optional<Rat>(band_) : std::nullopt);
            if (stream_pos_ >= stream_cache_.size()) {
                ++stream_size_;
                stream_pos_ = 0;
                continue;
            }
            enqueue_f1(stream_cache_[stream_pos_++]);
            --stream_budget_;
        }
    }

    void enqueue_f2_for_stage(size_t n) {
        const StructureRef& st = stages_[n];
        if (st->size() > f2_cap_) return;
        if (!metric_) {
            if (f2_done_.count(n)) return;
            f2_done_.insert(n);
            for (auto& f : pair_.one_point_extensions(st)) push_f2(static_cast<int>(n), f);
        } else {
            Rat prev = f2_band_.count(n) ? f2_band_[n] : Rat(0);
            if (!(prev < band_)) return;
            f2_band_[n] = band_;
            for (auto& f : pair_.one_point_extensions(st, band_)) {
                Rat far(0);
                const Structure& y = f.cod();
                int fresh = y.size() - 1;
                for (int v = 0; v < fresh; ++v) far = std::max(far, y.dist(v, fresh));
                if (far > prev) push_f2(static_cast<int>(n), f);
            }
        }
    }

    void push_f2(int n, const Morphism& f) {
        queue_.push_back({true, f2_entries_.size()});
        f2_entries_.push_back(F2Entry{n, f, step_, -1, -1, std::nullopt});
    }

    void replenish() {
        if (queue_.size() < 2) widen();
        stream_budget_ += (step_ % 2 == 0) ? 1 : 0;
        advance_f1_stream();
        for (size_t n = 0; n < stages_.size(); ++n) enqueue_f2_for_stage(n);
    }

    Morphism between(int n, int m) const {
        Morphism acc = Morphism::identity(stages_[static_cast<size_t>(n)]);
        for (int k = n; k < m; ++k) acc = compose(connectors_[static_cast<size_t>(k)], acc);
        return acc;
    }

    void serve() {
        size_t pick = 0;
        if (queue_.size() > 1 && !front_skipped_ && (rng_() & 1)) {
            pick = 1;
            front_skipped_ = true;
        } else {
            front_skipped_ = false;
        }
        Task t = queue_[pick];
        queue_.erase(queue_.begin() + static_cast<long>(pick));

        SequenceK u(stages_, connectors_);
        if (!t.is_f2) {
            F1Entry& e = f1_entries_[t.idx];
            // stages embed forward, so one search in the last stage decides
            // absorption everywhere
            const StructureRef& top = stages_.back();
            std::vector<int> free_partial(static_cast<size_t>(e.object->size()), -1);
            if (auto m = find_embedding(*e.object, *top, free_partial)) {
                e.stage = static_cast<int>(stages_.size()) - 1;
                e.embedding = Morphism(e.object, top, *m, ArrowKind::embedding);
            } else {
                Join j = jep_join(pair_, top, e.object);
                connectors_.push_back(j.left);
                stages_.push_back(j.space);
                e.stage = static_cast<int>(stages_.size()) - 1;
                e.embedding = j.right;
            }
            e.completed_step = step_;
        } else {
            F2Entry& e = f2_entries_[t.idx];
            if (auto hit = check_F2(u, e.stage_n, e.extension)) {
                e.stage_m = hit->first;
                e.completion = hit->second;
            } else {
                const int d = static_cast<int>(stages_.size()) - 1;
                CommutingSquare sq = amalgamate(pair_, e.extension, between(e.stage_n, d));
                connectors_.push_back(sq.cospan_right());
                stages_.push_back(sq.corner_ref());
                e.stage_m = d + 1;
                e.completion = sq.cospan_left();
            }
            e.completed_step = step_;
        }
    }

    const CategoryPair& pair_;
    std::mt19937_64 rng_;
    bool metric_;
    Rat unit_{0}, band_{0};

    std::vector<StructureRef> stages_;
    std::vector<Morphism> connectors_;
    std::vector<F1Entry> f1_entries_;
    std::vector<F2Entry> f2_entries_;
    std::deque<Task> queue_;
    bool front_skipped_ = false;
    int step_ = 0;

    int f2_cap_ = 2;
    std::set<size_t> f2_done_;
    std::map<size_t, Rat> f2_band_;

    int stream_size_ = 0;
    size_t stream_pos_ = 0;
    std::vector<Structure> stream_cache_;
    int stream_budget_ = 2;
    std::set<std::string> f1_seen_;
};

} // namespace

FraisseRun build_fraisse_sequence(const CategoryPair& pair, int steps, unsigned long long seed) {
    if (steps < 0) throw std::invalid_argument("build_fraisse_sequence: negative step count");
    FraisseBuilder b(pair, seed);
    b.run(steps);
    TaskLedger ledger;
    ledger.f1_ = b.take_f1();
    ledger.f2_ = b.take_f2();
    return {b.sequence(), std::move(ledger)};
}

} // namespace fralim
