#include "fralim/category.hpp"

#include "fralim/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fralim {

namespace {

std::vector<int> identity_map(int n) {
    std::vector<int> m(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)] = i;
    return m;
}

int index_of(const std::vector<int>& sorted_pts, int x) {
    auto it = std::lower_bound(sorted_pts.begin(), sorted_pts.end(), x);
    return static_cast<int>(it - sorted_pts.begin());
}

} // namespace

CategoryPair::CategoryPair(StructKind k, int fc, std::optional<RadiusDomain> dom)
    : kind_(k), forbidden_clique_(fc), dom_(std::move(dom)) {}

CategoryPair CategoryPair::graphs(int forbidden_clique) {
    if (forbidden_clique < 0 || forbidden_clique == 1)
        throw std::invalid_argument("graphs: forbidden clique size must be 0 or at least 2");
    return CategoryPair(StructKind::graph, forbidden_clique, {});
}

CategoryPair CategoryPair::linorders() {
    return CategoryPair(StructKind::linorder, 0, {});
}

CategoryPair CategoryPair::metrics(RadiusDomain dom) {
    return CategoryPair(StructKind::metric, 0, std::move(dom));
}

CategoryPair CategoryPair::unary_models() {
    return CategoryPair(StructKind::unary, 0, {});
}

const RadiusDomain& CategoryPair::domain() const {
    if (!dom_) throw std::logic_error("domain: not a metric pair");
    return *dom_;
}

bool CategoryPair::admits(const Structure& x) const {
    if (x.kind() != kind_) return false;
    switch (kind_) {
    case StructKind::graph:
        return forbidden_clique_ == 0 || !has_clique(x, forbidden_clique_);
    case StructKind::metric:
        return dom_->admits(x);
    default:
        return true;
    }
}

bool CategoryPair::is_K(const Morphism& m) const {
    return m.is_embedding() && admits(m.dom()) && admits(m.cod());
}

bool CategoryPair::is_L(const Morphism& m) const {
    return admits(m.dom()) && admits(m.cod());
}

std::vector<Structure> CategoryPair::objects(int size) const {
    if (size < 0) throw std::invalid_argument("objects: negative size");
    switch (kind_) {
    case StructKind::graph:
        return enumerate_graphs(size, forbidden_clique_);
    case StructKind::linorder:
        return enumerate_linorders(size);
    case StructKind::unary:
        return enumerate_unary(size);
    case StructKind::metric:
        throw std::invalid_argument("objects: metric enumeration needs a diameter bound");
    }
    return {};
}

std::vector<Structure> CategoryPair::objects(int size, const Rat& diameter_bound) const {
    if (kind_ != StructKind::metric) return objects(size);
    if (size < 0) throw std::invalid_argument("objects: negative size");
    return enumerate_metrics(size, *dom_, diameter_bound);
}

std::vector<Morphism> CategoryPair::one_point_extensions(const StructureRef& x) const {
    if (!x) throw std::invalid_argument("one_point_extensions: null structure");
    if (x->kind() != kind_)
        throw std::invalid_argument("one_point_extensions: structure kind does not match the pair");
    const int n = x->size();
    std::vector<Morphism> out;
    switch (kind_) {
    case StructKind::graph: {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            auto edges = x->edges();
            for (int v = 0; v < n; ++v)
                if (mask & (1u << v)) edges.push_back({v, n});
            Structure y = Structure::graph(n + 1, std::move(edges));
            if (forbidden_clique_ && has_clique(y, forbidden_clique_)) continue;
            out.emplace_back(x, make_ref(std::move(y)), identity_map(n), ArrowKind::embedding);
        }
        break;
    }
    case StructKind::linorder: {
        for (int slot = 0; slot <= n; ++slot) {
            std::vector<int> ranks(static_cast<size_t>(n + 1));
            for (int v = 0; v < n; ++v)
                ranks[static_cast<size_t>(v)] = x->rank(v) + (x->rank(v) >= slot ? 1 : 0);
            ranks[static_cast<size_t>(n)] = slot;
            out.emplace_back(x, make_ref(Structure::linorder(std::move(ranks))),
                             identity_map(n), ArrowKind::embedding);
        }
        break;
    }
    case StructKind::unary: {
        for (int t = 0; t <= n; ++t) {
            auto p = x->p_table();
            p.push_back(t);
            out.emplace_back(x, make_ref(Structure::unary(std::move(p))), identity_map(n),
                             ArrowKind::embedding);
        }
        break;
    }
    case StructKind::metric:
        throw std::invalid_argument("one_point_extensions: metric extensions need a distance bound");
    }
    return out;
}

std::vector<Morphism> CategoryPair::one_point_extensions(const StructureRef& x,
                                                         const Rat& metric_bound) const {
    if (kind_ != StructKind::metric) return one_point_extensions(x);
    if (!x) throw std::invalid_argument("one_point_extensions: null structure");
    if (x->kind() != kind_)
        throw std::invalid_argument("one_point_extensions: structure kind does not match the pair");
    const int n = x->size();
    const std::vector<Rat> values = dom_->values_up_to(metric_bound);
    std::vector<Morphism> out;
    std::vector<Rat> d(static_cast<size_t>(n), Rat(0));
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n) {
            std::vector<std::vector<Rat>> m(static_cast<size_t>(n + 1),
                                            std::vector<Rat>(static_cast<size_t>(n + 1), Rat(0)));
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v) m[static_cast<size_t>(u)][static_cast<size_t>(v)] = x->dist(u, v);
            for (int u = 0; u < n; ++u) {
                m[static_cast<size_t>(u)][static_cast<size_t>(n)] = d[static_cast<size_t>(u)];
                m[static_cast<size_t>(n)][static_cast<size_t>(u)] = d[static_cast<size_t>(u)];
            }
            out.emplace_back(x, make_ref(Structure::metric(std::move(m))), identity_map(n),
                             ArrowKind::embedding);
            return;
        }
        for (const Rat& v : values) {
            bool ok = true;
            for (int j = 0; j < i && ok; ++j) {
                const Rat& dj = d[static_cast<size_t>(j)];
                const Rat& ij = x->dist(i, j);
                ok = ij <= v + dj && v <= ij + dj && dj <= ij + v;
            }
            if (!ok) continue;
            d[static_cast<size_t>(i)] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

std::string CategoryPair::describe() const {
    switch (kind_) {
    case StructKind::graph:
        return forbidden_clique_ ? "K" + std::to_string(forbidden_clique_) + "-free graphs"
                                 : "graphs";
    case StructKind::linorder:
        return "linear orders";
    case StructKind::metric:
        return "metric spaces over " + dom_->describe();
    case StructKind::unary:
        return "unary models";
    }
    return "?";
}

CommutingSquare amalgamate(const CategoryPair& pair, const Morphism& i, const Morphism& j) {
    if (!pair.is_K(i) || !pair.is_K(j))
        throw std::invalid_argument("amalgamate: both legs must be embeddings between class objects");
    switch (pair.kind()) {
    case StructKind::graph:
        return graph_free_amalgam(i, j);
    case StructKind::linorder:
        return linorder_free_amalgam(i, j);
    case StructKind::metric:
        return metric_free_amalgam(i, j, pair.domain());
    case StructKind::unary:
        return unary_free_amalgam(i, j);
    }
    throw std::logic_error("amalgamate: unreachable");
}

CommutingSquare mixed_pushout(const CategoryPair& pair, const Morphism& f, const Morphism& g) {
    if (!pair.is_K(f))
        throw std::invalid_argument("mixed_pushout: f must be an embedding between class objects");
    if (!pair.is_L(g))
        throw std::invalid_argument("mixed_pushout: g must connect class objects");
    switch (pair.kind()) {
    case StructKind::graph:
        return graph_mixed_pushout(f, g, pair.forbidden_clique());
    case StructKind::linorder:
        // Already the span of one-point extensions {c} -> {c<x}, {c} -> {c<y}
        // has no pushout: the corner fixes the order of x against y, yet
        // commuting cocones realize both orders.
        throw UnsupportedOperation("linear orders have no mixed pushouts",
                                   "span " + f.describe() + " against " + g.describe());
    case StructKind::metric:
        return metric_mixed_pushout(f, g, pair.domain().cap());
    case StructKind::unary:
        return unary_mixed_pushout(f, g);
    }
    throw std::logic_error("mixed_pushout: unreachable");
}

namespace {

// Cocone targets for the universal property check, one per isomorphism class,
// every size up to the bound. Cached: the acceptance sweeps re-verify many
// squares over the same class.
std::vector<StructureRef> pushout_targets(const CategoryPair& pair, const CommutingSquare& square,
                                          int size_bound) {
    std::ostringstream key;
    key << pair.describe() << "|" << size_bound;
    std::vector<Rat> values;
    if (pair.kind() == StructKind::metric) {
        const RadiusDomain& dom = pair.domain();
        std::set<Rat> base;
        auto collect = [&](const Structure& s) {
            for (int u = 0; u < s.size(); ++u)
                for (int v = u + 1; v < s.size(); ++v) base.insert(s.dist(u, v));
        };
        collect(square.span().apex());
        collect(square.span().left().cod());
        collect(square.span().right().cod());
        collect(square.corner());
        if (base.empty()) base.insert(dom.least_value_at_least(Rat(1)));
        Rat maxd = *base.rbegin();
        Rat bound = maxd + maxd;
        if (dom.cap() && *dom.cap() < bound) bound = *dom.cap();
        if (dom.dense()) {
            // dense domains cannot be enumerated; the grid of the square's own
            // distances and their pairwise sums carries every comparison a
            // mediating map is subject to
            std::set<Rat> closed = base;
            for (const Rat& x : base)
                for (const Rat& y : base) {
                    Rat s = x + y;
                    if (dom.cap() && *dom.cap() < s) s = *dom.cap();
                    closed.insert(s);
                }
            for (const Rat& v : closed)
                if (v <= bound) values.push_back(v);
        } else {
            values = dom.values_up_to(bound);
        }
        for (const Rat& v : values) key << "," << to_string(v);
    }

    static std::mutex lock;
    static std::map<std::string, std::vector<StructureRef>> cache;
    std::lock_guard<std::mutex> guard(lock);
    auto [it, fresh] = cache.try_emplace(key.str());
    if (fresh) {
        for (int n = 0; n <= size_bound; ++n) {
            std::vector<Structure> layer = pair.kind() == StructKind::metric
                                               ? enumerate_metrics(n, values)
                                               : pair.objects(n);
            for (Structure& s : layer) it->second.push_back(make_ref(std::move(s)));
        }
    }
    return it->second;
}

} // namespace

PushoutReport verify_pushout_universal(const CategoryPair& pair, const CommutingSquare& square,
                                       int size_bound) {
    const Morphism& f = square.span().left();
    const Morphism& g = square.span().right();
    const Morphism& fp = square.cospan_left();
    const Morphism& gp = square.cospan_right();
    const StructureRef a = f.cod_ref();
    const StructureRef b = g.cod_ref();
    const StructureRef w = square.corner_ref();
    const int apex_size = square.span().apex().size();

    for (const StructureRef& t : pushout_targets(pair, square, size_bound)) {
        for (const Morphism& p : all_homs(a, t)) {
            std::vector<int> qpart(static_cast<size_t>(b->size()), -1);
            bool consistent = true;
            for (int z = 0; z < apex_size && consistent; ++z) {
                int slot = g(z), want = p(f(z));
                if (qpart[static_cast<size_t>(slot)] >= 0)
                    consistent = qpart[static_cast<size_t>(slot)] == want;
                else
                    qpart[static_cast<size_t>(slot)] = want;
            }
            if (!consistent) continue;
            for (const Morphism& q : all_homs(b, t, qpart)) {
                std::vector<int> hpart(static_cast<size_t>(w->size()), -1);
                bool clash = false;
                auto force = [&](int slot, int val) {
                    int& cell = hpart[static_cast<size_t>(slot)];
                    if (cell >= 0 && cell != val) clash = true;
                    cell = val;
                };
                for (int v = 0; v < a->size() && !clash; ++v) force(fp(v), p(v));
                for (int v = 0; v < b->size() && !clash; ++v) force(gp(v), q(v));
                int count = clash ? 0 : count_homs(*w, *t, hpart, 2);
                if (count != 1) {
                    PushoutReport r;
                    r.ok = false;
                    r.target = *t;
                    r.cocone_left = p;
                    r.cocone_right = q;
                    r.mediating_count = count;
                    r.detail = std::string("cocone into ") + t->describe() + " admits " +
                               (count == 0 ? "no mediating map" : "more than one mediating map");
                    return r;
                }
            }
        }
    }
    return {};
}

std::vector<Morphism> decompose_into_primitives(const CategoryPair& pair, const Morphism& f) {
    if (!pair.is_K(f))
        throw std::invalid_argument("decompose_into_primitives: not an embedding between class objects");
    const Structure& b = f.cod();
    std::vector<char> hit(static_cast<size_t>(b.size()), 0);
    for (int x : f.map()) hit[static_cast<size_t>(x)] = 1;

    // one chunk per step; unary chunks drag the whole orbit of their generator
    std::vector<std::vector<int>> chunks;
    if (pair.kind() == StructKind::unary) {
        auto have = hit;
        for (int m = 0; m < b.size(); ++m) {
            if (have[static_cast<size_t>(m)]) continue;
            std::vector<int> chunk;
            for (int cur = m; !have[static_cast<size_t>(cur)]; cur = b.p(cur)) {
                have[static_cast<size_t>(cur)] = 1;
                chunk.push_back(cur);
            }
            chunks.push_back(std::move(chunk));
        }
    } else {
        for (int m = 0; m < b.size(); ++m)
            if (!hit[static_cast<size_t>(m)]) chunks.push_back({m});
    }

    if (chunks.empty()) {
        if (f.is_identity()) return {};
        return {f};
    }
    if (chunks.size() == 1) return {f};

    std::vector<int> pts;
    for (int x = 0; x < b.size(); ++x)
        if (hit[static_cast<size_t>(x)]) pts.push_back(x);

    std::vector<Morphism> out;
    StructureRef cur_dom = f.dom_ref();
    std::vector<int> cur_to_b = f.map();
    for (size_t ci = 0; ci + 1 < chunks.size(); ++ci) {
        pts.insert(pts.end(), chunks[ci].begin(), chunks[ci].end());
        std::sort(pts.begin(), pts.end());
        StructureRef mid = make_ref(b.induced(pts));
        std::vector<int> step(cur_to_b.size());
        for (size_t x = 0; x < cur_to_b.size(); ++x)
            step[x] = index_of(pts, cur_to_b[x]);
        out.emplace_back(cur_dom, mid, std::move(step), ArrowKind::embedding);
        cur_dom = mid;
        cur_to_b = pts;
    }
    out.emplace_back(cur_dom, f.cod_ref(), cur_to_b, ArrowKind::embedding);
    return out;
}

} // namespace fralim
