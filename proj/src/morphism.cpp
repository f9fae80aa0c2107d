#include "fralim/morphism.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace fralim {

std::string arrow_kind_name(ArrowKind k) {
    return k == ArrowKind::embedding ? "embedding" : "hom";
}

namespace {

bool map_shape_ok(const Structure& dom, const Structure& cod, const std::vector<int>& map) {
    if (dom.kind() != cod.kind()) return false;
    if (static_cast<int>(map.size()) != dom.size()) return false;
    for (int x : map)
        if (x < 0 || x >= cod.size()) return false;
    return true;
}

// Constraints between positions u <= v, assuming both are assigned in m.
// embed additionally demands injectivity and reflection of relations.
bool pair_ok(const Structure& dom, const Structure& cod, const std::vector<int>& m,
             int u, int v, bool embed) {
    if (u == v) {
        if (dom.kind() == StructKind::unary && dom.p(v) == v && cod.p(m[v]) != m[v])
            return false;
        return true;
    }
    if (embed && m[u] == m[v]) return false;
    switch (dom.kind()) {
    case StructKind::graph: {
        bool de = dom.adjacent(u, v), ce = cod.adjacent(m[u], m[v]);
        if (de && !ce) return false;
        if (embed && !de && ce) return false;
        return true;
    }
    case StructKind::linorder: {
        bool lt = dom.rank(u) < dom.rank(v);
        int a = lt ? u : v, b = lt ? v : u; // a < b in dom
        if (cod.rank(m[a]) > cod.rank(m[b])) return false;
        if (embed && cod.rank(m[a]) == cod.rank(m[b])) return false;
        return true;
    }
    case StructKind::metric: {
        const Rat& dd = dom.dist(u, v);
        const Rat& cd = cod.dist(m[u], m[v]);
        if (embed) return cd == dd;
        return cd <= dd;
    }
    case StructKind::unary: {
        if (dom.p(u) == v && cod.p(m[u]) != m[v]) return false;
        if (dom.p(v) == u && cod.p(m[v]) != m[u]) return false;
        return true;
    }
    }
    return false;
}

bool full_check(const Structure& dom, const Structure& cod, const std::vector<int>& m,
                bool embed) {
    if (!map_shape_ok(dom, cod, m)) return false;
    for (int v = 0; v < dom.size(); ++v)
        for (int u = 0; u <= v; ++u)
            if (!pair_ok(dom, cod, m, u, v, embed)) return false;
    return true;
}

// Backtracking search over assignments extending `partial` (-1 = free).
// Emits each complete consistent map; returns false from emit to stop early.
template <class Emit>
void search_maps(const Structure& dom, const Structure& cod, std::vector<int> m,
                 bool embed, const Emit& emit) {
    const int n = dom.size();
    bool alive = true;
    auto consistent_up_to = [&](int v) {
        for (int u = 0; u <= v; ++u)
            if (m[u] >= 0 && !pair_ok(dom, cod, m, u, v, embed)) return false;
        return true;
    };
    auto rec = [&](auto&& self, int v) -> void {
        if (!alive) return;
        if (v == n) {
            alive = emit(m);
            return;
        }
        if (m[v] >= 0) {
            if (consistent_up_to(v)) self(self, v + 1);
            return;
        }
        for (int c = 0; c < cod.size() && alive; ++c) {
            m[v] = c;
            if (consistent_up_to(v)) self(self, v + 1);
        }
        m[v] = -1;
    };
    rec(rec, 0);
}

std::vector<int> free_partial(const Structure& dom) {
    return std::vector<int>(static_cast<size_t>(dom.size()), -1);
}

} // namespace

bool is_hom_map(const Structure& dom, const Structure& cod, const std::vector<int>& map) {
    return full_check(dom, cod, map, false);
}

bool is_embedding_map(const Structure& dom, const Structure& cod, const std::vector<int>& map) {
    return full_check(dom, cod, map, true);
}

Morphism::Morphism(StructureRef dom, StructureRef cod, std::vector<int> map, ArrowKind kind)
    : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)), kind_(kind) {
    if (!dom_ || !cod_) throw std::invalid_argument("morphism: null endpoint");
    if (dom_->kind() != cod_->kind())
        throw std::invalid_argument("morphism: mixed structure kinds " +
                                    kind_name(dom_->kind()) + " -> " + kind_name(cod_->kind()));
    if (static_cast<int>(map_.size()) != dom_->size())
        throw std::invalid_argument("morphism: map has " + std::to_string(map_.size()) +
                                    " entries for a domain of size " +
                                    std::to_string(dom_->size()));
    for (int x : map_)
        if (x < 0 || x >= cod_->size())
            throw std::invalid_argument("morphism: image point " + std::to_string(x) +
                                        " outside codomain");
    bool ok = kind_ == ArrowKind::embedding ? is_embedding_map(*dom_, *cod_, map_)
                                            : is_hom_map(*dom_, *cod_, map_);
    if (!ok)
        throw std::invalid_argument("morphism: map is not a valid " + arrow_kind_name(kind_) +
                                    " between the given " + kind_name(dom_->kind()) + "s");
}

Morphism Morphism::identity(StructureRef s) {
    if (!s) throw std::invalid_argument("identity: null structure");
    std::vector<int> m(static_cast<size_t>(s->size()));
    for (int i = 0; i < s->size(); ++i) m[static_cast<size_t>(i)] = i;
    StructureRef cod = s;
    return Morphism(std::move(s), std::move(cod), std::move(m), ArrowKind::embedding);
}

bool Morphism::same_arrow(const Morphism& other) const {
    return map_ == other.map_ && *dom_ == *other.dom_ && *cod_ == *other.cod_;
}

bool Morphism::is_identity() const {
    if (*dom_ != *cod_) return false;
    for (int i = 0; i < dom_->size(); ++i)
        if (map_[static_cast<size_t>(i)] != i) return false;
    return true;
}

bool Morphism::is_surjective() const {
    std::vector<char> hit(static_cast<size_t>(cod_->size()), 0);
    for (int x : map_) hit[static_cast<size_t>(x)] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

std::string Morphism::describe() const {
    std::ostringstream os;
    os << arrow_kind_name(kind_) << " " << dom_->describe() << " -> " << cod_->describe() << " [";
    for (size_t i = 0; i < map_.size(); ++i) {
        if (i) os << " ";
        os << map_[i];
    }
    os << "]";
    return os.str();
}

Morphism compose(const Morphism& g, const Morphism& f) {
    if (f.cod() != g.dom())
        throw std::invalid_argument("compose: codomain of first arrow differs from domain of second");
    std::vector<int> m(static_cast<size_t>(f.dom().size()));
    for (int v = 0; v < f.dom().size(); ++v) m[static_cast<size_t>(v)] = g(f(v));
    ArrowKind k = (f.is_embedding() && g.is_embedding()) ? ArrowKind::embedding : ArrowKind::hom;
    return Morphism(f.dom_ref(), g.cod_ref(), std::move(m), k);
}

Morphism make_arrow(StructureRef dom, StructureRef cod, std::vector<int> map) {
    if (dom && cod && is_embedding_map(*dom, *cod, map))
        return Morphism(std::move(dom), std::move(cod), std::move(map), ArrowKind::embedding);
    return Morphism(std::move(dom), std::move(cod), std::move(map), ArrowKind::hom);
}

std::vector<Morphism> all_homs(const StructureRef& dom, const StructureRef& cod) {
    return all_homs(dom, cod, free_partial(*dom));
}

std::vector<Morphism> all_homs(const StructureRef& dom, const StructureRef& cod,
                               const std::vector<int>& partial) {
    std::vector<Morphism> out;
    search_maps(*dom, *cod, partial, false, [&](const std::vector<int>& m) {
        out.emplace_back(dom, cod, m, is_embedding_map(*dom, *cod, m) ? ArrowKind::embedding
                                                                      : ArrowKind::hom);
        return true;
    });
    return out;
}

int count_homs(const Structure& dom, const Structure& cod, const std::vector<int>& partial,
               int limit) {
    int n = 0;
    search_maps(dom, cod, partial, false, [&](const std::vector<int>&) {
        ++n;
        return n < limit;
    });
    return n;
}

std::vector<Morphism> all_embeddings(const StructureRef& dom, const StructureRef& cod) {
    std::vector<Morphism> out;
    search_maps(*dom, *cod, free_partial(*dom), true, [&](const std::vector<int>& m) {
        out.emplace_back(dom, cod, m, ArrowKind::embedding);
        return true;
    });
    return out;
}

namespace {

// Chains embed into chains greedily: walk the domain in rank order and take
// the least unused target rank above the previous one. Least-first keeps
// maximal room, so greedy failure means no embedding extends the pins.
std::optional<std::vector<int>> chain_embedding(const Structure& dom, const Structure& cod,
                                                const std::vector<int>& partial) {
    const int s = dom.size(), n = cod.size();
    if (s > n) return std::nullopt;
    std::vector<int> out(partial.begin(), partial.end());
    std::vector<char> used(static_cast<size_t>(n), 0);
    for (int v = 0; v < s; ++v) {
        int w = out[static_cast<size_t>(v)];
        if (w < 0) continue;
        if (w >= n || used[static_cast<size_t>(w)]) return std::nullopt;
        used[static_cast<size_t>(w)] = 1;
    }
    std::vector<int> cod_by_rank = cod.by_rank();
    int prev = -1;
    for (int v : dom.by_rank()) {
        if (out[static_cast<size_t>(v)] >= 0) {
            int r = cod.rank(out[static_cast<size_t>(v)]);
            if (r <= prev) return std::nullopt;
            prev = r;
        } else {
            int r = prev + 1;
            while (r < n && used[static_cast<size_t>(cod_by_rank[static_cast<size_t>(r)])]) ++r;
            if (r >= n) return std::nullopt;
            out[static_cast<size_t>(v)] = cod_by_rank[static_cast<size_t>(r)];
            used[static_cast<size_t>(out[static_cast<size_t>(v)])] = 1;
            prev = r;
        }
    }
    return out;
}

} // namespace

std::optional<std::vector<int>> find_embedding(const Structure& dom, const Structure& cod,
                                               const std::vector<int>& partial) {
    if (dom.kind() == StructKind::linorder && cod.kind() == StructKind::linorder)
        return chain_embedding(dom, cod, partial);
    std::optional<std::vector<int>> found;
    search_maps(dom, cod, partial, true, [&](const std::vector<int>& m) {
        found = m;
        return false;
    });
    return found;
}

std::optional<std::vector<int>> find_hom(const Structure& dom, const Structure& cod,
                                         const std::vector<int>& partial) {
    std::optional<std::vector<int>> found;
    search_maps(dom, cod, partial, false, [&](const std::vector<int>& m) {
        found = m;
        return false;
    });
    return found;
}

} // namespace fralim
