#include "fralim/unary.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

namespace fralim {

Structure unary_cycle(int n) {
    if (n <= 0) throw std::invalid_argument("unary_cycle: need a positive size");
    std::vector<int> p(static_cast<size_t>(n));
    for (int i = 0; i + 1 < n; ++i) p[static_cast<size_t>(i)] = i + 1;
    p[static_cast<size_t>(n - 1)] = 0;
    return Structure::unary(std::move(p));
}

Structure unary_generated_submodel(const Structure& m, const std::vector<int>& seeds) {
    if (m.kind() != StructKind::unary)
        throw std::invalid_argument("unary_generated_submodel: expects a unary model");
    auto pts = unary_closure(m, seeds);
    if (pts.empty()) return Structure::empty(StructKind::unary);
    return m.induced(pts);
}

namespace {

std::vector<int> identity_map(int n) {
    std::vector<int> m(static_cast<size_t>(n));
    std::iota(m.begin(), m.end(), 0);
    return m;
}

// Glues a onto b along the span: a's points inside the apex image land on
// their b counterparts, the rest get fresh ids. Returns (W, amap).
std::pair<Structure, std::vector<int>> glue_unary(const Morphism& f, const Morphism& g) {
    const Structure& a = f.cod();
    const Structure& b = g.cod();
    std::vector<int> amap(static_cast<size_t>(a.size()), -1);
    for (int x = 0; x < f.dom().size(); ++x) amap[static_cast<size_t>(f(x))] = g(x);
    int next = b.size();
    for (int v = 0; v < a.size(); ++v)
        if (amap[static_cast<size_t>(v)] < 0) amap[static_cast<size_t>(v)] = next++;

    std::vector<int> p(static_cast<size_t>(next), -1);
    for (int v = 0; v < b.size(); ++v) p[static_cast<size_t>(v)] = b.p(v);
    for (int v = 0; v < a.size(); ++v) {
        int w = amap[static_cast<size_t>(v)];
        if (w >= b.size()) p[static_cast<size_t>(w)] = amap[static_cast<size_t>(a.p(v))];
    }
    return {Structure::unary(std::move(p)), std::move(amap)};
}

} // namespace

CommutingSquare unary_free_amalgam(const Morphism& i, const Morphism& j) {
    if (i.dom().kind() != StructKind::unary)
        throw std::invalid_argument("unary_free_amalgam: expects unary models");
    if (!i.is_embedding() || !j.is_embedding())
        throw std::invalid_argument("unary_free_amalgam: both legs must be embeddings");
    // a's carrier survives: glue b onto a
    auto [w, bmap] = glue_unary(j, i);
    auto wr = make_ref(std::move(w));
    Morphism k(i.cod_ref(), wr, identity_map(i.cod().size()), ArrowKind::embedding);
    Morphism l(j.cod_ref(), wr, std::move(bmap), ArrowKind::embedding);
    return CommutingSquare(Span(i, j), std::move(k), std::move(l));
}

CommutingSquare unary_mixed_pushout(const Morphism& f, const Morphism& g) {
    if (f.dom().kind() != StructKind::unary)
        throw std::invalid_argument("unary_mixed_pushout: expects unary models");
    if (!f.is_embedding())
        throw std::invalid_argument("unary_mixed_pushout: left leg must be an embedding");
    auto [w, amap] = glue_unary(f, g);
    auto wr = make_ref(std::move(w));
    Morphism fp = make_arrow(f.cod_ref(), wr, std::move(amap));
    Morphism gp(g.cod_ref(), wr, identity_map(g.cod().size()), ArrowKind::embedding);
    return CommutingSquare(Span(f, g), std::move(fp), std::move(gp));
}

std::vector<Structure> enumerate_unary(int n) {
    if (n < 0) throw std::invalid_argument("enumerate_unary: negative size");
    auto less = [](const Structure& x, const Structure& y) {
        return x.compare_data(y) == std::strong_ordering::less;
    };
    std::set<Structure, decltype(less)> seen(less);
    std::vector<int> p(static_cast<size_t>(n), 0);
    auto rec = [&](auto&& self, int v) -> void {
        if (v == n) {
            seen.insert(canonical_form(Structure::unary(p)));
            return;
        }
        for (int t = 0; t < n; ++t) {
            p[static_cast<size_t>(v)] = t;
            self(self, v + 1);
        }
    };
    if (n == 0)
        seen.insert(Structure::empty(StructKind::unary));
    else
        rec(rec, 0);
    return {seen.begin(), seen.end()};
}

} // namespace fralim
