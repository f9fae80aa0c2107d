#include "fralim/graphs.hpp"

#include "fralim/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fralim {

Structure complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.push_back({i, j});
    return Structure::graph(n, std::move(e));
}

Structure path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return Structure::graph(n, std::move(e));
}

namespace {

void require_kind(const Morphism& m, const char* who) {
    if (m.dom().kind() != StructKind::graph)
        throw std::invalid_argument(std::string(who) + ": expects graph morphisms");
}

// Renumbering of b's carrier into the glued graph: points hit by j collapse
// onto their i-image, the rest get fresh ids above a's carrier, in b order.
std::vector<int> glue_map(const Morphism& i, const Morphism& j) {
    const Structure& b = j.cod();
    std::vector<int> to_w(static_cast<size_t>(b.size()), -1);
    for (int x = 0; x < i.dom().size(); ++x) to_w[static_cast<size_t>(j(x))] = i(x);
    int next = i.cod().size();
    for (int v = 0; v < b.size(); ++v)
        if (to_w[static_cast<size_t>(v)] < 0) to_w[static_cast<size_t>(v)] = next++;
    return to_w;
}

} // namespace

CommutingSquare graph_free_amalgam(const Morphism& i, const Morphism& j) {
    require_kind(i, "graph_free_amalgam");
    if (!i.is_embedding() || !j.is_embedding())
        throw std::invalid_argument("graph_free_amalgam: both legs must be embeddings");
    Span span(i, j);

    const Structure& a = i.cod();
    const Structure& b = j.cod();
    std::vector<int> bmap = glue_map(i, j);
    int wn = a.size() + b.size() - i.dom().size();

    std::set<std::pair<int, int>> we(a.edges().begin(), a.edges().end());
    for (auto [u, v] : b.edges()) {
        int wu = bmap[static_cast<size_t>(u)], wv = bmap[static_cast<size_t>(v)];
        we.insert({std::min(wu, wv), std::max(wu, wv)});
    }
    auto w = make_ref(Structure::graph(wn, {we.begin(), we.end()}));

    Morphism k = Morphism(i.cod_ref(), w, [&] {
        std::vector<int> m(static_cast<size_t>(a.size()));
        for (int v = 0; v < a.size(); ++v) m[static_cast<size_t>(v)] = v;
        return m;
    }(), ArrowKind::embedding);
    Morphism l(j.cod_ref(), w, std::move(bmap), ArrowKind::embedding);
    return CommutingSquare(std::move(span), std::move(k), std::move(l));
}

CommutingSquare graph_mixed_pushout(const Morphism& f, const Morphism& g, int forbidden_clique) {
    require_kind(f, "graph_mixed_pushout");
    if (!f.is_embedding())
        throw std::invalid_argument("graph_mixed_pushout: left leg must be an embedding");
    Span span(f, g);

    const Structure& a = f.cod();
    const Structure& b = g.cod();

    // a's carrier folded through the span: f(x) lands on g(x), others fresh.
    std::vector<int> amap(static_cast<size_t>(a.size()), -1);
    for (int x = 0; x < f.dom().size(); ++x) amap[static_cast<size_t>(f(x))] = g(x);
    int next = b.size();
    for (int v = 0; v < a.size(); ++v)
        if (amap[static_cast<size_t>(v)] < 0) amap[static_cast<size_t>(v)] = next++;

    std::set<std::pair<int, int>> we(b.edges().begin(), b.edges().end());
    for (auto [u, v] : a.edges()) {
        int wu = amap[static_cast<size_t>(u)], wv = amap[static_cast<size_t>(v)];
        we.insert({std::min(wu, wv), std::max(wu, wv)});
    }
    auto w = make_ref(Structure::graph(next, {we.begin(), we.end()}));

    if (forbidden_clique > 0 && has_clique(*w, forbidden_clique)) {
        std::ostringstream os;
        os << "span apex " << f.dom().describe() << " with legs into " << a.describe() << " and "
           << b.describe() << " glues to " << w->describe() << " containing K"
           << forbidden_clique;
        throw UnsupportedOperation("mixed pushout leaves the clique-free class", os.str());
    }

    Morphism fp = make_arrow(f.cod_ref(), w, std::move(amap));
    Morphism gp = Morphism(g.cod_ref(), w, [&] {
        std::vector<int> m(static_cast<size_t>(b.size()));
        for (int v = 0; v < b.size(); ++v) m[static_cast<size_t>(v)] = v;
        return m;
    }(), ArrowKind::embedding);
    return CommutingSquare(std::move(span), std::move(fp), std::move(gp));
}

std::vector<Structure> enumerate_graphs(int n, int forbidden_clique) {
    if (n < 0) throw std::invalid_argument("enumerate_graphs: negative size");
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.push_back({i, j});
    auto less = [](const Structure& x, const Structure& y) {
        return x.compare_data(y) == std::strong_ordering::less;
    };
    std::set<Structure, decltype(less)> seen(less);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
        std::vector<std::pair<int, int>> e;
        for (size_t s = 0; s < slots.size(); ++s)
            if (mask >> s & 1) e.push_back(slots[s]);
        Structure g = Structure::graph(n, std::move(e));
        if (forbidden_clique > 0 && has_clique(g, forbidden_clique)) continue;
        seen.insert(canonical_form(g));
    }
    return {seen.begin(), seen.end()};
}

} // namespace fralim
