#include "fralim/linorder.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fralim {

Structure chain(int n) {
    std::vector<int> r(static_cast<size_t>(n));
    std::iota(r.begin(), r.end(), 0);
    return Structure::linorder(std::move(r));
}

namespace {

void require_order(const Morphism& m, const char* who) {
    if (m.dom().kind() != StructKind::linorder)
        throw std::invalid_argument(std::string(who) + ": expects linear order morphisms");
}

std::vector<int> identity_map(int n) {
    std::vector<int> m(static_cast<size_t>(n));
    std::iota(m.begin(), m.end(), 0);
    return m;
}

// Inverse of an embedding's map on its image: image id -> apex id, else -1.
std::vector<int> image_inverse(const Morphism& e) {
    std::vector<int> inv(static_cast<size_t>(e.cod().size()), -1);
    for (int x = 0; x < e.dom().size(); ++x) inv[static_cast<size_t>(e(x))] = x;
    return inv;
}

Structure order_from_lt(const std::vector<std::vector<char>>& lt) {
    const int n = static_cast<int>(lt.size());
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            if (lt[x][y] == lt[y][x])
                throw std::logic_error("assembled order is not total/antisymmetric");
            for (int z = 0; z < n; ++z) {
                if (z == x || z == y) continue;
                if (lt[x][y] && lt[y][z] && !lt[x][z])
                    throw std::logic_error("assembled order is not transitive");
            }
        }
    std::vector<int> ranks(static_cast<size_t>(n), 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (lt[y][x]) ++ranks[static_cast<size_t>(x)];
    return Structure::linorder(std::move(ranks));
}

} // namespace

CommutingSquare linorder_free_amalgam(const Morphism& i, const Morphism& j) {
    require_order(i, "linorder_free_amalgam");
    if (!i.is_embedding() || !j.is_embedding())
        throw std::invalid_argument("linorder_free_amalgam: both legs must be embeddings");
    Span span(i, j);

    const Structure& c = i.dom();
    const Structure& a = i.cod();
    const Structure& b = j.cod();
    auto jinv = image_inverse(j);

    // Sort key: (apex gap, side, native rank); a's points precede b's new
    // points inside a gap.
    auto gap_a = [&](int u) {
        int g = 0;
        for (int x = 0; x < c.size(); ++x)
            if (a.rank(i(x)) <= a.rank(u)) ++g;
        return g;
    };
    auto gap_b = [&](int q) {
        int g = 0;
        for (int x = 0; x < c.size(); ++x)
            if (b.rank(j(x)) <= b.rank(q)) ++g;
        return g;
    };

    int wn = a.size() + b.size() - c.size();
    std::vector<int> bmap(static_cast<size_t>(b.size()), -1);
    int next = a.size();
    for (int q = 0; q < b.size(); ++q)
        bmap[static_cast<size_t>(q)] = jinv[static_cast<size_t>(q)] >= 0
                                           ? i(jinv[static_cast<size_t>(q)])
                                           : next++;

    struct Key {
        int gap, side, rank, wid;
    };
    std::vector<Key> keys;
    for (int u = 0; u < a.size(); ++u) keys.push_back({gap_a(u), 0, a.rank(u), u});
    for (int q = 0; q < b.size(); ++q)
        if (jinv[static_cast<size_t>(q)] < 0)
            keys.push_back({gap_b(q), 1, b.rank(q), bmap[static_cast<size_t>(q)]});
    std::sort(keys.begin(), keys.end(), [](const Key& x, const Key& y) {
        return std::tie(x.gap, x.side, x.rank) < std::tie(y.gap, y.side, y.rank);
    });
    std::vector<int> ranks(static_cast<size_t>(wn));
    for (size_t pos = 0; pos < keys.size(); ++pos)
        ranks[static_cast<size_t>(keys[pos].wid)] = static_cast<int>(pos);

    auto w = make_ref(Structure::linorder(std::move(ranks)));
    Morphism k(i.cod_ref(), w, identity_map(a.size()), ArrowKind::embedding);
    Morphism l(j.cod_ref(), w, std::move(bmap), ArrowKind::embedding);
    return CommutingSquare(std::move(span), std::move(k), std::move(l));
}

MixedAmalgamResult linorder_mixed_amalgam(const Morphism& i, const Morphism& f) {
    require_order(i, "linorder_mixed_amalgam");
    if (!i.is_embedding())
        throw std::invalid_argument("linorder_mixed_amalgam: i must be an embedding");
    if (i.dom() != f.dom())
        throw std::invalid_argument("linorder_mixed_amalgam: legs must share their apex");
    const Structure& c = i.dom();
    const Structure& a = i.cod();
    const Structure& b = f.cod();
    if (a.size() != c.size() + 1)
        throw std::invalid_argument("linorder_mixed_amalgam: i must add exactly one point");

    auto iinv = image_inverse(i);
    int ap = -1;
    for (int v = 0; v < a.size(); ++v)
        if (iinv[static_cast<size_t>(v)] < 0) ap = v;

    bool has_lo = false, has_hi = false;
    int lo = -1, hi = -1; // b ids bounding the new point from below/above
    for (int x = 0; x < c.size(); ++x) {
        if (a.rank(i(x)) < a.rank(ap)) {
            if (!has_lo || b.rank(f(x)) > b.rank(lo)) lo = f(x);
            has_lo = true;
        } else {
            if (!has_hi || b.rank(f(x)) < b.rank(hi)) hi = f(x);
            has_hi = true;
        }
    }

    if (has_lo && has_hi && lo == hi) {
        // the bounds pinch: reuse that point of B
        std::vector<int> g(static_cast<size_t>(a.size()));
        for (int x = 0; x < c.size(); ++x) g[static_cast<size_t>(i(x))] = f(x);
        g[static_cast<size_t>(ap)] = lo;
        Morphism extend(i.cod_ref(), f.cod_ref(), std::move(g), ArrowKind::hom);
        Morphism include = Morphism::identity(f.cod_ref());
        return {std::move(extend), std::move(include)};
    }

    // fresh point at the least admissible slot: right above lo, else bottom
    int slot = has_lo ? b.rank(lo) + 1 : 0;
    std::vector<int> ranks(static_cast<size_t>(b.size() + 1));
    for (int q = 0; q < b.size(); ++q)
        ranks[static_cast<size_t>(q)] = b.rank(q) + (b.rank(q) >= slot ? 1 : 0);
    ranks[static_cast<size_t>(b.size())] = slot;
    auto w = make_ref(Structure::linorder(std::move(ranks)));

    std::vector<int> g(static_cast<size_t>(a.size()));
    for (int x = 0; x < c.size(); ++x) g[static_cast<size_t>(i(x))] = f(x);
    g[static_cast<size_t>(ap)] = b.size();
    Morphism extend(i.cod_ref(), w, std::move(g), ArrowKind::hom);
    Morphism include(f.cod_ref(), w, identity_map(b.size()), ArrowKind::embedding);
    return {std::move(extend), std::move(include)};
}

AmalgamExtension linorder_amalgamated_extension(const Morphism& f, const Morphism& g,
                                                const Morphism& iA, const Morphism& iB) {
    require_order(f, "linorder_amalgamated_extension");
    if (!iA.is_embedding() || !iB.is_embedding())
        throw std::invalid_argument("linorder_amalgamated_extension: apex legs must embed");
    if (iA.dom() != iB.dom())
        throw std::invalid_argument("linorder_amalgamated_extension: apex mismatch");
    if (f.dom() != iA.cod() || g.dom() != iB.cod())
        throw std::invalid_argument("linorder_amalgamated_extension: maps must start at the extensions");
    if (f.cod() != g.cod())
        throw std::invalid_argument("linorder_amalgamated_extension: maps must share their target");
    if (!compose(f, iA).same_arrow(compose(g, iB)))
        throw std::invalid_argument("linorder_amalgamated_extension: maps disagree on the apex");

    const Structure& c = iA.dom();
    const Structure& a = f.dom();
    const Structure& b = g.dom();
    const Structure& t = f.cod();
    auto ia_inv = image_inverse(iA);
    auto ib_inv = image_inverse(iB);

    // carrier: all of a, then b's new points in ascending id order
    std::vector<int> bmap(static_cast<size_t>(b.size()), -1);
    int next = a.size();
    for (int q = 0; q < b.size(); ++q)
        bmap[static_cast<size_t>(q)] = ib_inv[static_cast<size_t>(q)] >= 0
                                           ? iA(ib_inv[static_cast<size_t>(q)])
                                           : next++;
    const int wn = next;

    std::vector<int> wb_origin(static_cast<size_t>(wn), -1); // fresh wid -> b id
    for (int q = 0; q < b.size(); ++q)
        if (ib_inv[static_cast<size_t>(q)] < 0) wb_origin[static_cast<size_t>(bmap[static_cast<size_t>(q)])] = q;

    // u (a id, outside the apex) below q (b id, outside the apex)?
    auto cross_below = [&](int u, int q) {
        const int fu = t.rank(f(u));
        const int gq = t.rank(g(q));
        if (fu != gq) return fu < gq;
        for (int x = 0; x < c.size(); ++x)
            if (a.rank(u) < a.rank(iA(x)) && b.rank(iB(x)) < b.rank(q)) return true;
        return false;
    };

    std::vector<std::vector<char>> lt(static_cast<size_t>(wn),
                                      std::vector<char>(static_cast<size_t>(wn), 0));
    auto set_lt = [&](int x, int y) { lt[static_cast<size_t>(x)][static_cast<size_t>(y)] = 1; };
    for (int x = 0; x < wn; ++x)
        for (int y = 0; y < wn; ++y) {
            if (x == y) continue;
            bool xa = x < a.size(), ya = y < a.size();
            if (xa && ya) {
                if (a.rank(x) < a.rank(y)) set_lt(x, y);
            } else if (!xa && !ya) {
                if (b.rank(wb_origin[static_cast<size_t>(x)]) <
                    b.rank(wb_origin[static_cast<size_t>(y)]))
                    set_lt(x, y);
            } else if (xa && !ya) {
                int q = wb_origin[static_cast<size_t>(y)];
                if (ia_inv[static_cast<size_t>(x)] >= 0) {
                    if (b.rank(iB(ia_inv[static_cast<size_t>(x)])) < b.rank(q)) set_lt(x, y);
                } else if (cross_below(x, q)) {
                    set_lt(x, y);
                }
            }
        }
    // orient everything still open: the b point goes below iff the a point
    // is not below it
    for (int x = 0; x < wn; ++x)
        for (int y = x + 1; y < wn; ++y)
            if (!lt[static_cast<size_t>(x)][static_cast<size_t>(y)] &&
                !lt[static_cast<size_t>(y)][static_cast<size_t>(x)]) {
                // only mixed pairs can still be open, and only when the a
                // point is not below the b point
                bool xa = x < a.size();
                int u = xa ? x : y, w = xa ? y : x;
                int q = wb_origin[static_cast<size_t>(w)];
                bool u_below = ia_inv[static_cast<size_t>(u)] >= 0
                                   ? b.rank(iB(ia_inv[static_cast<size_t>(u)])) < b.rank(q)
                                   : cross_below(u, q);
                if (u_below)
                    set_lt(u, w);
                else
                    set_lt(w, u);
            }

    auto W = make_ref(order_from_lt(lt));

    std::vector<int> hmap(static_cast<size_t>(wn));
    for (int v = 0; v < a.size(); ++v) hmap[static_cast<size_t>(v)] = f(v);
    for (int v = a.size(); v < wn; ++v)
        hmap[static_cast<size_t>(v)] = g(wb_origin[static_cast<size_t>(v)]);

    Morphism into_target(W, f.cod_ref(), std::move(hmap), ArrowKind::hom);
    Morphism from_left(f.dom_ref(), W, identity_map(a.size()), ArrowKind::embedding);
    Morphism from_right(g.dom_ref(), W, std::move(bmap), ArrowKind::embedding);
    return {std::move(into_target), std::move(from_left), std::move(from_right)};
}

Morphism linorder_left_inverse(const Morphism& j) {
    require_order(j, "linorder_left_inverse");
    if (!j.is_embedding())
        throw std::invalid_argument("linorder_left_inverse: expects an embedding");
    const Structure& a = j.dom();
    const Structure& b = j.cod();
    if (a.size() == 0) {
        if (b.size() > 0)
            throw std::invalid_argument("linorder_left_inverse: empty order has no retraction");
        return Morphism(j.cod_ref(), j.dom_ref(), {}, ArrowKind::embedding);
    }

    int bottom = 0;
    for (int v = 0; v < a.size(); ++v)
        if (a.rank(v) < a.rank(bottom)) bottom = v;

    std::vector<int> r(static_cast<size_t>(b.size()));
    for (int q = 0; q < b.size(); ++q) {
        int best = -1;
        for (int v = 0; v < a.size(); ++v)
            if (b.rank(j(v)) <= b.rank(q) && (best < 0 || a.rank(v) > a.rank(best))) best = v;
        r[static_cast<size_t>(q)] = best >= 0 ? best : bottom;
    }
    return make_arrow(j.cod_ref(), j.dom_ref(), std::move(r));
}

std::vector<Structure> enumerate_linorders(int n) {
    if (n < 0) throw std::invalid_argument("enumerate_linorders: negative size");
    return {chain(n)};
}

} // namespace fralim
