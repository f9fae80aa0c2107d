#include "fralim/injectivity.hpp"

#include "fralim/errors.hpp"
#include "fralim/feasibility.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fralim {

namespace {

std::vector<int> identity_map(int n) {
    std::vector<int> m(static_cast<size_t>(n));
    std::iota(m.begin(), m.end(), 0);
    return m;
}

// k-subsets of {0..n-1} in lexicographic order; callers iterate k ascending.
bool next_combination(std::vector<int>& c, int n) {
    const int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[static_cast<size_t>(i)] < n - k + i) {
            ++c[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                c[static_cast<size_t>(j)] = c[static_cast<size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

std::vector<int> first_combination(int k) { return identity_map(k); }

// position 0 most significant, so tuples come out in ascending lexicographic
// order
bool next_odometer(std::vector<int>& idx, int base) {
    for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
        if (++idx[static_cast<size_t>(i)] < base) return true;
        idx[static_cast<size_t>(i)] = 0;
    }
    return false;
}

bool pairwise_compatible(const Structure& x, const std::vector<int>& centers,
                         const std::vector<Rat>& radii, bool triangle) {
    for (size_t i = 0; i < centers.size(); ++i)
        for (size_t j = i + 1; j < centers.size(); ++j) {
            const Rat& d = x.dist(centers[i], centers[j]);
            if (radii[i] + radii[j] < d) return false;
            if (triangle && (radii[i] - radii[j] > d || radii[j] - radii[i] > d)) return false;
        }
    return true;
}

bool intersection_empty(const Structure& x, const std::vector<int>& centers,
                        const std::vector<Rat>& radii) {
    for (int y = 0; y < x.size(); ++y) {
        bool inside = true;
        for (size_t i = 0; i < centers.size(); ++i)
            if (x.dist(y, centers[i]) > radii[i]) {
                inside = false;
                break;
            }
        if (inside) return false;
    }
    return true;
}

// Exact search over escape-coordinate choices: every carrier point must fall
// outside some ball, and which ball it escapes is the only discrete freedom.
// triangle additionally forces |r_a - r_b| <= d_ab so the radii form a valid
// one-point extension.
std::optional<std::vector<Rat>> dense_violating_radii(const Structure& x, const RadiusDomain& s,
                                                      const std::vector<int>& centers,
                                                      bool triangle) {
    const int k = static_cast<int>(centers.size());
    std::vector<LinearConstraint> base;
    for (int a = 0; a < k; ++a) {
        LinearConstraint pos;
        pos.coeffs.assign(static_cast<size_t>(a) + 1, Rat(0));
        pos.coeffs[static_cast<size_t>(a)] = Rat(-1);
        pos.bound = Rat(0);
        pos.strict = true; // r_a > 0
        base.push_back(std::move(pos));
        if (s.cap()) {
            LinearConstraint cap;
            cap.coeffs.assign(static_cast<size_t>(a) + 1, Rat(0));
            cap.coeffs[static_cast<size_t>(a)] = Rat(1);
            cap.bound = *s.cap();
            base.push_back(std::move(cap));
        }
    }
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            const Rat& d = x.dist(centers[static_cast<size_t>(a)], centers[static_cast<size_t>(b)]);
            LinearConstraint sum; // r_a + r_b >= d
            sum.coeffs.assign(static_cast<size_t>(b) + 1, Rat(0));
            sum.coeffs[static_cast<size_t>(a)] = Rat(-1);
            sum.coeffs[static_cast<size_t>(b)] = Rat(-1);
            sum.bound = -d;
            base.push_back(std::move(sum));
            if (triangle) {
                for (int sign = 0; sign < 2; ++sign) {
                    LinearConstraint tri; // |r_a - r_b| <= d
                    tri.coeffs.assign(static_cast<size_t>(b) + 1, Rat(0));
                    tri.coeffs[static_cast<size_t>(a)] = sign ? Rat(-1) : Rat(1);
                    tri.coeffs[static_cast<size_t>(b)] = sign ? Rat(1) : Rat(-1);
                    tri.bound = d;
                    base.push_back(std::move(tri));
                }
            }
        }

    // valid escape choices per carrier point: a point never escapes a ball it
    // centers
    const int n = x.size();
    std::vector<std::vector<int>> choices(static_cast<size_t>(n));
    for (int y = 0; y < n; ++y)
        for (int a = 0; a < k; ++a)
            if (x.dist(y, centers[static_cast<size_t>(a)]) > Rat(0))
                choices[static_cast<size_t>(y)].push_back(a);

    std::vector<int> pick(static_cast<size_t>(n), 0);
    while (true) {
        std::vector<LinearConstraint> rows = base;
        for (int y = 0; y < n; ++y) {
            int a = choices[static_cast<size_t>(y)][static_cast<size_t>(pick[static_cast<size_t>(y)])];
            LinearConstraint esc; // r_a < d(y, center_a)
            esc.coeffs.assign(static_cast<size_t>(a) + 1, Rat(0));
            esc.coeffs[static_cast<size_t>(a)] = Rat(1);
            esc.bound = x.dist(y, centers[static_cast<size_t>(a)]);
            esc.strict = true;
            rows.push_back(std::move(esc));
        }
        if (auto pt = feasible_point(k, rows)) return pt;
        bool more = false;
        for (int i = n - 1; i >= 0; --i) {
            if (++pick[static_cast<size_t>(i)] <
                static_cast<int>(choices[static_cast<size_t>(i)].size())) {
                more = true;
                break;
            }
            pick[static_cast<size_t>(i)] = 0;
        }
        if (!more) break;
    }
    return std::nullopt;
}

// Radii above the diameter never matter: clamping any larger radius to the
// least admissible value covering the diameter preserves both the pairwise
// sums and the empty intersection, so this grid is exhaustive.
std::vector<Rat> radius_grid(const Structure& x, const RadiusDomain& s) {
    Rat diam = x.diameter();
    std::vector<Rat> grid = s.values_up_to(diam);
    if (!s.cap() || diam <= *s.cap()) {
        Rat v = s.least_value_at_least(diam);
        if (grid.empty() || grid.back() != v) grid.push_back(v);
    }
    return grid;
}

std::optional<std::vector<Rat>> grid_violating_radii(const Structure& x, const RadiusDomain& s,
                                                     const std::vector<int>& centers,
                                                     bool triangle) {
    std::vector<Rat> grid = radius_grid(x, s);
    if (grid.empty()) return std::nullopt;
    const int k = static_cast<int>(centers.size());
    std::vector<int> idx(static_cast<size_t>(k), 0);
    do {
        std::vector<Rat> radii;
        radii.reserve(static_cast<size_t>(k));
        for (int a = 0; a < k; ++a) radii.push_back(grid[static_cast<size_t>(idx[static_cast<size_t>(a)])]);
        if (pairwise_compatible(x, centers, radii, triangle) &&
            intersection_empty(x, centers, radii))
            return radii;
    } while (next_odometer(idx, static_cast<int>(grid.size())));
    return std::nullopt;
}

std::optional<std::vector<Rat>> violating_radii(const Structure& x, const RadiusDomain& s,
                                                const std::vector<int>& centers, bool triangle) {
    auto radii = s.dense() ? dense_violating_radii(x, s, centers, triangle)
                           : grid_violating_radii(x, s, centers, triangle);
    if (!radii) return std::nullopt;
    for (const Rat& r : *radii)
        if (!s.contains(r)) throw std::logic_error("violating_radii: radius left the domain");
    if (!pairwise_compatible(x, centers, *radii, triangle) ||
        !intersection_empty(x, centers, *radii))
        throw std::logic_error("violating_radii: witness failed the exact recheck");
    return radii;
}

void require_metric(const Structure& x, const RadiusDomain& s, const char* who) {
    if (x.kind() != StructKind::metric)
        throw std::invalid_argument(std::string(who) + ": metric space required");
    if (!s.admits(x))
        throw std::invalid_argument(std::string(who) + ": space has distances outside the domain");
}

// One primitive K-arrow per extension shape out of c: one extra point, except
// that a unary generator drags its whole orbit chain along.
std::vector<Morphism> primitive_K_legs(const CategoryPair& pair, const StructureRef& c,
                                       int max_size) {
    if (pair.kind() != StructKind::unary) {
        if (c->size() + 1 > max_size) return {};
        return pair.one_point_extensions(c);
    }
    std::vector<Morphism> out;
    const int n = c->size();
    for (int t = 1; n + t <= max_size; ++t) {
        for (int target = 0; target < n + t; ++target) {
            std::vector<int> img = c->p_table();
            for (int i = 0; i < t - 1; ++i) img.push_back(n + i + 1);
            img.push_back(target);
            out.emplace_back(c, make_ref(Structure::unary(std::move(img))), identity_map(n),
                             ArrowKind::embedding);
        }
    }
    return out;
}

// g: B -> W hom and h: A -> W embedding with g.j = h.f, over class objects up
// to corner_bound points. A mixed pushout corner never needs more than
// |B| + |A| - |C| points, so the bound loses nothing.
bool span_completes(const CategoryPair& pair, const Morphism& j, const Morphism& f,
                    int corner_bound) {
    const Structure& b = j.cod();
    const Structure& a = f.cod();
    const int lo = std::max(1, a.size());
    for (int sw = lo; sw <= corner_bound; ++sw) {
        for (Structure& w : pair.objects(sw)) {
            auto wref = make_ref(std::move(w));
            for (const Morphism& h : all_embeddings(f.cod_ref(), wref)) {
                std::vector<int> partial(static_cast<size_t>(b.size()), -1);
                for (int v = 0; v < j.dom().size(); ++v) partial[static_cast<size_t>(j(v))] = h(f(v));
                if (find_hom(b, *wref, partial)) return true;
            }
        }
    }
    return false;
}

// All class extensions of x by exactly m labelled fresh points (old ids and
// relations untouched). Relational kinds chain one-point extensions; unary
// models need the direct table sweep because orbit chains are not reachable
// one closed point at a time.
std::vector<StructureRef> class_extensions(const CategoryPair& pair, const Structure& x, int m) {
    std::vector<StructureRef> level = {make_ref(x)};
    if (pair.kind() == StructKind::unary) {
        std::vector<StructureRef> out;
        const int n = x.size();
        std::vector<int> idx(static_cast<size_t>(m), 0);
        do {
            std::vector<int> img = x.p_table();
            img.insert(img.end(), idx.begin(), idx.end());
            out.push_back(make_ref(Structure::unary(std::move(img))));
        } while (next_odometer(idx, n + m));
        return out;
    }
    for (int step = 0; step < m; ++step) {
        std::vector<StructureRef> next;
        for (const StructureRef& s : level)
            for (const Morphism& e : pair.one_point_extensions(s)) next.push_back(e.cod_ref());
        level = std::move(next);
    }
    return level;
}

// subsets that name honest substructures: everything for relational kinds,
// P-closed sets for unary models
bool substructure_subset(const Structure& x, const std::vector<int>& s) {
    if (x.kind() != StructKind::unary) return true;
    return unary_closure(x, s) == s;
}

std::vector<Morphism> injective_subcategory_core(
    const CategoryPair& pair, int arrow_size_bound, const std::optional<Rat>& metric_bound,
    const std::function<bool(const StructureRef&)>& receives_arrow,
    const std::function<bool(const Morphism&)>& j_injective) {
    std::vector<Morphism> out;
    const int lo = pair.kind() == StructKind::metric ? 1 : 0;
    auto objects_of = [&](int size) {
        return metric_bound ? pair.objects(size, *metric_bound) : pair.objects(size);
    };
    for (int sc = lo; sc <= arrow_size_bound; ++sc) {
        for (Structure& cs : objects_of(sc)) {
            auto c = make_ref(std::move(cs));
            const bool has_arrow = receives_arrow(c);
            std::vector<Morphism> autos_c = all_embeddings(c, c);
            for (int sa = sc; sa <= arrow_size_bound; ++sa) {
                for (Structure& as : objects_of(sa)) {
                    auto a = make_ref(std::move(as));
                    std::vector<Morphism> autos_a = all_embeddings(a, a);
                    std::set<std::vector<int>> seen;
                    for (const Morphism& j : all_embeddings(c, a)) {
                        if (seen.count(j.map())) continue;
                        // arrow classes are closed under both automorphism
                        // actions, so one representative per orbit suffices
                        for (const Morphism& al : autos_c)
                            for (const Morphism& be : autos_a) {
                                std::vector<int> comp(static_cast<size_t>(c->size()));
                                for (int v = 0; v < c->size(); ++v) comp[static_cast<size_t>(v)] = be(j(al(v)));
                                seen.insert(std::move(comp));
                            }
                        if (has_arrow && j_injective(j)) out.push_back(j);
                    }
                }
            }
        }
    }
    return out;
}

std::optional<Rat> metric_enum_bound(const CategoryPair& pair, const Rat& diam) {
    if (pair.kind() != StructKind::metric) return std::nullopt;
    const RadiusDomain& s = pair.domain();
    if (s.dense())
        throw UnsupportedOperation("metric object enumeration over a dense domain",
                                   "bounded searches need a generated distance domain");
    Rat want = diam + diam;
    if (s.cap() && want > *s.cap()) want = *s.cap();
    return s.least_value_at_least(want);
}

} // namespace

AtomicDiagram::AtomicDiagram(int vars, std::vector<std::pair<int, int>> edges,
                             std::vector<std::pair<int, int>> order,
                             std::vector<MetricFact> metric,
                             std::vector<std::pair<int, int>> unary)
    : vars_(vars), edges_(std::move(edges)), order_(std::move(order)), metric_(std::move(metric)),
      unary_(std::move(unary)) {
    if (vars_ < 0) throw std::invalid_argument("AtomicDiagram: negative variable count");
    auto in_range = [&](int v) { return v >= 0 && v < vars_; };
    for (auto& [u, v] : edges_)
        if (!in_range(u) || !in_range(v) || u == v)
            throw std::invalid_argument("AtomicDiagram: bad edge fact");
    for (auto& [u, v] : order_)
        if (!in_range(u) || !in_range(v)) throw std::invalid_argument("AtomicDiagram: bad order fact");
    for (auto& f : metric_)
        if (!in_range(f.u) || !in_range(f.v) || f.u == f.v || !(f.threshold > Rat(0)))
            throw std::invalid_argument("AtomicDiagram: bad metric fact");
    for (auto& [u, v] : unary_)
        if (!in_range(u) || !in_range(v)) throw std::invalid_argument("AtomicDiagram: bad unary fact");
}

AtomicDiagram AtomicDiagram::of_tuple(const Structure& x, const std::vector<int>& points) {
    const int k = static_cast<int>(points.size());
    for (size_t i = 0; i < points.size(); ++i) {
        if (points[i] < 0 || points[i] >= x.size())
            throw std::invalid_argument("of_tuple: point outside the carrier");
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j]) throw std::invalid_argument("of_tuple: repeated point");
    }
    std::vector<std::pair<int, int>> edges, order, unary;
    std::vector<MetricFact> metric;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            switch (x.kind()) {
            case StructKind::graph:
                if (x.adjacent(points[static_cast<size_t>(i)], points[static_cast<size_t>(j)]))
                    edges.push_back({i, j});
                break;
            case StructKind::linorder:
                if (x.rank(points[static_cast<size_t>(i)]) <= x.rank(points[static_cast<size_t>(j)]))
                    order.push_back({i, j});
                else
                    order.push_back({j, i});
                break;
            case StructKind::metric:
                metric.push_back(
                    {i, j, x.dist(points[static_cast<size_t>(i)], points[static_cast<size_t>(j)]), false});
                break;
            case StructKind::unary:
                break;
            }
        }
    if (x.kind() == StructKind::unary) {
        for (int i = 0; i < k; ++i) {
            const int img = x.p(points[static_cast<size_t>(i)]);
            for (int j = 0; j < k; ++j)
                if (points[static_cast<size_t>(j)] == img) {
                    unary.push_back({i, j});
                    break;
                }
        }
    }
    return AtomicDiagram(k, std::move(edges), std::move(order), std::move(metric),
                         std::move(unary));
}

bool AtomicDiagram::satisfied_by(const Structure& x, const std::vector<int>& assignment) const {
    if (static_cast<int>(assignment.size()) != vars_)
        throw std::invalid_argument("satisfied_by: assignment arity mismatch");
    for (int v : assignment)
        if (v < 0 || v >= x.size())
            throw std::invalid_argument("satisfied_by: assignment outside the carrier");
    for (auto& [u, v] : edges_)
        if (!x.adjacent(assignment[static_cast<size_t>(u)], assignment[static_cast<size_t>(v)]))
            return false;
    for (auto& [u, v] : order_)
        if (x.rank(assignment[static_cast<size_t>(u)]) > x.rank(assignment[static_cast<size_t>(v)]))
            return false;
    for (auto& f : metric_) {
        const Rat& d = x.dist(assignment[static_cast<size_t>(f.u)], assignment[static_cast<size_t>(f.v)]);
        if (f.strict ? !(d < f.threshold) : !(d <= f.threshold)) return false;
    }
    for (auto& [u, v] : unary_)
        if (x.p(assignment[static_cast<size_t>(u)]) != assignment[static_cast<size_t>(v)]) return false;
    return true;
}

std::string AtomicDiagram::describe() const {
    std::ostringstream os;
    os << "diagram[" << vars_ << " vars";
    for (auto& [u, v] : edges_) os << "; E(" << u << "," << v << ")";
    for (auto& [u, v] : order_) os << "; " << u << "<=" << v;
    for (auto& f : metric_)
        os << "; d(" << f.u << "," << f.v << ")" << (f.strict ? "<" : "<=") << f.threshold;
    for (auto& [u, v] : unary_) os << "; P(" << u << ")=" << v;
    os << "]";
    return os.str();
}

InjectivityVerdict check_injectivity_criterion(const SequenceK& x, int n, const Morphism& f,
                                               int depth) {
    if (n < 0 || n >= x.depth())
        throw std::invalid_argument("check_injectivity_criterion: stage out of range");
    if (!f.is_embedding())
        throw std::invalid_argument("check_injectivity_criterion: f must be a K-arrow");
    if (!(f.dom() == x.stage(n)))
        throw std::invalid_argument("check_injectivity_criterion: f must leave stage n");
    const int hi = std::min(depth, x.depth() - 1);
    InjectivityVerdict out;
    out.depth_used = hi;
    for (int m = n; m <= hi; ++m) {
        const Morphism conn = x.between(n, m);
        std::vector<int> partial(static_cast<size_t>(f.cod().size()), -1);
        for (int v = 0; v < f.dom().size(); ++v) partial[static_cast<size_t>(f(v))] = conn(v);
        if (auto g = find_hom(f.cod(), x.stage(m), partial)) {
            Morphism gm = make_arrow(f.cod_ref(), x.stage_ref(m), *g);
            if (!compose(gm, f).same_arrow(conn))
                throw std::logic_error("check_injectivity_criterion: completion recheck failed");
            out.verdict = true;
            out.depth_used = m;
            out.stage = m;
            out.completion = std::move(gm);
            return out;
        }
    }
    out.failed_embedding = f;
    return out;
}

InjectivityVerdict injectivity_battery(const CategoryPair& pair, const Structure& x,
                                       int size_bound) {
    if (!pair.admits(x)) throw std::invalid_argument("injectivity_battery: x is not a class object");
    const Rat diam = pair.kind() == StructKind::metric ? x.diameter() : Rat(0);
    const auto mbound = metric_enum_bound(pair, diam);
    auto objects_of = [&](int size) {
        return mbound ? pair.objects(size, *mbound) : pair.objects(size);
    };
    auto xref = make_ref(x);
    InjectivityVerdict out;
    out.depth_used = size_bound;
    const int lo = pair.kind() == StructKind::metric ? 1 : 0;
    for (int sb = lo + 1; sb <= size_bound; ++sb) {
        for (Structure& bs : objects_of(sb)) {
            auto b = make_ref(std::move(bs));
            // |c| = |b| makes every K-arrow an isomorphism, which always
            // completes
            for (int sc = lo; sc < sb; ++sc) {
                for (Structure& cs : objects_of(sc)) {
                    auto c = make_ref(std::move(cs));
                    const auto embs = all_embeddings(c, b);
                    if (embs.empty()) continue;
                    const auto homs = all_homs(c, xref);
                    for (const Morphism& j : embs)
                        for (const Morphism& f : homs) {
                            std::vector<int> partial(static_cast<size_t>(b->size()), -1);
                            for (int v = 0; v < c->size(); ++v)
                                partial[static_cast<size_t>(j(v))] = f(v);
                            if (!find_hom(*b, x, partial)) {
                                out.verdict = false;
                                out.failed_embedding = j;
                                out.failed_arrow = f;
                                return out;
                            }
                        }
                }
            }
        }
    }
    out.verdict = true;
    return out;
}

HyperconvexResult is_finitely_hyperconvex(const Structure& x, const RadiusDomain& s,
                                          int max_balls) {
    require_metric(x, s, "is_finitely_hyperconvex");
    const int n = x.size();
    const int hi = max_balls < 0 ? n : std::min(max_balls, n);
    for (int k = 2; k <= hi; ++k) {
        std::vector<int> centers = first_combination(k);
        do {
            if (auto radii = violating_radii(x, s, centers, false)) {
                HyperconvexResult res;
                res.hyperconvex = false;
                for (int a = 0; a < k; ++a)
                    res.balls.push_back({centers[static_cast<size_t>(a)], (*radii)[static_cast<size_t>(a)]});
                return res;
            }
        } while (next_combination(centers, n));
    }
    return {};
}

bool hyperconvex_equals_injective(const Structure& x, const RadiusDomain& s, int size_bound) {
    require_metric(x, s, "hyperconvex_equals_injective");
    const bool hyper = is_finitely_hyperconvex(x, s, size_bound).hyperconvex;
    // direct side: an unextendable one-point extension of a subspace is a
    // ball family whose radii also satisfy the triangle rows
    bool injective = true;
    const int n = x.size();
    for (int k = 2; k <= std::min(size_bound, n) && injective; ++k) {
        std::vector<int> centers = first_combination(k);
        do {
            if (violating_radii(x, s, centers, true)) {
                injective = false;
                break;
            }
        } while (next_combination(centers, n));
    }
    return hyper == injective;
}

AcResult is_algebraically_closed(const CategoryPair& pair, const Structure& x, int arity_bound,
                                 int extension_bound) {
    if (pair.kind() == StructKind::metric)
        throw UnsupportedOperation("is_algebraically_closed over metric pairs",
                                   "metric closedness goes through is_finitely_hyperconvex");
    if (!pair.admits(x))
        throw std::invalid_argument("is_algebraically_closed: x is not a class object");
    AcResult res;
    res.arity_bound = arity_bound;
    res.extension_bound = extension_bound;
    const int n = x.size();
    for (int m = 1; m <= extension_bound; ++m) {
        std::vector<int> newpts(static_cast<size_t>(m));
        std::iota(newpts.begin(), newpts.end(), n);
        for (const StructureRef& ext : class_extensions(pair, x, m)) {
            for (int arity = 0; arity <= std::min(arity_bound, n); ++arity) {
                std::vector<int> params = first_combination(arity);
                do {
                    std::vector<int> pts = params;
                    pts.insert(pts.end(), newpts.begin(), newpts.end());
                    AtomicDiagram diag = AtomicDiagram::of_tuple(*ext, pts);
                    bool realized = false;
                    std::vector<int> asn = pts;
                    std::vector<int> idx(static_cast<size_t>(m), 0);
                    if (n > 0) do {
                            for (int i = 0; i < m; ++i)
                                asn[params.size() + static_cast<size_t>(i)] = idx[static_cast<size_t>(i)];
                            if (diag.satisfied_by(x, asn)) {
                                realized = true;
                                break;
                            }
                        } while (next_odometer(idx, n));
                    if (!realized) {
                        res.closed = false;
                        res.witness = AcWitness{params, *ext, std::move(diag)};
                        return res;
                    }
                } while (next_combination(params, n));
            }
        }
    }
    return res;
}

MixedAmalgamationVerdict check_mixed_amalgamation(const CategoryPair& pair, int size_bound) {
    if (pair.kind() == StructKind::metric)
        throw UnsupportedOperation("check_mixed_amalgamation over metric pairs",
                                   "metric spans complete pointwise through metric_mixed_pushout");
    for (int sc = 0; sc <= size_bound; ++sc) {
        for (Structure& cs : pair.objects(sc)) {
            auto c = make_ref(std::move(cs));
            for (const Morphism& j : primitive_K_legs(pair, c, size_bound)) {
                for (int sa = 0; sa <= sc; ++sa) {
                    for (Structure& as : pair.objects(sa)) {
                        auto a = make_ref(std::move(as));
                        for (const Morphism& f : all_homs(c, a)) {
                            if (!f.is_surjective()) continue;
                            const int corner = j.cod().size() + a->size() - c->size();
                            if (!span_completes(pair, j, f, corner))
                                return {false, Span(j, f)};
                        }
                    }
                }
            }
        }
    }
    return {};
}

HensonWitness henson_witness(int n) {
    if (n < 3) throw std::invalid_argument("henson_witness: needs a forbidden clique of size >= 3");
    Structure s = Structure::graph(n - 1, {});
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, n - 1});
    Structure t = Structure::graph(n, std::move(edges));
    auto sref = make_ref(std::move(s));
    auto tref = make_ref(std::move(t));
    Morphism inclusion(sref, tref, identity_map(n - 1), ArrowKind::embedding);
    Morphism collapse(sref, make_ref(complete_graph(n - 1)), identity_map(n - 1), ArrowKind::hom);
    return HensonWitness{*sref, *tref, std::move(inclusion), std::move(collapse)};
}

HomHomResult is_hom_homogeneous(const Structure& x, int sub_bound) {
    auto xref = make_ref(x);
    const int n = x.size();
    for (int k = 1; k <= std::min(sub_bound, n); ++k) {
        std::vector<int> sub = first_combination(k);
        do {
            if (!substructure_subset(x, sub)) continue;
            auto sref = make_ref(x.induced(sub));
            for (const Morphism& f : all_homs(sref, xref)) {
                std::vector<int> partial(static_cast<size_t>(n), -1);
                for (int i = 0; i < k; ++i) partial[static_cast<size_t>(sub[static_cast<size_t>(i)])] = f(i);
                if (!find_hom(x, x, partial)) return {false, f};
            }
        } while (next_combination(sub, n));
    }
    return {};
}

HomHomResult is_hom_homogeneous(const SequenceK& x, int sub_bound, int depth) {
    const int hi = std::min(depth, x.depth() - 1);
    for (int n = 0; n <= hi; ++n) {
        const Structure& st = x.stage(n);
        for (int k = 1; k <= std::min(sub_bound, st.size()); ++k) {
            std::vector<int> sub = first_combination(k);
            do {
                if (!substructure_subset(st, sub)) continue;
                auto sref = make_ref(st.induced(sub));
                for (const Morphism& f : all_homs(sref, x.stage_ref(n))) {
                    bool extends = false;
                    for (int m = n; m <= hi && !extends; ++m) {
                        const Morphism conn = x.between(n, m);
                        std::vector<int> partial(static_cast<size_t>(st.size()), -1);
                        for (int i = 0; i < k; ++i)
                            partial[static_cast<size_t>(sub[static_cast<size_t>(i)])] = conn(f(i));
                        if (find_hom(st, x.stage(m), partial)) extends = true;
                    }
                    if (!extends) return {false, f};
                }
            } while (next_combination(sub, st.size()));
        }
    }
    return {};
}

std::vector<Morphism> compute_injective_subcategory(const CategoryPair& pair, const Structure& x,
                                                    int arrow_size_bound) {
    if (!pair.admits(x))
        throw std::invalid_argument("compute_injective_subcategory: x is not a class object");
    const Rat diam = pair.kind() == StructKind::metric ? x.diameter() : Rat(0);
    const auto mbound = metric_enum_bound(pair, diam);
    auto xref = make_ref(x);
    auto receives_arrow = [&](const StructureRef& c) {
        return static_cast<bool>(find_hom(*c, *xref, std::vector<int>(static_cast<size_t>(c->size()), -1)));
    };
    auto j_injective = [&](const Morphism& j) {
        for (const Morphism& f : all_homs(j.dom_ref(), xref)) {
            std::vector<int> partial(static_cast<size_t>(j.cod().size()), -1);
            for (int v = 0; v < j.dom().size(); ++v) partial[static_cast<size_t>(j(v))] = f(v);
            if (!find_hom(j.cod(), *xref, partial)) return false;
        }
        return true;
    };
    return injective_subcategory_core(pair, arrow_size_bound, mbound, receives_arrow, j_injective);
}

std::vector<Morphism> compute_injective_subcategory(const CategoryPair& pair, const SequenceK& x,
                                                    int arrow_size_bound, int depth) {
    const int hi = std::min(depth, x.depth() - 1);
    Rat diam(0);
    if (pair.kind() == StructKind::metric) diam = x.stage(hi).diameter();
    const auto mbound = metric_enum_bound(pair, diam);
    auto receives_arrow = [&](const StructureRef& c) {
        std::vector<int> free(static_cast<size_t>(c->size()), -1);
        for (int n = 0; n <= hi; ++n)
            if (find_hom(*c, x.stage(n), free)) return true;
        return false;
    };
    auto j_injective = [&](const Morphism& j) {
        for (int n = 0; n <= hi; ++n) {
            for (const Morphism& f : all_homs(j.dom_ref(), x.stage_ref(n))) {
                bool completes = false;
                for (int m = n; m <= hi && !completes; ++m) {
                    const Morphism conn = x.between(n, m);
                    std::vector<int> partial(static_cast<size_t>(j.cod().size()), -1);
                    for (int v = 0; v < j.dom().size(); ++v)
                        partial[static_cast<size_t>(j(v))] = conn(f(v));
                    if (find_hom(j.cod(), x.stage(m), partial)) completes = true;
                }
                if (!completes) return false;
            }
        }
        return true;
    };
    return injective_subcategory_core(pair, arrow_size_bound, mbound, receives_arrow, j_injective);
}

} // namespace fralim
