#include "fralim/metric.hpp"

#include "fralim/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fralim {

RadiusDomain RadiusDomain::all_rationals(std::optional<Rat> cap) {
    if (cap && *cap <= Rat(0))
        throw std::invalid_argument("radius domain: cap must be positive");
    RadiusDomain d;
    d.dense_ = true;
    d.cap_ = std::move(cap);
    return d;
}

RadiusDomain RadiusDomain::generated(std::vector<Rat> gens, std::optional<Rat> cap) {
    if (gens.empty()) throw std::invalid_argument("radius domain: no generators");
    for (const Rat& g : gens)
        if (g <= Rat(0)) throw std::invalid_argument("radius domain: generators must be positive");
    if (cap && *cap <= Rat(0))
        throw std::invalid_argument("radius domain: cap must be positive");
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    RadiusDomain d;
    d.gens_ = std::move(gens);
    d.cap_ = std::move(cap);
    return d;
}

namespace {

constexpr std::int64_t kMaxGridCells = 2'000'000;

// Reachability of scaled value R as a nonempty sum of scaled generators.
std::vector<char> sum_table(const std::vector<std::int64_t>& coins, std::int64_t limit) {
    if (limit < 0 || limit > kMaxGridCells)
        throw std::overflow_error("radius domain query out of supported range");
    std::vector<char> dp(static_cast<size_t>(limit + 1), 0);
    dp[0] = 1;
    for (std::int64_t v = 1; v <= limit; ++v)
        for (std::int64_t c : coins)
            if (c <= v && dp[static_cast<size_t>(v - c)]) {
                dp[static_cast<size_t>(v)] = 1;
                break;
            }
    return dp;
}

std::int64_t denom_lcm(const std::vector<Rat>& vals, std::int64_t seed) {
    std::int64_t l = seed;
    for (const Rat& v : vals) l = lcm64(l, v.denominator());
    return l;
}

} // namespace

bool RadiusDomain::contains(const Rat& r) const {
    if (r <= Rat(0)) return false;
    if (cap_ && r > *cap_) return false;
    if (dense_) return true;
    if (cap_ && r == *cap_) return true; // sums at or past the cap collapse onto it
    std::int64_t l = denom_lcm(gens_, r.denominator());
    std::int64_t target = r.numerator() * (l / r.denominator());
    std::vector<std::int64_t> coins;
    for (const Rat& g : gens_) coins.push_back(g.numerator() * (l / g.denominator()));
    auto dp = sum_table(coins, target);
    return dp[static_cast<size_t>(target)] != 0;
}

std::vector<Rat> RadiusDomain::values_up_to(const Rat& bound) const {
    if (dense_)
        throw std::invalid_argument("dense radius domain cannot be enumerated");
    if (bound <= Rat(0)) return {};
    Rat top = cap_ ? rat_min(bound, *cap_) : bound;
    std::int64_t l = denom_lcm(gens_, top.denominator());
    std::int64_t limit = top.numerator() * (l / top.denominator());
    std::vector<std::int64_t> coins;
    for (const Rat& g : gens_) coins.push_back(g.numerator() * (l / g.denominator()));
    auto dp = sum_table(coins, limit);
    std::vector<Rat> out;
    for (std::int64_t v = 1; v <= limit; ++v)
        if (dp[static_cast<size_t>(v)]) {
            Rat value(v, l);
            if (cap_ && value >= *cap_) break;
            out.push_back(value);
        }
    if (cap_ && *cap_ <= bound) out.push_back(*cap_);
    return out;
}

Rat RadiusDomain::least_value_at_least(const Rat& r) const {
    if (cap_ && r > *cap_)
        throw std::invalid_argument("no admissible value at or above " + to_string(r) +
                                    " under cap " + to_string(*cap_));
    if (dense_) {
        if (r > Rat(0)) return r;
        return cap_ ? rat_min(Rat(1), *cap_) : Rat(1);
    }
    Rat probe = rat_max(r, gens_.front());
    // multiples of the least generator hit every window of its width
    for (const Rat& v : values_up_to(probe + gens_.front()))
        if (v >= r) return v;
    if (cap_) return *cap_; // reachable: sums past the cap collapse onto it
    throw std::logic_error("generated radius domain produced no value above " + to_string(r));
}

bool RadiusDomain::admits(const Structure& x) const {
    if (x.kind() != StructKind::metric)
        throw std::invalid_argument("radius domain admits metric structures only");
    for (int i = 0; i < x.size(); ++i)
        for (int j = i + 1; j < x.size(); ++j)
            if (!contains(x.dist(i, j))) return false;
    return true;
}

std::string RadiusDomain::describe() const {
    std::ostringstream os;
    if (dense_) {
        os << "Q+";
    } else {
        os << "<";
        for (size_t k = 0; k < gens_.size(); ++k) {
            if (k) os << ",";
            os << to_string(gens_[k]);
        }
        os << ">";
    }
    if (cap_) os << " capped at " << to_string(*cap_);
    return os.str();
}

namespace {

void require_metric(const Structure& s, const char* who) {
    if (s.kind() != StructKind::metric)
        throw std::invalid_argument(std::string(who) + ": expects metric spaces");
}

std::vector<int> identity_map(int n) {
    std::vector<int> m(static_cast<size_t>(n));
    std::iota(m.begin(), m.end(), 0);
    return m;
}

Structure append_point(const Structure& y, const std::vector<Rat>& dists) {
    const int n = y.size();
    std::vector<std::vector<Rat>> m(static_cast<size_t>(n + 1),
                                    std::vector<Rat>(static_cast<size_t>(n + 1), Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = y.dist(i, j);
    for (int i = 0; i < n; ++i) {
        m[static_cast<size_t>(i)][static_cast<size_t>(n)] = dists[static_cast<size_t>(i)];
        m[static_cast<size_t>(n)][static_cast<size_t>(i)] = dists[static_cast<size_t>(i)];
    }
    return Structure::metric(std::move(m));
}

} // namespace

MetricExtendResult metric_pushout_extend(const Morphism& f, const Structure& ext,
                                         std::optional<Rat> cap) {
    require_metric(ext, "metric_pushout_extend");
    const Structure& x = f.dom();
    const Structure& y = f.cod();
    if (x.size() == 0)
        throw std::invalid_argument("metric_pushout_extend: empty base has no pushout");
    if (ext.size() != x.size() + 1)
        throw std::invalid_argument("metric_pushout_extend: extension must add exactly one point");
    std::vector<int> first(static_cast<size_t>(x.size()));
    std::iota(first.begin(), first.end(), 0);
    if (ext.induced(first) != x)
        throw std::invalid_argument("metric_pushout_extend: extension does not restrict to the base");

    const int a = x.size();
    std::vector<Rat> dists(static_cast<size_t>(y.size()));
    int hit = -1;
    for (int v = 0; v < y.size(); ++v) {
        Rat best = y.dist(v, f(0)) + ext.dist(0, a);
        for (int u = 1; u < x.size(); ++u)
            best = rat_min(best, y.dist(v, f(u)) + ext.dist(u, a));
        if (cap) best = rat_min(best, *cap);
        dists[static_cast<size_t>(v)] = best;
        if (best == Rat(0)) hit = v;
    }

    auto ext_ref = make_ref(ext);
    if (hit >= 0) {
        auto space = f.cod_ref();
        std::vector<int> g(static_cast<size_t>(ext.size()));
        for (int u = 0; u < x.size(); ++u) g[static_cast<size_t>(u)] = f(u);
        g[static_cast<size_t>(a)] = hit;
        return {space, make_arrow(ext_ref, space, std::move(g)), Morphism::identity(space), hit};
    }

    auto space = make_ref(append_point(y, dists));
    std::vector<int> g(static_cast<size_t>(ext.size()));
    for (int u = 0; u < x.size(); ++u) g[static_cast<size_t>(u)] = f(u);
    g[static_cast<size_t>(a)] = y.size();
    Morphism include(f.cod_ref(), space, identity_map(y.size()), ArrowKind::embedding);
    return {space, make_arrow(ext_ref, space, std::move(g)), std::move(include), -1};
}

BallExtensionResult one_point_ball_extension(const Structure& x,
                                             const std::vector<ClosedBall>& balls) {
    require_metric(x, "one_point_ball_extension");
    if (balls.empty())
        throw std::invalid_argument("one_point_ball_extension: no balls given");
    for (const auto& b : balls) {
        if (b.center < 0 || b.center >= x.size())
            throw std::invalid_argument("one_point_ball_extension: center outside the space");
        if (b.radius < Rat(0))
            throw std::invalid_argument("one_point_ball_extension: negative radius");
    }
    for (size_t i = 0; i < balls.size(); ++i)
        for (size_t j = i + 1; j < balls.size(); ++j)
            if (x.dist(balls[i].center, balls[j].center) > balls[i].radius + balls[j].radius) {
                std::ostringstream os;
                os << "balls " << i << " and " << j << " cannot meet: d(" << balls[i].center
                   << "," << balls[j].center << ") = "
                   << to_string(x.dist(balls[i].center, balls[j].center)) << " > "
                   << to_string(balls[i].radius + balls[j].radius);
                throw std::invalid_argument("one_point_ball_extension: " + os.str());
            }

    std::vector<Rat> dists(static_cast<size_t>(x.size()));
    int hit = -1;
    for (int v = 0; v < x.size(); ++v) {
        Rat best = x.dist(v, balls[0].center) + balls[0].radius;
        for (size_t i = 1; i < balls.size(); ++i)
            best = rat_min(best, x.dist(v, balls[i].center) + balls[i].radius);
        dists[static_cast<size_t>(v)] = best;
        if (best == Rat(0)) hit = v;
    }
    if (hit >= 0) return {make_ref(x), hit};
    return {make_ref(append_point(x, dists)), -1};
}

Structure truncate_metric(const Structure& x, const Rat& c) {
    require_metric(x, "truncate_metric");
    if (c <= Rat(0)) throw std::invalid_argument("truncate_metric: cap must be positive");
    std::vector<std::vector<Rat>> m(static_cast<size_t>(x.size()),
                                    std::vector<Rat>(static_cast<size_t>(x.size()), Rat(0)));
    for (int i = 0; i < x.size(); ++i)
        for (int j = 0; j < x.size(); ++j)
            if (i != j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = rat_min(x.dist(i, j), c);
    return Structure::metric(std::move(m));
}

namespace {

// Shared engine for the amalgam and the mixed pushout: adjoins a's points
// beyond the apex to b one at a time through Eq-(M) style minima. The caller
// fixed which side keeps its carrier.
CommutingSquare glue_metric(const Morphism& f, const Morphism& g, std::optional<Rat> cap,
                            bool certify_legs_embed) {
    const Structure& c = f.dom();
    const Structure& a = f.cod();
    const Structure& b = g.cod();
    if (c.size() == 0)
        throw std::invalid_argument("metric gluing needs a nonempty apex");

    Span span(f, g);

    // current: ids of a already transported, cur(map) into the growing space
    std::vector<int> done;
    for (int v = 0; v < c.size(); ++v) done.push_back(f(v));
    std::vector<int> amap(static_cast<size_t>(a.size()), -1);
    for (int v = 0; v < c.size(); ++v) amap[static_cast<size_t>(f(v))] = g(v);

    StructureRef cur = g.cod_ref();
    for (int p = 0; p < a.size(); ++p) {
        if (amap[static_cast<size_t>(p)] >= 0) continue;
        std::vector<Rat> dists(static_cast<size_t>(cur->size()));
        int hit = -1;
        for (int w = 0; w < cur->size(); ++w) {
            Rat best = cur->dist(w, amap[static_cast<size_t>(done[0])]) + a.dist(done[0], p);
            for (size_t k = 1; k < done.size(); ++k)
                best = rat_min(best,
                               cur->dist(w, amap[static_cast<size_t>(done[k])]) + a.dist(done[k], p));
            if (cap) best = rat_min(best, *cap);
            dists[static_cast<size_t>(w)] = best;
            if (best == Rat(0)) hit = w;
        }
        if (hit >= 0) {
            amap[static_cast<size_t>(p)] = hit;
        } else {
            amap[static_cast<size_t>(p)] = cur->size();
            cur = make_ref(append_point(*cur, dists));
        }
        done.push_back(p);
    }

    Morphism fp = make_arrow(f.cod_ref(), cur, std::move(amap));
    Morphism gp = Morphism(g.cod_ref(), cur, identity_map(b.size()), ArrowKind::embedding);
    if (certify_legs_embed && !fp.is_embedding())
        throw std::logic_error("metric amalgam leg lost isometry");
    return CommutingSquare(std::move(span), std::move(fp), std::move(gp));
}

} // namespace

CommutingSquare metric_free_amalgam(const Morphism& i, const Morphism& j,
                                    const RadiusDomain& dom) {
    require_metric(i.cod(), "metric_free_amalgam");
    if (!i.is_embedding() || !j.is_embedding())
        throw std::invalid_argument("metric_free_amalgam: both legs must be isometric");
    // carrier convention: a survives, b's new points are appended; run the
    // gluing with the roles swapped, then swap the legs back
    CommutingSquare s = glue_metric(j, i, dom.cap(), true);
    return CommutingSquare(Span(i, j), s.cospan_right(), s.cospan_left());
}

MetricJoin metric_join(StructureRef a, StructureRef b, const RadiusDomain& dom) {
    require_metric(*a, "metric_join");
    require_metric(*b, "metric_join");
    // juxtaposition: every cross distance is the least admissible value that
    // keeps all triangles fat enough
    Rat need = rat_max(a->diameter(), b->diameter()) / Rat(2);
    Rat cross = dom.least_value_at_least(need);
    const int n = a->size() + b->size();
    std::vector<std::vector<Rat>> m(static_cast<size_t>(n),
                                    std::vector<Rat>(static_cast<size_t>(n), cross));
    for (int u = 0; u < a->size(); ++u)
        for (int v = 0; v < a->size(); ++v)
            m[static_cast<size_t>(u)][static_cast<size_t>(v)] = a->dist(u, v);
    for (int u = 0; u < b->size(); ++u)
        for (int v = 0; v < b->size(); ++v)
            m[static_cast<size_t>(a->size() + u)][static_cast<size_t>(a->size() + v)] = b->dist(u, v);
    auto w = make_ref(Structure::metric(std::move(m)));
    const int an = a->size();
    std::vector<int> bm(static_cast<size_t>(b->size()));
    std::iota(bm.begin(), bm.end(), an);
    Morphism left(std::move(a), w, identity_map(an), ArrowKind::embedding);
    Morphism right(std::move(b), w, std::move(bm), ArrowKind::embedding);
    return {w, std::move(left), std::move(right)};
}

CommutingSquare metric_mixed_pushout(const Morphism& f, const Morphism& g,
                                     std::optional<Rat> cap) {
    require_metric(f.cod(), "metric_mixed_pushout");
    if (!f.is_embedding())
        throw std::invalid_argument("metric_mixed_pushout: left leg must be isometric");
    if (f.dom().size() == 0)
        throw std::invalid_argument("metric_mixed_pushout: empty apex has no pushout");
    return glue_metric(f, g, std::move(cap), false);
}

std::vector<Structure> enumerate_metrics(int n, const RadiusDomain& dom,
                                         const Rat& diameter_bound) {
    return enumerate_metrics(n, dom.values_up_to(diameter_bound));
}

std::vector<Structure> enumerate_metrics(int n, const std::vector<Rat>& values) {
    if (n < 0) throw std::invalid_argument("enumerate_metrics: negative size");
    if (n == 0) return {};
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.push_back({i, j});

    auto less = [](const Structure& x, const Structure& y) {
        return x.compare_data(y) == std::strong_ordering::less;
    };
    std::set<Structure, decltype(less)> seen(less);

    std::vector<std::vector<Rat>> m(static_cast<size_t>(n),
                                    std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
    auto rec = [&](auto&& self, size_t s) -> void {
        if (s == slots.size()) {
            try {
                seen.insert(canonical_form(Structure::metric(m)));
            } catch (const std::invalid_argument&) {
                // triangle violation: skip
            }
            return;
        }
        auto [i, j] = slots[s];
        for (const Rat& v : values) {
            m[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
            m[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
            self(self, s + 1);
        }
    };
    rec(rec, 0);
    return {seen.begin(), seen.end()};
}

} // namespace fralim
