#include "fralim/structure.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fralim {

std::string kind_name(StructKind k) {
    switch (k) {
        case StructKind::graph: return "graph";
        case StructKind::linorder: return "linorder";
        case StructKind::metric: return "metric";
        case StructKind::unary: return "unary";
    }
    return "?";
}

Structure Structure::graph(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 0) throw std::invalid_argument("graph: negative size");
    for (auto& [u, v] : edges) {
        if (u == v) throw std::invalid_argument("graph: loop at " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("graph: edge endpoint out of carrier");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    Structure s;
    s.kind_ = StructKind::graph;
    s.size_ = n;
    s.edges_ = std::move(edges);
    s.adj_.assign((static_cast<size_t>(n) * n + 63) / 64, 0);
    for (auto [u, v] : s.edges_) {
        size_t a = static_cast<size_t>(u) * n + v, b = static_cast<size_t>(v) * n + u;
        s.adj_[a / 64] |= uint64_t(1) << (a % 64);
        s.adj_[b / 64] |= uint64_t(1) << (b % 64);
    }
    return s;
}

Structure Structure::linorder(std::vector<int> ranks) {
    int n = static_cast<int>(ranks.size());
    std::vector<char> seen(n, 0);
    for (int r : ranks) {
        if (r < 0 || r >= n || seen[r])
            throw std::invalid_argument("linorder: ranks must form a permutation");
        seen[r] = 1;
    }
    Structure s;
    s.kind_ = StructKind::linorder;
    s.size_ = n;
    s.ranks_ = std::move(ranks);
    return s;
}

Structure Structure::metric(std::vector<std::vector<Rat>> dist) {
    int n = static_cast<int>(dist.size());
    if (n == 0)
        throw std::invalid_argument("metric: the empty space is not admitted");
    Structure s;
    s.kind_ = StructKind::metric;
    s.size_ = n;
    s.dist_.assign(static_cast<size_t>(n) * n, Rat(0));
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(dist[i].size()) != n)
            throw std::invalid_argument("metric: distance matrix not square");
        for (int j = 0; j < n; ++j) s.dist_[static_cast<size_t>(i) * n + j] = dist[i][j];
    }
    for (int i = 0; i < n; ++i) {
        if (s.dist(i, i) != Rat(0)) throw std::invalid_argument("metric: d(x,x) != 0");
        for (int j = 0; j < n; ++j) {
            if (i != j && s.dist(i, j) <= Rat(0))
                throw std::invalid_argument("metric: distinct points at non-positive distance");
            if (s.dist(i, j) != s.dist(j, i))
                throw std::invalid_argument("metric: asymmetric distances");
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (s.dist(i, j) > s.dist(i, k) + s.dist(k, j))
                    throw std::invalid_argument("metric: triangle inequality fails at (" +
                                                std::to_string(i) + "," + std::to_string(j) + "," +
                                                std::to_string(k) + ")");
    return s;
}

Structure Structure::unary(std::vector<int> image) {
    int n = static_cast<int>(image.size());
    for (int v : image)
        if (v < 0 || v >= n) throw std::invalid_argument("unary: P image out of carrier");
    Structure s;
    s.kind_ = StructKind::unary;
    s.size_ = n;
    s.p_ = std::move(image);
    return s;
}

Structure Structure::empty(StructKind kind) {
    switch (kind) {
        case StructKind::graph: return graph(0, {});
        case StructKind::linorder: return linorder({});
        case StructKind::unary: return unary({});
        case StructKind::metric:
            throw std::invalid_argument("metric: the empty space is not admitted");
    }
    throw std::invalid_argument("empty: bad kind");
}

bool Structure::adjacent(int u, int v) const {
    if (adj_.empty()) return false;
    size_t a = static_cast<size_t>(u) * size_ + v;
    return (adj_[a / 64] >> (a % 64)) & 1;
}

const std::vector<std::pair<int, int>>& Structure::edges() const { return edges_; }

int Structure::rank(int v) const { return ranks_.at(static_cast<size_t>(v)); }

const std::vector<int>& Structure::ranks() const { return ranks_; }

std::vector<int> Structure::by_rank() const {
    std::vector<int> out(static_cast<size_t>(size_));
    for (int i = 0; i < size_; ++i) out[static_cast<size_t>(ranks_[i])] = i;
    return out;
}

const Rat& Structure::dist(int u, int v) const {
    return dist_[static_cast<size_t>(u) * size_ + v];
}

Rat Structure::diameter() const {
    Rat d(0);
    for (int i = 0; i < size_; ++i)
        for (int j = i + 1; j < size_; ++j) d = rat_max(d, dist(i, j));
    return d;
}

int Structure::p(int v) const { return p_.at(static_cast<size_t>(v)); }

const std::vector<int>& Structure::p_table() const { return p_; }

Structure Structure::induced(const std::vector<int>& points) const {
    std::vector<int> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    int m = static_cast<int>(pts.size());
    std::vector<int> where(static_cast<size_t>(size_), -1);
    for (int i = 0; i < m; ++i) {
        if (pts[i] < 0 || pts[i] >= size_)
            throw std::invalid_argument("induced: point out of carrier");
        where[static_cast<size_t>(pts[i])] = i;
    }
    switch (kind_) {
        case StructKind::graph: {
            std::vector<std::pair<int, int>> es;
            for (auto [u, v] : edges_)
                if (where[static_cast<size_t>(u)] >= 0 && where[static_cast<size_t>(v)] >= 0)
                    es.emplace_back(where[static_cast<size_t>(u)], where[static_cast<size_t>(v)]);
            return graph(m, std::move(es));
        }
        case StructKind::linorder: {
            std::vector<std::pair<int, int>> order; // (rank in parent, local id)
            for (int i = 0; i < m; ++i) order.emplace_back(ranks_[static_cast<size_t>(pts[i])], i);
            std::sort(order.begin(), order.end());
            std::vector<int> rk(static_cast<size_t>(m));
            for (int pos = 0; pos < m; ++pos) rk[static_cast<size_t>(order[pos].second)] = pos;
            return linorder(std::move(rk));
        }
        case StructKind::metric: {
            std::vector<std::vector<Rat>> d(static_cast<size_t>(m),
                                            std::vector<Rat>(static_cast<size_t>(m), Rat(0)));
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) d[i][j] = dist(pts[i], pts[j]);
            return metric(std::move(d));
        }
        case StructKind::unary: {
            std::vector<int> img(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i) {
                int t = p_[static_cast<size_t>(pts[i])];
                if (where[static_cast<size_t>(t)] < 0)
                    throw std::invalid_argument("induced: subset not closed under P");
                img[static_cast<size_t>(i)] = where[static_cast<size_t>(t)];
            }
            return unary(std::move(img));
        }
    }
    throw std::logic_error("induced: bad kind");
}

Structure Structure::relabel(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != size_)
        throw std::invalid_argument("relabel: permutation size mismatch");
    switch (kind_) {
        case StructKind::graph: {
            std::vector<std::pair<int, int>> es;
            es.reserve(edges_.size());
            for (auto [u, v] : edges_)
                es.emplace_back(perm[static_cast<size_t>(u)], perm[static_cast<size_t>(v)]);
            return graph(size_, std::move(es));
        }
        case StructKind::linorder: {
            std::vector<int> rk(static_cast<size_t>(size_));
            for (int i = 0; i < size_; ++i) rk[static_cast<size_t>(perm[static_cast<size_t>(i)])] = ranks_[static_cast<size_t>(i)];
            return linorder(std::move(rk));
        }
        case StructKind::metric: {
            std::vector<std::vector<Rat>> d(static_cast<size_t>(size_),
                                            std::vector<Rat>(static_cast<size_t>(size_), Rat(0)));
            for (int i = 0; i < size_; ++i)
                for (int j = 0; j < size_; ++j)
                    d[static_cast<size_t>(perm[static_cast<size_t>(i)])]
                     [static_cast<size_t>(perm[static_cast<size_t>(j)])] = dist(i, j);
            return metric(std::move(d));
        }
        case StructKind::unary: {
            std::vector<int> img(static_cast<size_t>(size_));
            for (int i = 0; i < size_; ++i)
                img[static_cast<size_t>(perm[static_cast<size_t>(i)])] =
                    perm[static_cast<size_t>(p_[static_cast<size_t>(i)])];
            return unary(std::move(img));
        }
    }
    throw std::logic_error("relabel: bad kind");
}

std::strong_ordering Structure::compare_data(const Structure& other) const {
    if (kind_ != other.kind_ || size_ != other.size_)
        throw std::invalid_argument("compare_data: kind/size mismatch");
    switch (kind_) {
        case StructKind::graph: {
            // adjacency upper triangle, column-major: the order in which the
            // canonical-form search discovers entries
            for (int k = 1; k < size_; ++k)
                for (int j = 0; j < k; ++j) {
                    int a = adjacent(j, k) ? 1 : 0, b = other.adjacent(j, k) ? 1 : 0;
                    if (a != b) return a < b ? std::strong_ordering::less : std::strong_ordering::greater;
                }
            return std::strong_ordering::equal;
        }
        case StructKind::linorder: {
            for (int i = 0; i < size_; ++i) {
                if (ranks_[static_cast<size_t>(i)] != other.ranks_[static_cast<size_t>(i)])
                    return ranks_[static_cast<size_t>(i)] < other.ranks_[static_cast<size_t>(i)]
                               ? std::strong_ordering::less
                               : std::strong_ordering::greater;
            }
            return std::strong_ordering::equal;
        }
        case StructKind::metric: {
            for (int k = 1; k < size_; ++k)
                for (int j = 0; j < k; ++j) {
                    if (dist(j, k) != other.dist(j, k))
                        return dist(j, k) < other.dist(j, k) ? std::strong_ordering::less
                                                             : std::strong_ordering::greater;
                }
            return std::strong_ordering::equal;
        }
        case StructKind::unary: {
            for (int i = 0; i < size_; ++i)
                if (p_[static_cast<size_t>(i)] != other.p_[static_cast<size_t>(i)])
                    return p_[static_cast<size_t>(i)] < other.p_[static_cast<size_t>(i)]
                               ? std::strong_ordering::less
                               : std::strong_ordering::greater;
            return std::strong_ordering::equal;
        }
    }
    throw std::logic_error("compare_data: bad kind");
}

bool Structure::operator==(const Structure& other) const {
    return kind_ == other.kind_ && size_ == other.size_ &&
           compare_data(other) == std::strong_ordering::equal;
}

std::string Structure::describe() const {
    std::ostringstream os;
    os << kind_name(kind_) << "(" << size_;
    switch (kind_) {
        case StructKind::graph:
            os << "; edges";
            for (auto [u, v] : edges_) os << " " << u << "-" << v;
            break;
        case StructKind::linorder: {
            os << "; order";
            for (int v : by_rank()) os << " " << v;
            break;
        }
        case StructKind::metric:
            os << "; d";
            for (int i = 0; i < size_; ++i)
                for (int j = i + 1; j < size_; ++j)
                    os << " " << i << j << "=" << to_string(dist(i, j));
            break;
        case StructKind::unary:
            os << "; P";
            for (int i = 0; i < size_; ++i) os << " " << i << ">" << p_[static_cast<size_t>(i)];
            break;
    }
    os << ")";
    return os.str();
}

namespace {

// Lexicographically least labelling search. The flattening order is the
// upper triangle column by column, i.e. the entries contributed by each new
// position; compare_data uses the same order. `best` is rewritten in place
// during descent whenever a strictly smaller column is found, so comparisons
// at any node are always against the least complete labelling seen so far.
struct CanonSearch {
    const Structure& s;
    int n;
    std::vector<int> pos_of;   // pos_of[original] = new position, -1 if unplaced
    std::vector<int> orig_at;  // orig_at[new position] = original id
    std::vector<int> best_orig_at;
    int best_len = 0; // columns of best_orig_at that are meaningful

    explicit CanonSearch(const Structure& str)
        : s(str), n(str.size()), pos_of(static_cast<size_t>(str.size()), -1),
          orig_at(static_cast<size_t>(str.size()), -1),
          best_orig_at(static_cast<size_t>(str.size()), -1) {}

    // Column added by placing original vertex `cand` at position k versus the
    // same column of the current best. <0 better, 0 tie, >0 worse.
    int compare_column(int k, int cand) const {
        int best_cand = best_orig_at[static_cast<size_t>(k)];
        switch (s.kind()) {
            case StructKind::graph: {
                for (int j = 0; j < k; ++j) {
                    int a = s.adjacent(cand, orig_at[static_cast<size_t>(j)]) ? 1 : 0;
                    int b = s.adjacent(best_cand, best_orig_at[static_cast<size_t>(j)]) ? 1 : 0;
                    if (a != b) return a - b;
                }
                return 0;
            }
            case StructKind::metric: {
                for (int j = 0; j < k; ++j) {
                    const Rat& a = s.dist(cand, orig_at[static_cast<size_t>(j)]);
                    const Rat& b = s.dist(best_cand, best_orig_at[static_cast<size_t>(j)]);
                    if (a != b) return a < b ? -1 : 1;
                }
                return 0;
            }
            default:
                return 0;
        }
    }

    // Makes the current path (plus cand at position k) the best prefix. The
    // columns before k carry equal data but best must stay one coherent path
    // of original vertex ids for later column comparisons.
    void take_prefix(int k, int cand) {
        std::copy(orig_at.begin(), orig_at.begin() + k, best_orig_at.begin());
        best_orig_at[static_cast<size_t>(k)] = cand;
        best_len = k + 1;
    }

    void run() { dfs(0); }

    void dfs(int k) {
        if (k == n) return;
        for (int cand = 0; cand < n; ++cand) {
            if (pos_of[static_cast<size_t>(cand)] >= 0) continue;
            if (k < best_len) {
                int col = compare_column(k, cand);
                if (col > 0) continue;
                if (col < 0) take_prefix(k, cand);
            } else {
                take_prefix(k, cand);
            }
            orig_at[static_cast<size_t>(k)] = cand;
            pos_of[static_cast<size_t>(cand)] = k;
            dfs(k + 1);
            pos_of[static_cast<size_t>(cand)] = -1;
            orig_at[static_cast<size_t>(k)] = -1;
        }
    }
};

} // namespace

std::pair<Structure, std::vector<int>> canonical_form_with_perm(const Structure& s) {
    int n = s.size();
    std::vector<int> perm(static_cast<size_t>(n));
    if (n <= 1) {
        return {s, perm};
    }
    switch (s.kind()) {
        case StructKind::linorder: {
            // unique canonical linear order: ranks become identities
            std::vector<int> rk(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) {
                rk[static_cast<size_t>(i)] = i;
                perm[static_cast<size_t>(i)] = s.rank(i);
            }
            return {Structure::linorder(std::move(rk)), perm};
        }
        case StructKind::graph:
        case StructKind::metric: {
            CanonSearch search(s);
            search.run();
            std::vector<int> pos(static_cast<size_t>(n));
            for (int k = 0; k < n; ++k) pos[static_cast<size_t>(search.best_orig_at[static_cast<size_t>(k)])] = k;
            return {s.relabel(pos), pos};
        }
        case StructKind::unary: {
            // full search over permutations; unary canonicalisation is only
            // applied to enumeration-sized models
            std::vector<int> idx(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
            std::vector<int> best_pos;
            Structure best = s;
            bool have = false;
            std::vector<int> pos(static_cast<size_t>(n));
            do {
                for (int i = 0; i < n; ++i) pos[static_cast<size_t>(idx[static_cast<size_t>(i)])] = i;
                Structure cand = s.relabel(pos);
                if (!have || cand.compare_data(best) == std::strong_ordering::less) {
                    best = cand;
                    best_pos = pos;
                    have = true;
                }
            } while (std::next_permutation(idx.begin(), idx.end()));
            return {best, best_pos};
        }
    }
    throw std::logic_error("canonical_form: bad kind");
}

Structure canonical_form(const Structure& s) { return canonical_form_with_perm(s).first; }

bool isomorphic(const Structure& a, const Structure& b) {
    if (a.kind() != b.kind() || a.size() != b.size()) return false;
    return canonical_form(a) == canonical_form(b);
}

bool has_clique(const Structure& g, int n) {
    if (n <= 1) return g.size() >= n;
    std::vector<int> chosen;
    // backtracking over ascending vertex ids
    std::function<bool(int)> ext = [&](int from) -> bool {
        if (static_cast<int>(chosen.size()) == n) return true;
        for (int v = from; v < g.size(); ++v) {
            bool ok = true;
            for (int u : chosen)
                if (!g.adjacent(u, v)) { ok = false; break; }
            if (!ok) continue;
            chosen.push_back(v);
            if (ext(v + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    return ext(0);
}

std::vector<int> unary_closure(const Structure& m, const std::vector<int>& seeds) {
    std::vector<char> in(static_cast<size_t>(m.size()), 0);
    std::vector<int> stack = seeds;
    for (int v : seeds)
        if (v < 0 || v >= m.size()) throw std::invalid_argument("unary_closure: seed out of carrier");
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (in[static_cast<size_t>(v)]) continue;
        in[static_cast<size_t>(v)] = 1;
        stack.push_back(m.p(v));
    }
    std::vector<int> out;
    for (int v = 0; v < m.size(); ++v)
        if (in[static_cast<size_t>(v)]) out.push_back(v);
    return out;
}

} // namespace fralim
