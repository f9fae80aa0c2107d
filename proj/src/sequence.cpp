#include "fralim/sequence.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fralim {

SequenceK::SequenceK(std::vector<StructureRef> stages, std::vector<Morphism> connectors)
    : stages_(std::move(stages)), connect_(std::move(connectors)) {
    if (stages_.empty()) throw std::invalid_argument("sequence: needs at least one stage");
    for (const auto& s : stages_)
        if (!s) throw std::invalid_argument("sequence: null stage");
    if (connect_.size() + 1 != stages_.size())
        throw std::invalid_argument("sequence: " + std::to_string(stages_.size()) + " stages need " +
                                    std::to_string(stages_.size() - 1) + " connectors");
    for (size_t n = 0; n < connect_.size(); ++n) {
        const Morphism& c = connect_[n];
        if (!c.is_embedding())
            throw std::invalid_argument("sequence: connector at stage " + std::to_string(n) +
                                        " is not an embedding");
        // shared refs short-circuit the structural compare; long generated
        // chains would otherwise pay a full data comparison per stage
        bool dom_ok = c.dom_ref().get() == stages_[n].get() || c.dom() == *stages_[n];
        bool cod_ok = c.cod_ref().get() == stages_[n + 1].get() || c.cod() == *stages_[n + 1];
        if (!dom_ok || !cod_ok)
            throw std::invalid_argument("sequence: connector endpoints disagree with stages at " +
                                        std::to_string(n));
    }
}

SequenceK SequenceK::constant(StructureRef x, int depth) {
    if (depth < 1) throw std::invalid_argument("sequence: depth must be positive");
    if (!x) throw std::invalid_argument("sequence: null stage");
    std::vector<StructureRef> st(static_cast<size_t>(depth), x);
    std::vector<Morphism> cn(static_cast<size_t>(depth - 1), Morphism::identity(x));
    return SequenceK(std::move(st), std::move(cn));
}

const Structure& SequenceK::stage(int n) const { return *stage_ref(n); }

const StructureRef& SequenceK::stage_ref(int n) const {
    if (n < 0 || n >= depth()) throw std::out_of_range("sequence: stage " + std::to_string(n));
    return stages_[static_cast<size_t>(n)];
}

const Morphism& SequenceK::connector(int n) const {
    if (n < 0 || n + 1 >= depth())
        throw std::out_of_range("sequence: connector " + std::to_string(n));
    return connect_[static_cast<size_t>(n)];
}

Morphism SequenceK::between(int n, int m) const {
    if (n < 0 || m < n || m >= depth())
        throw std::out_of_range("sequence: composite " + std::to_string(n) + " -> " +
                                std::to_string(m));
    Morphism acc = Morphism::identity(stages_[static_cast<size_t>(n)]);
    for (int k = n; k < m; ++k) acc = compose(connect_[static_cast<size_t>(k)], acc);
    return acc;
}

SequenceK SequenceK::extended(const Morphism& next) const {
    if (next.dom() != *stages_.back())
        throw std::invalid_argument("sequence: extension does not start at the last stage");
    if (!next.is_embedding())
        throw std::invalid_argument("sequence: extension must be an embedding");
    auto st = stages_;
    st.push_back(next.cod_ref());
    auto cn = connect_;
    cn.push_back(next);
    return SequenceK(std::move(st), std::move(cn));
}

SequenceK SequenceK::prefix(int depth) const {
    if (depth < 1 || depth > this->depth())
        throw std::out_of_range("sequence: prefix depth " + std::to_string(depth));
    return SequenceK({stages_.begin(), stages_.begin() + depth},
                     {connect_.begin(), connect_.begin() + (depth - 1)});
}

SequenceK SequenceK::suffix(int from) const {
    if (from < 0 || from >= depth())
        throw std::out_of_range("sequence: suffix from " + std::to_string(from));
    return SequenceK({stages_.begin() + from, stages_.end()},
                     {connect_.begin() + from, connect_.end()});
}

bool SequenceK::same_prefix(const SequenceK& other, int depth) const {
    if (depth > this->depth() || depth > other.depth()) return false;
    for (int n = 0; n < depth; ++n)
        if (stage(n) != other.stage(n)) return false;
    for (int n = 0; n + 1 < depth; ++n)
        if (!connector(n).same_arrow(other.connector(n))) return false;
    return true;
}

std::string SequenceK::describe() const {
    std::ostringstream os;
    os << kind_name(stages_.front()->kind()) << " sequence, stage sizes";
    for (const auto& s : stages_) os << " " << s->size();
    return os.str();
}

SeqMorphism::SeqMorphism(SequenceK dom, SequenceK cod, std::vector<int> psi,
                         std::vector<Morphism> components)
    : dom_(std::move(dom)), cod_(std::move(cod)), psi_(std::move(psi)),
      comps_(std::move(components)) {
    if (psi_.size() != static_cast<size_t>(dom_.depth()) || comps_.size() != psi_.size())
        throw std::invalid_argument("sequence arrow: one reindex and one component per stage");
    for (size_t n = 0; n < psi_.size(); ++n) {
        if (psi_[n] < 0 || psi_[n] >= cod_.depth())
            throw std::invalid_argument("sequence arrow: reindex out of range at stage " +
                                        std::to_string(n));
        if (n > 0 && psi_[n] < psi_[n - 1])
            throw std::invalid_argument("sequence arrow: reindex must be weakly increasing");
        const Morphism& t = comps_[n];
        if (t.dom() != dom_.stage(static_cast<int>(n)) || t.cod() != cod_.stage(psi_[n]))
            throw std::invalid_argument("sequence arrow: component endpoints disagree at stage " +
                                        std::to_string(n));
        if (!t.is_embedding()) all_k_ = false;
    }
    for (int n = 0; n + 1 < dom_.depth(); ++n) {
        Morphism lhs = fralim::compose(comps_[static_cast<size_t>(n) + 1], dom_.connector(n));
        Morphism rhs = fralim::compose(cod_.between(psi_[static_cast<size_t>(n)],
                                                    psi_[static_cast<size_t>(n) + 1]),
                                       comps_[static_cast<size_t>(n)]);
        if (!lhs.same_arrow(rhs))
            throw std::invalid_argument("sequence arrow: naturality fails at stage " +
                                        std::to_string(n));
    }
}

SeqMorphism SeqMorphism::identity(const SequenceK& x) {
    std::vector<int> psi(static_cast<size_t>(x.depth()));
    std::vector<Morphism> comps;
    for (int n = 0; n < x.depth(); ++n) {
        psi[static_cast<size_t>(n)] = n;
        comps.push_back(Morphism::identity(x.stage_ref(n)));
    }
    return SeqMorphism(x, x, std::move(psi), std::move(comps));
}

int SeqMorphism::psi(int n) const {
    if (n < 0 || n >= depth()) throw std::out_of_range("sequence arrow: reindex " + std::to_string(n));
    return psi_[static_cast<size_t>(n)];
}

const Morphism& SeqMorphism::component(int n) const {
    if (n < 0 || n >= depth())
        throw std::out_of_range("sequence arrow: component " + std::to_string(n));
    return comps_[static_cast<size_t>(n)];
}

std::string SeqMorphism::describe() const {
    std::ostringstream os;
    os << (all_k_ ? "embedding" : "hom") << " sequence arrow, reindex";
    for (int p : psi_) os << " " << p;
    return os.str();
}

SeqMorphism compose(const SeqMorphism& g, const SeqMorphism& f) {
    const int shared = std::min(f.cod().depth(), g.dom().depth());
    if (!f.cod().same_prefix(g.dom(), shared))
        throw std::invalid_argument("sequence arrows do not compose: middle sequences disagree");
    std::vector<int> psi;
    std::vector<Morphism> comps;
    for (int n = 0; n < f.depth(); ++n) {
        int mid = f.psi(n);
        if (mid >= shared)
            throw std::invalid_argument("sequence arrows do not compose: stage " +
                                        std::to_string(mid) + " is beyond the shared middle");
        psi.push_back(g.psi(mid));
        comps.push_back(compose(g.component(mid), f.component(n)));
    }
    return SeqMorphism(f.dom(), g.cod(), std::move(psi), std::move(comps));
}

StageInjection::StageInjection(SequenceK seq, int stage) : seq_(std::move(seq)), stage_(stage) {
    if (stage_ < 0 || stage_ >= seq_.depth())
        throw std::out_of_range("stage injection: stage " + std::to_string(stage_));
}

Morphism StageInjection::at(int m) const { return seq_.between(stage_, m); }

SeqMorphism StageInjection::as_arrow(int depth) const {
    SequenceK c = SequenceK::constant(seq_.stage_ref(stage_), depth);
    std::vector<int> psi(static_cast<size_t>(depth), stage_);
    std::vector<Morphism> comps(static_cast<size_t>(depth),
                                Morphism::identity(seq_.stage_ref(stage_)));
    return SeqMorphism(std::move(c), seq_, std::move(psi), std::move(comps));
}

bool seq_equivalent(const SeqMorphism& t0, const SeqMorphism& t1, int depth) {
    int d = std::min({depth, t0.depth(), t1.depth()});
    if (d < 0) throw std::invalid_argument("seq_equivalent: negative depth");
    if (!t0.dom().same_prefix(t1.dom(), d))
        throw std::invalid_argument("seq_equivalent: domains disagree on the compared prefix");
    int reach = 0;
    for (int n = 0; n < d; ++n) reach = std::max({reach, t0.psi(n), t1.psi(n)});
    if (!t0.cod().same_prefix(t1.cod(), d == 0 ? 0 : reach + 1))
        throw std::invalid_argument("seq_equivalent: codomains disagree on the compared prefix");
    for (int n = 0; n < d; ++n) {
        int m = std::max(t0.psi(n), t1.psi(n));
        Morphism a0 = compose(t0.cod().between(t0.psi(n), m), t0.component(n));
        Morphism a1 = compose(t1.cod().between(t1.psi(n), m), t1.component(n));
        if (a0.map() != a1.map()) return false;
    }
    return true;
}

std::pair<int, Morphism> factor_through_stage(const SeqMorphism& f) {
    const SequenceK& c = f.dom();
    for (int n = 0; n < c.depth(); ++n) {
        if (c.stage(n) != c.stage(0) || (n + 1 < c.depth() && !c.connector(n).is_identity()))
            throw std::invalid_argument("factor_through_stage: domain must be a one-object sequence");
    }
    const SequenceK& x = f.cod();
    const Morphism& tau = f.component(0);
    const int p = f.psi(0);
    for (int n = 0; n < x.depth(); ++n) {
        int m = std::max(n, p);
        Morphism target = compose(x.between(p, m), tau);
        Morphism via = x.between(n, m);
        std::vector<int> inv(static_cast<size_t>(x.stage(m).size()), -1);
        for (int u = 0; u < x.stage(n).size(); ++u) inv[static_cast<size_t>(via(u))] = u;
        std::vector<int> fmap(static_cast<size_t>(c.stage(0).size()));
        bool ok = true;
        for (int v = 0; v < c.stage(0).size() && ok; ++v) {
            int u = inv[static_cast<size_t>(target(v))];
            if (u < 0)
                ok = false;
            else
                fmap[static_cast<size_t>(v)] = u;
        }
        if (ok) return {n, make_arrow(c.stage_ref(0), x.stage_ref(n), std::move(fmap))};
    }
    throw std::logic_error("factor_through_stage: no factorization, arrow was not natural");
}

CofinalIso cofinal_subsequence_iso(const SequenceK& x, const std::vector<int>& indices) {
    if (indices.empty()) throw std::out_of_range("cofinal subsequence: empty index list");
    for (size_t s = 0; s < indices.size(); ++s) {
        if (indices[s] < 0 || indices[s] >= x.depth())
            throw std::out_of_range("cofinal subsequence: index " + std::to_string(indices[s]) +
                                    " outside depth " + std::to_string(x.depth()));
        if (s > 0 && indices[s] <= indices[s - 1])
            throw std::out_of_range("cofinal subsequence: indices must increase strictly");
    }

    std::vector<StructureRef> st;
    std::vector<Morphism> cn;
    for (size_t s = 0; s < indices.size(); ++s) {
        st.push_back(x.stage_ref(indices[s]));
        if (s > 0) cn.push_back(x.between(indices[s - 1], indices[s]));
    }
    SequenceK sub(std::move(st), std::move(cn));

    std::vector<int> ipsi;
    std::vector<Morphism> icomp;
    for (size_t s = 0; s < indices.size(); ++s) {
        ipsi.push_back(indices[s]);
        icomp.push_back(Morphism::identity(x.stage_ref(indices[s])));
    }
    SeqMorphism into(sub, x, std::move(ipsi), std::move(icomp));

    const int covered = indices.back() + 1;
    SequenceK xpre = x.prefix(covered);
    std::vector<int> jpsi;
    std::vector<Morphism> jcomp;
    for (int n = 0; n < covered; ++n) {
        int s = static_cast<int>(std::lower_bound(indices.begin(), indices.end(), n) -
                                 indices.begin());
        jpsi.push_back(s);
        jcomp.push_back(x.between(n, indices[static_cast<size_t>(s)]));
    }
    SeqMorphism back(std::move(xpre), sub, std::move(jpsi), std::move(jcomp));
    return {std::move(sub), std::move(into), std::move(back)};
}

SeqAmalgam sequence_amalgamation(const CategoryPair& pair, const SeqMorphism& f,
                                 const SeqMorphism& g) {
    const SequenceK& cf = f.dom();
    const SequenceK& cg = g.dom();
    if (cf.stage(0) != cg.stage(0))
        throw std::invalid_argument("sequence_amalgamation: arrows leave different objects");
    for (const SequenceK* c : {&cf, &cg})
        for (int n = 0; n + 1 < c->depth(); ++n)
            if (!c->connector(n).is_identity())
                throw std::invalid_argument("sequence_amalgamation: domain must be a one-object sequence");
    if (!f.all_K() || !g.all_K())
        throw std::invalid_argument("sequence_amalgamation: both arrows must be stage embeddings");

    const SequenceK& a = f.cod();
    const SequenceK& b = g.cod();
    const int pf = f.psi(0), qg = g.psi(0);

    CommutingSquare seed = amalgamate(pair, f.component(0), g.component(0));
    std::vector<StructureRef> wst{seed.corner_ref()};
    std::vector<Morphism> wcn;

    std::vector<int> psi_a(static_cast<size_t>(a.depth()), 0);
    std::vector<int> psi_b(static_cast<size_t>(b.depth()), 0);
    std::vector<Morphism> comp_a, comp_b;
    for (int n = 0; n <= pf; ++n) comp_a.push_back(compose(seed.cospan_left(), a.between(n, pf)));
    for (int n = 0; n <= qg; ++n) comp_b.push_back(compose(seed.cospan_right(), b.between(n, qg)));

    Morphism cur_a = seed.cospan_left();
    Morphism cur_b = seed.cospan_right();
    int ai = pf + 1, bi = qg + 1;
    bool serve_a = true;
    while (ai < a.depth() || bi < b.depth()) {
        const bool can_a = ai < a.depth();
        const bool take_a = can_a && (serve_a || bi >= b.depth());
        const SequenceK& side = take_a ? a : b;
        Morphism& cur = take_a ? cur_a : cur_b;
        Morphism& other = take_a ? cur_b : cur_a;
        int& idx = take_a ? ai : bi;
        auto& psi = take_a ? psi_a : psi_b;
        auto& comp = take_a ? comp_a : comp_b;

        const Morphism& conn = side.connector(idx - 1);
        if (!conn.is_identity()) {
            CommutingSquare sq = amalgamate(pair, conn, cur);
            wcn.push_back(sq.cospan_right());
            wst.push_back(sq.corner_ref());
            cur = sq.cospan_left();
            other = compose(sq.cospan_right(), other);
        }
        psi[static_cast<size_t>(idx)] = static_cast<int>(wst.size()) - 1;
        comp.push_back(cur);
        ++idx;
        serve_a = !serve_a;
    }

    SequenceK w(std::move(wst), std::move(wcn));
    SeqMorphism fa(a, w, std::move(psi_a), std::move(comp_a));
    SeqMorphism gb(b, w, std::move(psi_b), std::move(comp_b));
    return {std::move(w), std::move(fa), std::move(gb)};
}

} // namespace fralim
