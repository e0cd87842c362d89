#pragma once

// Projective-delineability variant of the single-cell construction. The
// delineability step adds discriminants for every polynomial but leading
// coefficients only where the cyclic-order argument cannot certify that the
// roots outside the cell stay outside.

#include "scell/scc.hpp"

#include <deque>

namespace scell {

namespace detail {

/// Separation graph over root positions plus infinity, oriented along the
/// arc that leaves the cell through its upper bound and returns through the
/// lower one.
class ArcGraph {
public:
    ArcGraph(const LevelRoots& L) : L_(L) {
        std::size_t G = L.groups.size();
        inf_ = G;
        if (L.section_pos) {
            std::size_t s = *L.section_pos;
            start_ = s;
            end_ = G + 1;  // second copy of the section position
            for (std::size_t g = s + 1; g < G; ++g) order_.push_back(g);
            order_.push_back(inf_);
            for (std::size_t g = 0; g < s; ++g) order_.push_back(g);
        } else {
            start_ = *L.upper_pos;
            end_ = *L.lower_pos;
            for (std::size_t g = start_ + 1; g < G; ++g) order_.push_back(g);
            order_.push_back(inf_);
            for (std::size_t g = 0; g < end_; ++g) order_.push_back(g);
        }
        order_.insert(order_.begin(), start_);
        order_.push_back(end_);
        rank_.assign(G + 2, -1);
        for (std::size_t k = 0; k < order_.size(); ++k) rank_[order_[k]] = static_cast<int>(k);
        adj_.assign(G + 2, {});
    }

    /// Undirected separation between two positions (or a position and inf_).
    void connect(std::size_t a, std::size_t b) {
        if (a == b) return;
        link(a, b);
        if (L_.section_pos) {
            std::size_t s = *L_.section_pos;
            if (a == s) link(end_, b);
            if (b == s) link(a, end_);
        }
    }

    std::size_t infinity() const { return inf_; }
    std::size_t start() const { return start_; }
    std::size_t end() const { return end_; }

    /// Shortest forward path from `from` to `to` (inclusive), if any.
    std::optional<std::vector<std::size_t>> path(std::size_t from, std::size_t to) const {
        std::vector<long> prev(adj_.size(), -2);
        std::deque<std::size_t> q{from};
        prev[from] = -1;
        while (!q.empty()) {
            auto x = q.front();
            q.pop_front();
            if (x == to) break;
            for (auto y : adj_[x])
                if (prev[y] == -2) {
                    prev[y] = static_cast<long>(x);
                    q.push_back(y);
                }
        }
        if (prev[to] == -2) return std::nullopt;
        std::vector<std::size_t> p;
        for (long x = static_cast<long>(to); x != -1; x = prev[x]) p.push_back(static_cast<std::size_t>(x));
        std::reverse(p.begin(), p.end());
        return p;
    }

private:
    void link(std::size_t a, std::size_t b) {
        if (rank_[a] < 0 || rank_[b] < 0) return;
        if (rank_[a] > rank_[b]) std::swap(a, b);
        auto& out = adj_[a];
        auto it = std::lower_bound(out.begin(), out.end(), b, [&](std::size_t x, std::size_t y) { return rank_[x] < rank_[y]; });
        if (it == out.end() || *it != b) out.insert(it, b);
    }

    const LevelRoots& L_;
    std::size_t inf_ = 0, start_ = 0, end_ = 0;
    std::vector<std::size_t> order_;
    std::vector<int> rank_;
    std::vector<std::vector<std::size_t>> adj_;
};

class ProjectiveBuilder : public Builder {
public:
    using Builder::Builder;

protected:
    void project(const LevelRoots& L) override {
        OrderingRelation rel = cell_.heuristic == Heuristic::LDB_PD ? ordering_ldb(L) : ordering_bc(L);
        std::span<const Rational> s(cell_.sample);
        auto prefix = s.first(L.level - 1);
        Var v = L.var();
        std::size_t np = L.polys.size();

        std::vector<bool> has_roots(np, false), is_bound(np, false);
        for (const auto& r : L.roots) has_roots[r.poly] = true;
        for (auto pos : {L.lower_pos, L.upper_pos, L.section_pos})
            if (pos) is_bound[L.roots[L.rep[*pos]].poly] = true;
        bool unbounded = !L.section_pos && !(L.lower_pos && L.upper_pos);

        std::vector<PdStatus> status(np, PdStatus::Trivial);
        std::vector<bool> in_d(np, true), candidate(np, false);
        for (std::size_t k = 0; k < np; ++k) {
            Polynomial lc = ldcf(L.polys[k], v);
            if (unbounded && has_roots[k]) status[k] = PdStatus::BlockedUnbounded;
            else if (lc.is_constant()) status[k] = PdStatus::Trivial;
            else if (is_bound[k]) status[k] = PdStatus::LdcfNeededBound;
            else if (!has_roots[k]) status[k] = PdStatus::LdcfNeededNoRoots;
            else if (eval_prefix(lc, prefix).is_zero()) status[k] = PdStatus::BlockedNoPairing;
            else {
                candidate[k] = true;
                in_d[k] = false;
            }
        }

        std::vector<std::vector<Chain>> chains(np);
        if (std::any_of(candidate.begin(), candidate.end(), [](bool b) { return b; })) {
            // Grow D until every remaining candidate is certified.
            for (bool changed = true; changed;) {
                changed = false;
                ArcGraph G = graph(L, rel, in_d);
                for (std::size_t k = 0; k < np && !changed; ++k) {
                    if (!candidate[k] || in_d[k]) continue;
                    auto ch = certify(L, G, k);
                    if (!ch) {
                        in_d[k] = true;
                        status[k] = PdStatus::BlockedNoPairing;
                        changed = true;
                    }
                }
            }
            ArcGraph G = graph(L, rel, in_d);
            for (std::size_t k = 0; k < np; ++k) {
                if (!candidate[k] || in_d[k]) continue;
                status[k] = PdStatus::Omitted;
                chains[k] = *certify(L, G, k);
            }
        }

        for (std::size_t k = 0; k < np; ++k) {
            cell_.pd.push_back({L.polys[k], L.level, status[k], chains[k]});
            switch (status[k]) {
                case PdStatus::Omitted: ++cell_.stats.ldcfs_omitted; break;
                case PdStatus::BlockedUnbounded: ++cell_.stats.pd_blocked_unbounded; break;
                case PdStatus::BlockedNoPairing: ++cell_.stats.pd_blocked_no_pairing; break;
                default: break;
            }
        }
        emit(L, rel, in_d);
    }

private:
    ArcGraph graph(const LevelRoots& L, const OrderingRelation& rel, const std::vector<bool>& in_d) {
        ArcGraph G(L);
        Var v = L.var();
        std::span<const Rational> s(cell_.sample);
        auto prefix = s.first(L.level - 1);
        for (const auto& p : rel)
            if (!p.equal) G.connect(L.roots[p.a].pos, L.roots[p.b].pos);
        std::vector<std::vector<std::size_t>> by_poly(L.polys.size());
        for (std::size_t r = 0; r < L.roots.size(); ++r) by_poly[L.roots[r].poly].push_back(r);
        for (const auto& rs : by_poly)
            for (std::size_t a = 0; a < rs.size(); ++a)
                for (std::size_t b = a + 1; b < rs.size(); ++b) G.connect(L.roots[rs[a]].pos, L.roots[rs[b]].pos);
        // A resultant nonzero at the sample keeps all root pairs apart.
        for (auto [a, b] : resultant_pairs(L, rel)) {
            Polynomial r = resultant_of(L.polys[a], L.polys[b], v);
            if (eval_prefix(r, prefix).is_zero()) continue;
            for (auto x : by_poly[a])
                for (auto y : by_poly[b]) G.connect(L.roots[x].pos, L.roots[y].pos);
        }
        for (std::size_t k = 0; k < L.polys.size(); ++k)
            if (in_d[k])
                for (auto r : by_poly[k]) G.connect(L.roots[r].pos, G.infinity());
        return G;
    }

    ChainNode node(const LevelRoots& L, const ArcGraph& G, std::size_t x) const {
        if (x == G.infinity()) return std::nullopt;
        if (x >= L.groups.size()) x = *L.section_pos;
        return L.indexed(L.rep[x]);
    }

    /// One chain per root of poly k outside the closed cell, or nullopt.
    std::optional<std::vector<Chain>> certify(const LevelRoots& L, const ArcGraph& G, std::size_t k) const {
        std::vector<Chain> out;
        for (const auto& r : L.roots) {
            if (r.poly != k) continue;
            std::size_t g = r.pos;
            if (g == L.lower_pos || g == L.upper_pos || g == L.section_pos) continue;
            auto up = G.path(G.start(), g);
            auto down = G.path(g, G.end());
            if (!up || !down) return std::nullopt;
            Chain ch;
            if (!L.section_pos) ch.push_back(node(L, G, G.end()));
            for (auto x : *up) ch.push_back(node(L, G, x));
            for (std::size_t j = 1; j + 1 < down->size(); ++j) ch.push_back(node(L, G, (*down)[j]));
            out.push_back(std::move(ch));
        }
        return out;
    }
};

// Projective roots of p over the prefix that lie outside the closed cell,
// ordered along the arc leaving through the upper bound (or the section).
// Entries are nullopt for infinity. nullopt overall when p vanishes or has a
// multiple root at infinity.
inline std::optional<std::vector<std::optional<AlgebraicValue>>> outside_arc(const Polynomial& p, std::size_t level,
                                                                               const EvaluatedInterval& I,
                                                                               std::span<const Rational> prefix) {
    Var v = level - 1;
    std::uint32_t d = p.degree(v);
    Polynomial q = eval_prefix(p, prefix.first(level - 1));
    if (q.is_zero()) return std::nullopt;
    std::uint32_t dq = q.degree_or_zero(v);
    if (d - dq > 1) return std::nullopt;
    std::vector<AlgebraicValue> roots;
    if (dq > 0) roots = isolate(upoly::from_polynomial(q, v));
    std::vector<std::optional<AlgebraicValue>> above, below;
    for (auto& r : roots) {
        if (I.upper && compare(r, *I.upper) > 0) above.emplace_back(r);
        else if (I.lower && compare(r, *I.lower) < 0) below.emplace_back(r);
    }
    std::vector<std::optional<AlgebraicValue>> arc = std::move(above);
    if (d > dq) arc.emplace_back(std::nullopt);
    for (auto& r : below) arc.push_back(std::move(r));
    return arc;
}

}  // namespace detail

/// Alg. 2 with BC-PD or LDB-PD.
inline CellResult construct_cell_pd(const VarOrder& vars, const std::vector<Polynomial>& P, std::vector<Rational> s, Heuristic h,
                                    Options opt = {}) {
    if (!is_projective(h)) throw DomainError("construct_cell_pd needs a projective heuristic");
    if (vars.size() != s.size()) throw DomainError("sample arity does not match the variable count");
    detail::ProjectiveBuilder b(vars, P, std::move(s), h, opt);
    return b.run();
}

/// Dispatches on the heuristic.
inline CellResult construct(const VarOrder& vars, const std::vector<Polynomial>& P, std::vector<Rational> s, Heuristic h,
                            Options opt = {}) {
    return is_projective(h) ? construct_cell_pd(vars, P, std::move(s), h, opt) : construct_cell(vars, P, std::move(s), h, opt);
}

/// Values of a stored chain at another prefix of the same cell. Bound nodes
/// are evaluated as indexed roots; other nodes keep their rank along the
/// outside arc they had at the sample. nullopt when that is not well defined.
inline std::optional<std::vector<ProjPoint>> evaluate_chain(const Cell& c, std::size_t level, const Chain& chain,
                                                            std::span<const Rational> prefix) {
    const SymbolicInterval& I = c.intervals.at(level - 1);
    std::span<const Rational> s(c.sample);
    auto at_s = evaluate_interval(I, s.first(level - 1));
    auto at_r = evaluate_interval(I, prefix.first(level - 1));
    if (!at_s.defined || !at_r.defined) return std::nullopt;
    std::vector<ProjPoint> out;
    for (const auto& n : chain) {
        if (!n) {
            out.push_back(ProjPoint::infinity());
            continue;
        }
        bool is_bound = (I.lower() && *I.lower() == *n) || (I.upper() && *I.upper() == *n);
        if (is_bound) {
            auto v = eval_indexed_root(*n, prefix);
            if (!v) return std::nullopt;
            out.emplace_back(*v);
            continue;
        }
        auto here = eval_indexed_root(*n, s);
        if (!here) return std::nullopt;
        auto arc_s = detail::outside_arc(n->poly, level, at_s, s);
        auto arc_r = detail::outside_arc(n->poly, level, at_r, prefix);
        if (!arc_s || !arc_r || arc_s->size() != arc_r->size()) return std::nullopt;
        std::optional<std::size_t> rank;
        for (std::size_t k = 0; k < arc_s->size(); ++k)
            if ((*arc_s)[k] && compare(*(*arc_s)[k], *here) == 0) rank = k;
        if (!rank) return std::nullopt;
        const auto& val = (*arc_r)[*rank];
        out.push_back(val ? ProjPoint(*val) : ProjPoint::infinity());
    }
    return out;
}

/// cyclic_chain on the evaluated chain; two-element chains need distinctness.
inline bool chain_holds(const Cell& c, std::size_t level, const Chain& chain, std::span<const Rational> prefix) {
    auto pts = evaluate_chain(c, level, chain, prefix);
    if (!pts) return false;
    try {
        if (pts->size() < 3) {
            return pts->size() < 2 || extended_compare((*pts)[0], (*pts)[1]) != 0;
        }
        return cyclic_chain(*pts);
    } catch (const DomainError&) {
        return false;
    }
}

/// ldcfs_omitted / (ldcfs_omitted + blocked), or nullopt when the denominator is 0.
inline std::optional<Rational> pd_applicability_ratio(const CounterSet& st) {
    auto den = st.ldcfs_omitted + st.pd_blocked_unbounded + st.pd_blocked_no_pairing;
    if (den == 0) return std::nullopt;
    return rat_normalize(static_cast<long>(st.ldcfs_omitted), static_cast<long>(den));
}

}  // namespace scell
