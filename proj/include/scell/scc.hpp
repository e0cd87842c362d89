#pragma once

// Classical single-cell construction with the BC and LDB root-ordering
// heuristics. The level loop lives in detail::Builder so the projective
// variant can replace the delineability step.

#include "scell/cellmodel.hpp"

#include <map>
#include <set>

namespace scell {

struct Options {
    /// Replace a nullified polynomial by its coefficients and its lowest-order
    /// partial derivatives that do not vanish at the sample.
    bool derivative_fallback = false;
};

/// Roots of one level at the sample, grouped into positions of equal value.
struct LevelRoots {
    struct Root {
        std::size_t poly;  // index into polys
        unsigned index;    // 1-based index among the real roots of that poly
        AlgebraicValue value;
        std::size_t pos;   // index into groups
    };

    std::size_t level = 0;
    std::vector<Polynomial> polys;
    std::vector<Root> roots;                      // ascending
    std::vector<std::vector<std::size_t>> groups;  // root indices with equal value
    std::vector<std::size_t> rep;                 // representative root per group
    SymbolicInterval interval;
    std::optional<std::size_t> lower_pos, upper_pos, section_pos;

    Var var() const { return level - 1; }
    IndexedRoot indexed(std::size_t root) const { return {polys[roots[root].poly], roots[root].index}; }
    std::uint32_t degree(std::size_t poly) const { return polys[poly].degree(var()); }
};

/// Sorts all roots of `polys` at the prefix and selects the interval around s_i.
inline LevelRoots compute_level_roots(std::vector<Polynomial> polys, std::span<const Rational> sample, std::size_t level) {
    LevelRoots L;
    L.level = level;
    L.polys = std::move(polys);
    Var v = level - 1;
    std::vector<LevelRoots::Root> all;
    for (std::size_t k = 0; k < L.polys.size(); ++k) {
        Polynomial q = eval_prefix(L.polys[k], sample.first(level - 1));
        if (q.is_constant()) continue;
        auto rs = isolate(upoly::from_polynomial(q, v));
        for (std::size_t j = 0; j < rs.size(); ++j) all.push_back({k, static_cast<unsigned>(j + 1), std::move(rs[j]), 0});
    }
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return compare(a.value, b.value) < 0; });
    L.roots = std::move(all);
    for (std::size_t r = 0; r < L.roots.size(); ++r) {
        if (r == 0 || compare(L.roots[r - 1].value, L.roots[r].value) != 0) L.groups.emplace_back();
        L.roots[r].pos = L.groups.size() - 1;
        L.groups.back().push_back(r);
    }
    // Representative: minimal degree in the main variable, then polynomial order.
    for (const auto& g : L.groups) {
        std::size_t best = g.front();
        for (auto r : g) {
            auto pr = L.roots[r].poly, pb = L.roots[best].poly;
            auto dr = L.degree(pr), db = L.degree(pb);
            if (dr < db || (dr == db && L.polys[pr] < L.polys[pb])) best = r;
        }
        L.rep.push_back(best);
    }
    auto x = AlgebraicValue::rational(sample[level - 1]);
    for (std::size_t g = 0; g < L.groups.size(); ++g) {
        auto c = compare(L.roots[L.rep[g]].value, x);
        if (c == 0) L.section_pos = g;
        else if (c < 0) L.lower_pos = g;
        else if (!L.upper_pos) L.upper_pos = g;
    }
    if (L.section_pos) {
        L.lower_pos.reset();
        L.upper_pos.reset();
        L.interval = SymbolicInterval::section(L.indexed(L.rep[*L.section_pos]));
    } else {
        std::optional<IndexedRoot> lo, hi;
        if (L.lower_pos) lo = L.indexed(L.rep[*L.lower_pos]);
        if (L.upper_pos) hi = L.indexed(L.rep[*L.upper_pos]);
        L.interval = SymbolicInterval::sector(lo, hi);
    }
    return L;
}

/// A pair of roots (a below or equal to b) whose relation must be maintained.
struct OrderPair {
    std::size_t a;
    std::size_t b;
    bool equal;
    bool operator==(const OrderPair&) const = default;
};
using OrderingRelation = std::vector<OrderPair>;

namespace detail {

// '=' pairs between every member of a bound group and its representative.
inline void add_group_equalities(const LevelRoots& L, std::size_t g, OrderingRelation& rel) {
    for (auto r : L.groups[g])
        if (r != L.rep[g]) rel.push_back({L.rep[g], r, true});
}

}  // namespace detail

/// Biggest-cell ordering: every outside root is paired directly with the nearest bound.
inline OrderingRelation ordering_bc(const LevelRoots& L) {
    OrderingRelation rel;
    if (L.section_pos) {
        std::size_t s = *L.section_pos, rep = L.rep[s];
        for (std::size_t r = 0; r < L.roots.size(); ++r) {
            if (r == rep) continue;
            auto pos = L.roots[r].pos;
            if (pos == s) rel.push_back({rep, r, true});
            else if (pos < s) rel.push_back({r, rep, false});
            else rel.push_back({rep, r, false});
        }
        return rel;
    }
    if (L.lower_pos) {
        std::size_t l = *L.lower_pos, rep = L.rep[l];
        for (std::size_t g = 0; g < l; ++g)
            for (auto r : L.groups[g]) rel.push_back({r, rep, false});
        detail::add_group_equalities(L, l, rel);
    }
    if (L.upper_pos) {
        std::size_t u = *L.upper_pos, rep = L.rep[u];
        detail::add_group_equalities(L, u, rel);
        for (std::size_t g = u + 1; g < L.groups.size(); ++g)
            for (auto r : L.groups[g]) rel.push_back({rep, r, false});
    }
    if (L.lower_pos && L.upper_pos) rel.push_back({L.rep[*L.lower_pos], L.rep[*L.upper_pos], false});
    return rel;
}

namespace detail {

inline std::pair<std::size_t, std::size_t> poly_pair(std::size_t p, std::size_t q) { return {std::min(p, q), std::max(p, q)}; }

// Greedy outward anchoring on one side of a bound group.
inline void ldb_side(const LevelRoots& L, std::size_t bound_group, bool below, OrderingRelation& rel,
                     std::set<std::pair<std::size_t, std::size_t>>& selected) {
    std::size_t brep = L.rep[bound_group];
    std::vector<std::size_t> anchored{brep};
    auto visit_group = [&](std::size_t g) {
        for (auto r : L.groups[g]) {
            std::size_t pr = L.roots[r].poly;
            std::size_t best = anchored.front();
            unsigned long best_cost = ~0ul;
            for (auto c : anchored) {
                std::size_t pc = L.roots[c].poly;
                unsigned long cost = 0;
                if (pr != pc && !selected.count(poly_pair(pr, pc)))
                    cost = static_cast<unsigned long>(L.degree(pr)) * L.degree(pc);
                if (cost < best_cost) {
                    best_cost = cost;
                    best = c;
                }
            }
            bool eq = L.roots[best].pos == g;
            if (below) rel.push_back({r, best, eq});
            else rel.push_back({best, r, eq});
            if (L.roots[best].poly != pr) selected.insert(poly_pair(pr, L.roots[best].poly));
            anchored.push_back(r);
        }
    };
    if (below) {
        for (std::size_t g = bound_group; g-- > 0;) visit_group(g);
    } else {
        for (std::size_t g = bound_group + 1; g < L.groups.size(); ++g) visit_group(g);
    }
}

}  // namespace detail

/// Sum of deg(p)*deg(q) over the distinct polynomial pairs of a relation.
inline unsigned long resultant_degree_sum(const LevelRoots& L, const OrderingRelation& rel) {
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& pr : rel) {
        auto p = L.roots[pr.a].poly, q = L.roots[pr.b].poly;
        if (p != q) pairs.insert(detail::poly_pair(p, q));
    }
    unsigned long sum = 0;
    for (auto [p, q] : pairs) sum += static_cast<unsigned long>(L.degree(p)) * L.degree(q);
    return sum;
}

/// Lowest-degree-barrier ordering: outside roots chain through cheaper
/// neighbours; falls back to the BC relation if that is cheaper overall.
inline OrderingRelation ordering_ldb(const LevelRoots& L) {
    OrderingRelation rel;
    std::set<std::pair<std::size_t, std::size_t>> selected;
    auto note = [&](const OrderPair& p) {
        auto a = L.roots[p.a].poly, b = L.roots[p.b].poly;
        if (a != b) selected.insert(detail::poly_pair(a, b));
    };
    if (L.section_pos) {
        detail::add_group_equalities(L, *L.section_pos, rel);
        for (auto& p : rel) note(p);
        detail::ldb_side(L, *L.section_pos, true, rel, selected);
        detail::ldb_side(L, *L.section_pos, false, rel, selected);
    } else {
        if (L.lower_pos && L.upper_pos) {
            rel.push_back({L.rep[*L.lower_pos], L.rep[*L.upper_pos], false});
            note(rel.back());
        }
        if (L.lower_pos) {
            std::size_t before = rel.size();
            detail::add_group_equalities(L, *L.lower_pos, rel);
            for (std::size_t k = before; k < rel.size(); ++k) note(rel[k]);
            detail::ldb_side(L, *L.lower_pos, true, rel, selected);
        }
        if (L.upper_pos) {
            std::size_t before = rel.size();
            detail::add_group_equalities(L, *L.upper_pos, rel);
            for (std::size_t k = before; k < rel.size(); ++k) note(rel[k]);
            detail::ldb_side(L, *L.upper_pos, false, rel, selected);
        }
    }
    OrderingRelation bc = ordering_bc(L);
    if (resultant_degree_sum(L, rel) > resultant_degree_sum(L, bc)) return bc;
    return rel;
}

/// Distinct polynomial pairs of a relation, in order of first appearance.
inline std::vector<std::pair<std::size_t, std::size_t>> resultant_pairs(const LevelRoots& L, const OrderingRelation& rel) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& pr : rel) {
        auto p = L.roots[pr.a].poly, q = L.roots[pr.b].poly;
        if (p == q) continue;
        auto key = detail::poly_pair(p, q);
        if (seen.insert(key).second) out.push_back(key);
    }
    return out;
}

/// A coefficient of p in x_level that is nonzero at the sample prefix, or
/// nothing when some coefficient is a nonzero constant. Prefers the ldcf.
inline std::optional<Polynomial> nonnull_coeff(const Polynomial& p, std::span<const Rational> sample, std::size_t level) {
    auto cs = coeffs(p, level - 1);
    for (const auto& c : cs)
        if (!c.is_zero() && c.is_constant()) return std::nullopt;
    auto prefix = sample.first(level - 1);
    auto nonzero = [&](const Polynomial& c) { return !c.is_zero() && !eval_prefix(c, prefix).is_zero(); };
    if (nonzero(cs.back())) return cs.back();
    std::optional<Polynomial> best;
    for (std::size_t k = cs.size(); k-- > 0;) {
        if (!nonzero(cs[k])) continue;
        if (!best || cs[k].total_degree() < best->total_degree()) best = cs[k];
    }
    if (!best) throw DomainError("nullified polynomial has no nonzero coefficient");
    return best;
}

namespace detail {

class Builder {
public:
    Builder(const VarOrder& vars, const std::vector<Polynomial>& P, std::vector<Rational> s, Heuristic h, Options opt)
        : n_(s.size()), opt_(opt) {
        cell_.vars = vars;
        cell_.heuristic = h;
        cell_.sample = std::move(s);
        for (const auto& p : P) {
            if (p.level() > n_) throw DomainError("polynomial level exceeds the sample dimension");
            track_degree(p);
            if (!p.is_constant()) originals_.emplace(p.level(), normalized(p));
        }
        cell_.inputs = normalize_basis(P);
        buckets_.resize(n_ + 1);
        for (const auto& p : cell_.inputs) {
            buckets_[p.level()].insert(p);
            track_degree(p);
        }
    }

    virtual ~Builder() = default;

    CellResult run() {
        cell_.intervals.resize(n_);
        for (std::size_t i = n_; i >= 1; --i) {
            if (auto f = handle_nullification(i)) return *f;
            if (i >= 2) refine_bucket(i);
            LevelRoots L = compute_level_roots({buckets_[i].begin(), buckets_[i].end()}, cell_.sample, i);
            cell_.stats.roots_computed += L.roots.size();
            cell_.intervals[i - 1] = L.interval;
            if (i >= 2) project(L);
        }
        return cell_;
    }

protected:
    /// Emits the projection of one level; the default is the classical one.
    virtual void project(const LevelRoots& L) {
        OrderingRelation rel = cell_.heuristic == Heuristic::LDB || cell_.heuristic == Heuristic::LDB_PD ? ordering_ldb(L)
                                                                                                      : ordering_bc(L);
        std::vector<bool> with_ldcf(L.polys.size(), true);
        emit(L, rel, with_ldcf);
    }

    /// Coefficient, disc and (selected) ldcf per polynomial, then resultants.
    void emit(const LevelRoots& L, const OrderingRelation& rel, const std::vector<bool>& with_ldcf) {
        std::span<const Rational> s(cell_.sample);
        Var v = L.var();
        for (std::size_t k = 0; k < L.polys.size(); ++k) {
            const Polynomial& p = L.polys[k];
            Polynomial lc = ldcf(p, v);
            auto c = nonnull_coeff(p, s, L.level);
            if (c && !(with_ldcf[k] && *c == lc)) add(*c, TagKind::CoeffNonnull, {p}, L.level);
            add(discriminant(p, v), TagKind::Disc, {p}, L.level);
            if (with_ldcf[k]) add(lc, TagKind::Ldcf, {p}, L.level);
        }
        for (auto [a, b] : resultant_pairs(L, rel)) add(resultant_of(L.polys[a], L.polys[b], v), TagKind::Res, {L.polys[a], L.polys[b]}, L.level);
    }

    Polynomial resultant_of(const Polynomial& p, const Polynomial& q, Var v) {
        auto key = std::make_pair(std::min(p, q), std::max(p, q));
        auto it = res_cache_.find(key);
        if (it != res_cache_.end()) return it->second;
        Polynomial r = resultant(key.first, key.second, v);
        if (r.is_zero()) throw std::logic_error("zero resultant between basis polynomials");
        res_cache_.emplace(key, r);
        return r;
    }

    /// Normalizes `raw` into basis pieces and files each new one.
    void add(const Polynomial& raw, TagKind tag, std::vector<Polynomial> parents, std::size_t variable) {
        if (raw.is_constant()) return;
        track_degree(raw);
        for (auto& piece : normalize_basis({raw})) record(piece, tag, parents, variable, true);
    }

    void record(const Polynomial& piece, TagKind tag, const std::vector<Polynomial>& parents, std::size_t variable, bool count) {
        track_degree(piece);
        buckets_[piece.level()].insert(piece);
        if (trace_index_.count(piece)) return;
        trace_index_.emplace(piece, cell_.trace.size());
        cell_.trace.push_back({piece, tag, parents, variable});
        if (!count) return;
        switch (tag) {
            case TagKind::Disc: ++cell_.stats.discriminants_added; break;
            case TagKind::Ldcf: ++cell_.stats.ldcfs_added; break;
            case TagKind::CoeffNonnull: ++cell_.stats.coeffs_added; break;
            case TagKind::Res: ++cell_.stats.resultants_added; break;
            case TagKind::DerivativeFallback: break;
        }
    }

    void track_degree(const Polynomial& p) {
        cell_.stats.max_total_degree = std::max<unsigned long>(cell_.stats.max_total_degree, p.total_degree());
    }

    std::size_t n_;
    Options opt_;
    Cell cell_;
    std::vector<std::set<Polynomial>> buckets_;
    std::map<Polynomial, std::size_t> trace_index_;
    std::map<std::pair<Polynomial, Polynomial>, Polynomial> res_cache_;
    std::multimap<std::size_t, Polynomial> originals_;

private:
    // Inputs are checked as given as well as after basis normalization, so a
    // nullified product is reported even when its factors are not.
    std::optional<Failure> handle_nullification(std::size_t i) {
        std::span<const Rational> s(cell_.sample);
        auto [lo, hi] = originals_.equal_range(i);
        for (auto it = lo; it != hi; ++it) {
            const Polynomial& p = it->second;
            if (!eval_prefix(p, s.first(i - 1)).is_zero() || buckets_[i].count(p)) continue;
            if (!opt_.derivative_fallback) return Failure{"nullified", p, i};
            fallback(p, i);
        }
        for (;;) {
            std::optional<Polynomial> bad;
            for (const auto& p : buckets_[i])
                if (eval_prefix(p, s.first(i - 1)).is_zero()) {
                    bad = p;
                    break;
                }
            if (!bad) return std::nullopt;
            if (!opt_.derivative_fallback) return Failure{"nullified", *bad, i};
            buckets_[i].erase(*bad);
            fallback(*bad, i);
        }
    }

    void fallback(const Polynomial& bad, std::size_t i) {
        std::span<const Rational> s(cell_.sample);
        for (const auto& c : coeffs(bad, i - 1))
            if (!c.is_constant()) add(c, TagKind::DerivativeFallback, {bad}, i);
        for (const auto& d : lowest_nonvanishing_derivatives(bad, s.first(i))) add(d, TagKind::DerivativeFallback, {bad}, i);
    }

    static std::vector<Polynomial> lowest_nonvanishing_derivatives(const Polynomial& p, std::span<const Rational> point) {
        std::vector<Polynomial> layer{p};
        for (std::uint32_t order = 1; order <= p.total_degree(); ++order) {
            std::set<Polynomial> next;
            for (const auto& q : layer)
                for (Var v = 0; v < point.size(); ++v) {
                    Polynomial d = derivative(q, v);
                    if (!d.is_zero()) next.insert(d);
                }
            std::vector<Polynomial> hits;
            for (const auto& d : next)
                if (evaluate(d, point) != 0) hits.push_back(d);
            if (!hits.empty()) return hits;
            layer.assign(next.begin(), next.end());
        }
        return {};
    }

    // Pairwise gcd splitting inside one level; new pieces inherit provenance.
    void refine_bucket(std::size_t i) {
        auto& B = buckets_[i];
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<Polynomial> items(B.begin(), B.end());
            for (std::size_t a = 0; a < items.size() && !changed; ++a) {
                for (std::size_t b = a + 1; b < items.size() && !changed; ++b) {
                    Polynomial g = gcd(items[a], items[b]);
                    if (g.is_constant()) continue;
                    const TraceEntry* origin = nullptr;
                    for (const auto& x : {items[a], items[b]}) {
                        auto it = trace_index_.find(x);
                        if (it != trace_index_.end() && !origin) origin = &cell_.trace[it->second];
                    }
                    TraceEntry from = origin ? *origin : TraceEntry{items[a], TagKind::Res, {}, i + 1};
                    B.erase(items[a]);
                    B.erase(items[b]);
                    for (const auto& f : {divide_exact(items[a], g), divide_exact(items[b], g), g}) {
                        if (f.is_constant()) continue;
                        Polynomial nf = normalized(f);
                        record(nf, from.tag, from.parents, from.variable, false);
                    }
                    changed = true;
                }
            }
        }
    }
};

}  // namespace detail

/// Alg. 1 with BC or LDB. Input polynomials may be arbitrary; they are
/// normalized into a coprime squarefree basis first.
inline CellResult construct_cell(const VarOrder& vars, const std::vector<Polynomial>& P, std::vector<Rational> s, Heuristic h,
                                 Options opt = {}) {
    if (is_projective(h)) throw DomainError("projective heuristics need construct_cell_pd");
    if (vars.size() != s.size()) throw DomainError("sample arity does not match the variable count");
    detail::Builder b(vars, P, std::move(s), h, opt);
    return b.run();
}

}  // namespace scell
