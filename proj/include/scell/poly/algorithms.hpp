#pragma once

// Projection ingredients: pseudo-remainders, resultants, discriminants, gcds
// and the coprime squarefree basis that stands in for irreducible factors.

#include "scell/poly/polynomial.hpp"

#include <set>

namespace scell {

namespace detail {

// Dense coefficient vector in one variable, trimmed so the back is nonzero.
using Dense = std::vector<Polynomial>;

inline void trim(Dense& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline int deg(const Dense& a) { return static_cast<int>(a.size()) - 1; }

inline Dense prem_dense(Dense a, const Dense& b) {
    int db = deg(b);
    if (db < 0) throw DomainError("pseudo-remainder by zero");
    int e = deg(a) - db + 1;
    if (e <= 0) return a;
    const Polynomial& lb = b.back();
    while (deg(a) >= db) {
        Polynomial la = a.back();
        int shift = deg(a) - db;
        for (auto& c : a) c = c * lb;
        for (int k = 0; k <= db; ++k) a[k + shift] -= la * b[k];
        trim(a);
        --e;
    }
    if (e > 0) {
        Polynomial f = lb.pow(static_cast<unsigned>(e));
        for (auto& c : a) c = c * f;
    }
    return a;
}

}  // namespace detail

/// lc(b)^(deg a - deg b + 1) * a  mod  b, all in variable v.
inline Polynomial prem(const Polynomial& a, const Polynomial& b, Var v) {
    auto r = detail::prem_dense(coeffs(a, v), coeffs(b, v));
    return from_coeffs(r, v);
}

/// Sylvester resultant in v via the subresultant PRS.
inline Polynomial resultant(const Polynomial& p, const Polynomial& q, Var v) {
    if (p.is_zero() || q.is_zero()) throw DomainError("resultant of the zero polynomial");
    auto A = coeffs(p, v), B = coeffs(q, v);
    if (detail::deg(A) < 1 || detail::deg(B) < 1) throw DomainError("resultant needs positive degree in the variable");
    Rational s = 1;
    if (detail::deg(A) < detail::deg(B)) {
        std::swap(A, B);
        if (detail::deg(A) % 2 == 1 && detail::deg(B) % 2 == 1) s = -1;
    }
    Polynomial g(1), h(1);
    for (;;) {
        int da = detail::deg(A), db = detail::deg(B);
        int delta = da - db;
        if (da % 2 == 1 && db % 2 == 1) s = -s;
        auto R = detail::prem_dense(A, B);
        if (R.empty()) return Polynomial();
        A = std::move(B);
        Polynomial div = g * h.pow(static_cast<unsigned>(delta));
        for (auto& c : R) c = divide_exact(c, div);
        B = std::move(R);
        g = A.back();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            h = divide_exact(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
        }
        if (detail::deg(B) <= 0) break;
    }
    int da = detail::deg(A);
    Polynomial lb = B.back();
    Polynomial res = da == 1 ? lb : divide_exact(lb.pow(static_cast<unsigned>(da)), h.pow(static_cast<unsigned>(da - 1)));
    return res.scaled(s);
}

/// (-1)^(d(d-1)/2) res(p, dp/dv) / ldcf(p); the constant 1 for linear p.
inline Polynomial discriminant(const Polynomial& p, Var v) {
    if (p.is_zero()) throw DomainError("discriminant of the zero polynomial");
    auto d = p.degree(v);
    if (d < 1) throw DomainError("discriminant needs positive degree in the variable");
    if (d == 1) return Polynomial(1);
    Polynomial r = divide_exact(resultant(p, derivative(p, v), v), ldcf(p, v));
    return (d * (d - 1) / 2) % 2 == 1 ? -r : r;
}

Polynomial gcd(const Polynomial& p, const Polynomial& q);

/// gcd of the coefficients of p in v, normalized; 1 for constants.
inline Polynomial content(const Polynomial& p, Var v) {
    if (p.is_zero()) return Polynomial();
    Polynomial c;
    for (const auto& k : coeffs(p, v)) {
        if (k.is_zero()) continue;
        c = c.is_zero() ? normalized(k) : gcd(c, k);
        if (c.is_constant()) return Polynomial(1);
    }
    return c;
}

inline Polynomial primitive_part(const Polynomial& p, Var v) {
    if (p.is_zero()) return p;
    return normalized(divide_exact(p, content(p, v)));
}

/// Normalized gcd (primitive, positive leading rational) via primitive PRS.
inline Polynomial gcd(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() && q.is_zero()) throw DomainError("gcd of two zero polynomials");
    if (p.is_zero()) return q.is_constant() ? Polynomial(1) : normalized(q);
    if (q.is_zero()) return p.is_constant() ? Polynomial(1) : normalized(p);
    if (p.is_constant() || q.is_constant()) return Polynomial(1);
    std::size_t lvl = std::max(p.level(), q.level());
    Var v = lvl - 1;
    bool hp = p.degree_or_zero(v) > 0, hq = q.degree_or_zero(v) > 0;
    if (!hp) return gcd(p, content(q, v));
    if (!hq) return gcd(q, content(p, v));
    Polynomial cp = content(p, v), cq = content(q, v);
    Polynomial c = gcd(cp, cq);
    auto A = coeffs(divide_exact(p, cp), v), B = coeffs(divide_exact(q, cq), v);
    if (detail::deg(A) < detail::deg(B)) std::swap(A, B);
    Polynomial g;
    for (;;) {
        auto R = detail::prem_dense(A, B);
        if (R.empty()) {
            g = from_coeffs(B, v);
            break;
        }
        if (detail::deg(R) == 0) {
            g = Polynomial(1);
            break;
        }
        A = std::move(B);
        B = coeffs(primitive_part(from_coeffs(R, v), v), v);
    }
    if (!g.is_constant()) g = primitive_part(g, v);
    return normalized(c * g);
}

/// Yun decomposition of p in v; p must be primitive in v with positive degree.
/// Entry k (0-based) is the product of the factors of multiplicity k+1.
inline std::vector<Polynomial> squarefree_decomposition(const Polynomial& p, Var v) {
    std::vector<Polynomial> out;
    Polynomial dp = derivative(p, v);
    Polynomial b = gcd(p, dp);
    Polynomial c = divide_exact(p, b);
    Polynomial d = divide_exact(dp, b) - derivative(c, v);
    while (c.degree_or_zero(v) > 0) {
        Polynomial a = gcd(c, d);
        out.push_back(a);
        c = divide_exact(c, a);
        d = divide_exact(d, a) - derivative(c, v);
    }
    return out;
}

/// Positive-degree squarefree part of p in its main variable.
inline Polynomial squarefree_part(const Polynomial& p, Var v) {
    Polynomial pp = divide_exact(p, content(p, v));
    return normalized(divide_exact(pp, gcd(pp, derivative(pp, v))));
}

/// Coprime squarefree basis: non-constant, primitive, squarefree in the main
/// variable, pairwise coprime; constants dropped, scalar duplicates merged.
/// Output is sorted by (level, polynomial order).
inline std::vector<Polynomial> normalize_basis(const std::vector<Polynomial>& P) {
    std::vector<Polynomial> work(P.begin(), P.end());
    std::set<Polynomial> pieces;
    while (!work.empty()) {
        Polynomial p = std::move(work.back());
        work.pop_back();
        if (p.is_constant()) continue;
        Var v = p.level() - 1;
        Polynomial c = content(p, v);
        if (!c.is_constant()) work.push_back(c);
        Polynomial pp = divide_exact(p, c);
        for (auto& f : squarefree_decomposition(pp, v))
            if (f.degree_or_zero(v) > 0) pieces.insert(normalized(f));
    }
    // Gcds across levels are constant for primitive pieces, so refine per level.
    std::map<std::size_t, std::vector<Polynomial>> by_level;
    for (const auto& p : pieces) by_level[p.level()].push_back(p);
    std::vector<Polynomial> out;
    for (auto& [lvl, group] : by_level) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < group.size() && !changed; ++i) {
                for (std::size_t j = i + 1; j < group.size() && !changed; ++j) {
                    Polynomial g = gcd(group[i], group[j]);
                    if (g.is_constant()) continue;
                    std::set<Polynomial> next;
                    for (std::size_t k = 0; k < group.size(); ++k)
                        if (k != i && k != j) next.insert(group[k]);
                    for (const auto& f : {divide_exact(group[i], g), divide_exact(group[j], g), g})
                        if (!f.is_constant()) next.insert(normalized(f));
                    group.assign(next.begin(), next.end());
                    changed = true;
                }
            }
        }
        out.insert(out.end(), group.begin(), group.end());
    }
    return out;
}

}  // namespace scell
