#pragma once

// Real root isolation over Q (Descartes bisection) and exact comparison of
// real algebraic numbers given by (squarefree polynomial, isolating interval).

#include "scell/poly/polynomial.hpp"

#include <compare>
#include <numeric>
#include <utility>
#include <vector>

namespace scell {

/// Dense univariate integer polynomial, ascending coefficients, no trailing zeros.
using UPoly = std::vector<Integer>;

namespace upoly {

inline void trim(UPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

inline Integer content(const UPoly& p) {
    Integer g = 0;
    for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

/// Divides out the content and makes the leading coefficient positive.
inline UPoly primitive(UPoly p) {
    trim(p);
    if (p.empty()) return p;
    Integer g = content(p);
    if (p.back() < 0) g = -g;
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return p;
}

inline UPoly derivative(const UPoly& p) {
    UPoly d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<unsigned long>(k));
    trim(d);
    return d;
}

inline UPoly mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline UPoly prem(UPoly a, const UPoly& b) {
    int db = degree(b);
    if (db < 0) throw DomainError("pseudo-remainder by zero");
    while (degree(a) >= db) {
        Integer la = a.back();
        int shift = degree(a) - db;
        for (auto& c : a) c *= b.back();
        for (int k = 0; k <= db; ++k) a[k + shift] -= la * b[k];
        trim(a);
    }
    return a;
}

/// Exact quotient a / b over Z; throws if not exact.
inline UPoly div_exact(UPoly a, const UPoly& b) {
    int db = degree(b);
    if (db < 0) throw DomainError("division by zero polynomial");
    if (degree(a) < db) {
        if (a.empty()) return {};
        throw DomainError("inexact univariate division");
    }
    UPoly q(a.size() - b.size() + 1, 0);
    for (int k = degree(a); k >= db; --k) {
        if (a[k] == 0) continue;
        if (!mpz_divisible_p(a[k].get_mpz_t(), b.back().get_mpz_t())) throw DomainError("inexact univariate division");
        Integer c = a[k] / b.back();
        q[k - db] = c;
        for (int j = 0; j <= db; ++j) a[k - db + j] -= c * b[j];
    }
    trim(a);
    if (!a.empty()) throw DomainError("inexact univariate division");
    trim(q);
    return q;
}

/// Primitive gcd with positive leading coefficient.
inline UPoly gcd(UPoly a, UPoly b) {
    a = primitive(std::move(a));
    b = primitive(std::move(b));
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (degree(a) < degree(b)) std::swap(a, b);
    while (!b.empty()) {
        UPoly r = primitive(prem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline UPoly squarefree_part(const UPoly& p) {
    UPoly pp = primitive(p);
    if (degree(pp) < 1) return pp;
    return primitive(div_exact(pp, gcd(pp, derivative(pp))));
}

/// Yun: entry k holds the product of factors of multiplicity k+1.
inline std::vector<UPoly> squarefree_decomposition(const UPoly& p) {
    std::vector<UPoly> out;
    UPoly pp = primitive(p);
    if (degree(pp) < 1) return out;
    UPoly dp = derivative(pp);
    UPoly b = gcd(pp, dp);
    UPoly c = div_exact(pp, b);
    UPoly d = div_exact(dp, b);
    auto sub = [](UPoly x, const UPoly& y) {
        if (x.size() < y.size()) x.resize(y.size(), 0);
        for (std::size_t i = 0; i < y.size(); ++i) x[i] -= y[i];
        trim(x);
        return x;
    };
    d = sub(d, derivative(c));
    while (degree(c) > 0) {
        UPoly a = gcd(c, d);
        out.push_back(a);
        c = div_exact(c, a);
        d = sub(div_exact(d, a), derivative(c));
    }
    return out;
}

/// p(x) -> p(x + s), integer shift.
inline UPoly taylor_shift(UPoly p, const Integer& s) {
    if (s == 0) return p;
    int n = degree(p);
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) p[j] += s * p[j + 1];
    return p;
}

inline int sign_variations(const UPoly& p) {
    int v = 0, last = 0;
    for (const auto& c : p) {
        int s = sgn(c);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

/// Univariate polynomial of the single variable v appearing in p, scaled to integers.
inline UPoly from_polynomial(const Polynomial& p, Var v) {
    for (const auto& t : p.terms())
        for (std::size_t i = 0; i < t.mono.size(); ++i)
            if (i != v && t.mono[i] != 0) throw DomainError("polynomial is not univariate in the requested variable");
    if (p.is_zero()) return {};
    Polynomial n = normalized(p);
    UPoly out(n.degree(v) + 1, 0);
    for (const auto& t : n.terms()) out[t.mono[v]] = t.coef.get_num();
    return out;
}

inline Polynomial to_polynomial(const UPoly& p, Var v) {
    std::vector<Term> ts;
    for (std::size_t k = 0; k < p.size(); ++k)
        if (p[k] != 0) ts.push_back({Monomial::var(v, static_cast<std::uint32_t>(k)), Rational(p[k])});
    return Polynomial::from_terms(std::move(ts));
}

}  // namespace upoly

/// Exact sign of p(r).
inline int sign_at_rational(const UPoly& p, const Rational& r) {
    if (p.empty()) return 0;
    // Homogeneous Horner: sum a_k n^k d^(deg-k), same sign as p(n/d) for d > 0.
    const Integer& n = r.get_num();
    const Integer& d = r.get_den();
    Integer acc = p.back();
    Integer dpow = 1;
    for (int k = upoly::degree(p) - 1; k >= 0; --k) {
        dpow *= d;
        acc = acc * n + p[k] * dpow;
    }
    return sgn(acc);
}

inline Rational eval_rational(const UPoly& p, const Rational& r) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * r + Rational(*it);
    return acc;
}

/// A real algebraic number: the unique root of a squarefree primitive
/// polynomial inside an open isolating interval, or an exact rational point.
class AlgebraicValue {
public:
    AlgebraicValue() = default;

    static AlgebraicValue rational(const Rational& r) {
        AlgebraicValue a;
        a.poly_ = {-r.get_num(), r.get_den()};
        a.iv_ = RatInterval::point(r);
        a.index_ = 1;
        return a;
    }

    AlgebraicValue(UPoly poly, RatInterval iv, unsigned index)
        : poly_(std::move(poly)), iv_(std::move(iv)), index_(index) {}

    const UPoly& defining() const { return poly_; }
    const RatInterval& interval() const { return iv_; }
    unsigned index() const { return index_; }
    bool is_rational() const { return iv_.is_point(); }
    const Rational& rational_value() const {
        if (!is_rational()) throw DomainError("algebraic value is not rational");
        return iv_.lo();
    }

    /// Same root, interval width at most `width`.
    AlgebraicValue refined(const Rational& width) const {
        if (width <= 0) throw DomainError("refinement width must be positive");
        AlgebraicValue a = *this;
        while (!a.iv_.is_point() && a.iv_.width() > width) a.bisect();
        return a;
    }

    /// One bisection step; may collapse onto an exact rational root.
    void bisect() {
        if (iv_.is_point()) return;
        Rational m = interval_midpoint(iv_);
        int sm = sign_at_rational(poly_, m);
        if (sm == 0) {
            iv_ = RatInterval::point(m);
            return;
        }
        int slo = sign_at_rational(poly_, iv_.lo());
        iv_ = (sm == slo) ? RatInterval::open(m, iv_.hi()) : RatInterval::open(iv_.lo(), m);
    }

    /// Rational strictly inside the interval (or the point itself).
    Rational approximation() const { return interval_midpoint(iv_); }

private:
    UPoly poly_;
    RatInterval iv_;
    unsigned index_ = 0;
};

namespace detail {

// Descartes bound on the roots of q in the open interval (a, b).
inline int descartes_in(const UPoly& q, const Rational& a, const Rational& b) {
    int d = upoly::degree(q);
    Integer gam;
    mpz_lcm(gam.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
    Integer alpha = a.get_num() * (gam / a.get_den());
    Integer beta = b.get_num() * (gam / b.get_den()) - alpha;
    // r(u) = gam^d q(u / gam)
    UPoly r(q.size());
    Integer gp = 1;
    for (int k = d; k >= 0; --k) {
        r[k] = q[k] * gp;
        gp *= gam;
    }
    r = upoly::taylor_shift(std::move(r), alpha);
    Integer bp = 1;
    for (auto& c : r) {
        c *= bp;
        bp *= beta;
    }
    // roots in (0,1) -> reverse -> (1,inf) -> shift by 1 -> (0,inf)
    std::reverse(r.begin(), r.end());
    upoly::trim(r);
    r = upoly::taylor_shift(std::move(r), Integer(1));
    return upoly::sign_variations(r);
}

inline std::vector<Integer> divisors(Integer n, std::size_t cap) {
    std::vector<Integer> out;
    if (n < 0) n = -n;
    if (n == 0) return out;
    for (Integer i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            out.push_back(i);
            if (i * i != n) out.push_back(n / i);
            if (out.size() > cap) return {};
        }
        if (i > 100000) return {};
    }
    return out;
}

}  // namespace detail

/// Distinct real roots of p, sorted increasing; rational roots found by the
/// candidate test or by bisection hitting them are exact points.
inline std::vector<AlgebraicValue> isolate(const UPoly& p_in) {
    UPoly p = p_in;
    upoly::trim(p);
    if (p.empty()) throw DomainError("isolating roots of the zero polynomial");
    UPoly q = upoly::squarefree_part(p);
    std::vector<Rational> exact;
    if (upoly::degree(q) < 1) return {};
    if (q[0] == 0) {
        exact.push_back(Rational(0));
        q = upoly::div_exact(q, UPoly{0, 1});
    }
    // Rational candidates a/b with a | q0 and b | qn, only for small coefficients.
    if (upoly::degree(q) >= 1) {
        auto as = detail::divisors(q.front(), 64);
        auto bs = detail::divisors(q.back(), 64);
        if (!as.empty() && !bs.empty() && as.size() * bs.size() <= 1024) {
            for (const auto& a : as) {
                for (const auto& b : bs) {
                    Integer g;
                    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
                    if (g != 1) continue;
                    for (int s : {1, -1}) {
                        if (upoly::degree(q) < 1) break;
                        Rational r(a * s, b);
                        r.canonicalize();
                        if (sign_at_rational(q, r) == 0) {
                            exact.push_back(r);
                            q = upoly::div_exact(q, UPoly{-r.get_num(), r.get_den()});
                        }
                    }
                }
            }
        }
    }
    std::vector<RatInterval> open;
    if (upoly::degree(q) >= 1) {
        // Cauchy bound, rounded up to a power of two.
        Integer mx = 0;
        for (int k = 0; k < upoly::degree(q); ++k) mx = std::max<Integer>(mx, abs(q[k]));
        Rational cb = 1 + Rational(mx, abs(q.back()));
        cb.canonicalize();
        Integer B = 1;
        while (Rational(B) <= cb) B *= 2;
        std::vector<std::pair<Rational, Rational>> stack{{Rational(-B), Rational(B)}};
        while (!stack.empty()) {
            auto [a, b] = stack.back();
            stack.pop_back();
            if (upoly::degree(q) < 1) break;
            int v = detail::descartes_in(q, a, b);
            if (v == 0) continue;
            if (v == 1) {
                open.push_back(RatInterval::open(a, b));
                continue;
            }
            Rational m = (a + b) / 2;
            m.canonicalize();
            if (sign_at_rational(q, m) == 0) {
                exact.push_back(m);
                q = upoly::div_exact(q, UPoly{-m.get_num(), m.get_den()});
            }
            stack.push_back({m, b});
            stack.push_back({a, m});
        }
    }
    std::sort(open.begin(), open.end(), [](const RatInterval& x, const RatInterval& y) { return x.lo() < y.lo(); });
    // Bisection may have isolated against a multiple of the final q; re-check.
    std::vector<RatInterval> kept;
    for (const auto& iv : open)
        if (upoly::degree(q) >= 1 && sign_at_rational(q, iv.lo()) * sign_at_rational(q, iv.hi()) < 0) kept.push_back(iv);
    std::vector<AlgebraicValue> out;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        AlgebraicValue a(q, kept[i], static_cast<unsigned>(i + 1));
        // Shrink until no exact root lies in the closed interval, so the
        // endpoints are not roots of the input either.
        auto inside = [&] {
            for (const auto& r : exact)
                if (a.interval().lo() <= r && r <= a.interval().hi()) return true;
            return false;
        };
        while (inside()) a.bisect();
        out.push_back(std::move(a));
    }
    for (const auto& r : exact) out.push_back(AlgebraicValue::rational(r));
    auto key = [](const AlgebraicValue& a) { return a.interval().lo(); };
    std::sort(out.begin(), out.end(), [&](const AlgebraicValue& x, const AlgebraicValue& y) {
        // A point equal to an interval's lo endpoint lies below that interval.
        if (key(x) != key(y)) return key(x) < key(y);
        return x.is_rational() && !y.is_rational();
    });
    return out;
}

/// Exact three-way comparison of real algebraic numbers.
inline std::strong_ordering compare(AlgebraicValue a, AlgebraicValue b) {
    using so = std::strong_ordering;
    auto rel = [](const Rational& x, const Rational& y) { return x < y ? so::less : (x == y ? so::equal : so::greater); };
    if (a.is_rational() && b.is_rational()) return rel(a.rational_value(), b.rational_value());
    if (a.is_rational() || b.is_rational()) {
        bool flip = a.is_rational();
        const Rational r = flip ? a.rational_value() : b.rational_value();
        AlgebraicValue x = flip ? b : a;
        // compare x against r
        so res = so::equal;
        if (r <= x.interval().lo()) res = so::greater;
        else if (r >= x.interval().hi()) res = so::less;
        else {
            int sr = sign_at_rational(x.defining(), r);
            if (sr == 0) res = so::equal;
            else res = (sr == sign_at_rational(x.defining(), x.interval().lo())) ? so::greater : so::less;
        }
        if (flip) res = 0 <=> res;
        return res;
    }
    auto disjoint = [&]() -> std::optional<so> {
        if (a.is_rational() || b.is_rational()) return compare(a, b);
        if (a.interval().hi() <= b.interval().lo()) return so::less;
        if (b.interval().hi() <= a.interval().lo()) return so::greater;
        return std::nullopt;
    };
    if (auto r = disjoint()) return *r;
    UPoly g = upoly::gcd(a.defining(), b.defining());
    if (upoly::degree(g) >= 1) {
        auto root_of_g = [&](const RatInterval& iv) {
            return sign_at_rational(g, iv.lo()) * sign_at_rational(g, iv.hi()) < 0;
        };
        if (root_of_g(a.interval()) && root_of_g(b.interval())) {
            Rational lo = std::max(a.interval().lo(), b.interval().lo());
            Rational hi = std::min(a.interval().hi(), b.interval().hi());
            if (sign_at_rational(g, lo) * sign_at_rational(g, hi) < 0) return so::equal;
        }
    }
    for (;;) {
        a.bisect();
        b.bisect();
        if (auto r = disjoint()) return *r;
    }
}

inline bool operator==(const AlgebraicValue& a, const AlgebraicValue& b) { return compare(a, b) == 0; }

/// Decimal-free rational approximation within `width`, for display.
inline Rational approximate(const AlgebraicValue& a, const Rational& width) {
    return a.refined(width).approximation();
}

}  // namespace scell
