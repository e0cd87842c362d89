#pragma once

// Sparse multivariate polynomials over the rationals.
//
// Variables are addressed by a 0-based index: Var v stands for x_{v+1}, and a
// polynomial whose largest variable is x_j has level j. Terms are kept sorted
// descending in graded reverse-lexicographic order with x_n > ... > x_1.

#include "scell/exact_arith.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace scell {

using Var = std::size_t;

class Monomial {
public:
    Monomial() = default;

    explicit Monomial(std::vector<std::uint32_t> exps) : e_(std::move(exps)) { trim(); }

    static Monomial var(Var v, std::uint32_t k = 1) {
        std::vector<std::uint32_t> e(v + 1, 0);
        e[v] = k;
        return Monomial(std::move(e));
    }

    std::uint32_t operator[](Var v) const { return v < e_.size() ? e_[v] : 0; }

    /// Number of leading variables that may be present, i.e. the level.
    std::size_t size() const { return e_.size(); }
    bool is_one() const { return e_.empty(); }

    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (auto x : e_) d += x;
        return d;
    }

    const std::vector<std::uint32_t>& exponents() const { return e_; }

    Monomial operator*(const Monomial& o) const {
        std::vector<std::uint32_t> r(std::max(e_.size(), o.e_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] + o[i];
        return Monomial(std::move(r));
    }

    bool divides(const Monomial& o) const {
        if (e_.size() > o.e_.size()) return false;
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    /// o / this; requires divides(o).
    Monomial quotient_of(const Monomial& o) const {
        std::vector<std::uint32_t> r(o.e_);
        for (std::size_t i = 0; i < e_.size(); ++i) r[i] -= e_[i];
        return Monomial(std::move(r));
    }

    Monomial with(Var v, std::uint32_t k) const {
        std::vector<std::uint32_t> r(e_);
        if (r.size() <= v) r.resize(v + 1, 0);
        r[v] = k;
        return Monomial(std::move(r));
    }

    bool operator==(const Monomial&) const = default;

private:
    void trim() {
        while (!e_.empty() && e_.back() == 0) e_.pop_back();
    }

    std::vector<std::uint32_t> e_;
};

/// Graded reverse lex, x_n > ... > x_1. Negative when a < b.
inline int grevlex_cmp(const Monomial& a, const Monomial& b) {
    auto da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
}

struct MonomialGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_cmp(a, b) > 0; }
};

struct Term {
    Monomial mono;
    Rational coef;
};

class Polynomial {
public:
    Polynomial() = default;

    Polynomial(const Rational& c) {  // NOLINT: implicit constant embedding
        if (c != 0) terms_.push_back({Monomial(), c});
    }
    Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT

    static Polynomial variable(Var v) {
        Polynomial p;
        p.terms_.push_back({Monomial::var(v), Rational(1)});
        return p;
    }

    static Polynomial monomial(Monomial m, Rational c) {
        Polynomial p;
        if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
        return p;
    }

    /// Sorts, merges equal monomials and drops zeros.
    static Polynomial from_terms(std::vector<Term> terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return grevlex_cmp(a.mono, b.mono) > 0; });
        Polynomial p;
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
                p.terms_.back().coef += t.coef;
            } else {
                if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
                p.terms_.push_back(std::move(t));
            }
        }
        if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
        return p;
    }

    /// Terms already strictly descending with nonzero coefficients.
    static Polynomial from_sorted_terms(std::vector<Term> terms) {
        Polynomial p;
        p.terms_ = std::move(terms);
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!terms_.back().mono.is_one()) return Rational(0);
        return terms_.back().coef;
    }

    std::size_t level() const {
        std::size_t l = 0;
        for (const auto& t : terms_) l = std::max(l, t.mono.size());
        return l;
    }

    /// Highest exponent of v; throws on the zero polynomial.
    std::uint32_t degree(Var v) const {
        if (is_zero()) throw DomainError("degree of the zero polynomial");
        return degree_or_zero(v);
    }

    std::uint32_t degree_or_zero(Var v) const {
        std::uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono[v]);
        return d;
    }

    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
        return d;
    }

    /// Coefficient of the largest monomial in the term order.
    const Rational& leading_rational() const {
        if (is_zero()) throw DomainError("leading coefficient of zero");
        return terms_.front().coef;
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coef = -t.coef;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_constant()) return b.scaled(a.terms_[0].coef);
        if (b.is_constant()) return a.scaled(b.terms_[0].coef);
        std::vector<Term> out;
        out.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_) out.push_back({x.mono * y.mono, x.coef * y.coef});
        return from_terms(std::move(out));
    }

    Polynomial scaled(const Rational& c) const {
        if (c == 0) return {};
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coef *= c;
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial pow(unsigned k) const {
        Polynomial r(1), base = *this;
        while (k) {
            if (k & 1u) r *= base;
            k >>= 1u;
            if (k) base *= base;
        }
        return r;
    }

    bool operator==(const Polynomial& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coef != o.terms_[i].coef) return false;
        return true;
    }

    /// Deterministic total order: term by term, larger monomials first.
    friend std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b) {
        std::size_t n = std::min(a.terms_.size(), b.terms_.size());
        for (std::size_t i = 0; i < n; ++i) {
            int c = grevlex_cmp(a.terms_[i].mono, b.terms_[i].mono);
            if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
            int cc = cmp(a.terms_[i].coef, b.terms_[i].coef);
            if (cc != 0) return cc < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return a.terms_.size() <=> b.terms_.size();
    }

    std::size_t hash() const {
        std::size_t h = terms_.size();
        for (const auto& t : terms_) {
            for (auto e : t.mono.exponents()) h = h * 1000003u ^ e;
            h = h * 31u ^ std::hash<std::string>{}(t.coef.get_str());
        }
        return h;
    }

private:
    static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
        Polynomial r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            int c;
            if (i == a.terms_.size()) c = -1;
            else if (j == b.terms_.size()) c = 1;
            else c = grevlex_cmp(a.terms_[i].mono, b.terms_[j].mono);
            if (c > 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (c < 0) {
                Term t = b.terms_[j++];
                if (subtract) t.coef = -t.coef;
                r.terms_.push_back(std::move(t));
            } else {
                Rational s = subtract ? Rational(a.terms_[i].coef - b.terms_[j].coef) : Rational(a.terms_[i].coef + b.terms_[j].coef);
                if (s != 0) r.terms_.push_back({a.terms_[i].mono, std::move(s)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::vector<Term> terms_;
};

struct PolynomialHash {
    std::size_t operator()(const Polynomial& p) const { return p.hash(); }
};

/// Coefficients of p as a polynomial in v; entry k multiplies v^k.
inline std::vector<Polynomial> coeffs(const Polynomial& p, Var v) {
    if (p.is_zero()) return {};
    std::vector<std::vector<Term>> buckets(p.degree_or_zero(v) + 1);
    for (const auto& t : p.terms()) buckets[t.mono[v]].push_back({t.mono.with(v, 0), t.coef});
    std::vector<Polynomial> out;
    out.reserve(buckets.size());
    // Dropping a shared exponent preserves the relative grevlex order.
    for (auto& b : buckets) out.push_back(Polynomial::from_sorted_terms(std::move(b)));
    return out;
}

inline Polynomial from_coeffs(std::span<const Polynomial> cs, Var v) {
    std::vector<Term> out;
    for (std::size_t k = 0; k < cs.size(); ++k)
        for (const auto& t : cs[k].terms()) out.push_back({t.mono.with(v, static_cast<std::uint32_t>(k)), t.coef});
    return Polynomial::from_terms(std::move(out));
}

inline Polynomial ldcf(const Polynomial& p, Var v) {
    if (p.is_zero()) throw DomainError("leading coefficient of the zero polynomial");
    return coeffs(p, v).back();
}

inline Polynomial derivative(const Polynomial& p, Var v) {
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        auto k = t.mono[v];
        if (k == 0) continue;
        out.push_back({t.mono.with(v, k - 1), t.coef * k});
    }
    return Polynomial::from_terms(std::move(out));
}

/// Substitutes r[0..j) for x_1..x_j.
inline Polynomial eval_prefix(const Polynomial& p, std::span<const Rational> r) {
    if (r.empty()) return p;
    std::vector<std::vector<Rational>> powers(r.size());
    std::vector<Term> out;
    out.reserve(p.terms().size());
    for (const auto& t : p.terms()) {
        Rational c = t.coef;
        std::vector<std::uint32_t> e = t.mono.exponents();
        for (std::size_t i = 0; i < r.size() && i < e.size(); ++i) {
            auto k = e[i];
            if (k == 0) continue;
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(Rational(1));
            while (pw.size() <= k) pw.push_back(pw.back() * r[i]);
            c *= pw[k];
            e[i] = 0;
            if (c == 0) break;
        }
        if (c != 0) out.push_back({Monomial(std::move(e)), std::move(c)});
    }
    return Polynomial::from_terms(std::move(out));
}

/// Full evaluation; the point must cover the polynomial's level.
inline Rational evaluate(const Polynomial& p, std::span<const Rational> point) {
    if (point.size() < p.level()) throw DomainError("evaluation point shorter than polynomial level");
    return eval_prefix(p, point.first(std::min(point.size(), p.level()))).constant_value();
}

/// Exact quotient a / b; throws DomainError when b does not divide a.
inline Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw DomainError("division by the zero polynomial");
    if (a.is_zero()) return {};
    if (b.is_constant()) return a.scaled(1 / b.terms()[0].coef);
    std::map<Monomial, Rational, MonomialGreater> rem;
    for (const auto& t : a.terms()) rem.emplace(t.mono, t.coef);
    const auto& lt = b.terms().front();
    std::vector<Term> quot;
    while (!rem.empty()) {
        auto it = rem.begin();
        if (!lt.mono.divides(it->first)) throw DomainError("inexact polynomial division");
        Term q{lt.mono.quotient_of(it->first), it->second / lt.coef};
        for (const auto& t : b.terms()) {
            Monomial m = t.mono * q.mono;
            auto [pos, inserted] = rem.try_emplace(std::move(m), 0);
            pos->second -= t.coef * q.coef;
            if (pos->second == 0) rem.erase(pos);
        }
        quot.push_back(std::move(q));
    }
    return Polynomial::from_sorted_terms(std::move(quot));
}

/// Remainder-free divisibility test.
inline bool divides(const Polynomial& b, const Polynomial& a) {
    try {
        (void)divide_exact(a, b);
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

/// Integer-coefficient primitive multiple with positive leading rational; zero stays zero.
inline Polynomial normalized(const Polynomial& p) {
    if (p.is_zero()) return p;
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& t : p.terms()) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.get_den_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coef.get_num_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (p.leading_rational() < 0) scale = -scale;
    return p.scaled(scale);
}

inline Polynomial pow_var(Var v, std::uint32_t k) { return Polynomial::monomial(Monomial::var(v, k), Rational(1)); }

/// Ordered, distinct variable names; index i names the variable of level i+1.
class VarOrder {
public:
    VarOrder() = default;
    explicit VarOrder(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i].empty()) throw DomainError("empty variable name");
            if (!index_.emplace(names_[i], i).second) throw DomainError("duplicate variable '" + names_[i] + "'");
        }
    }

    /// x1..xn.
    static VarOrder standard(std::size_t n) {
        std::vector<std::string> names;
        for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
        return VarOrder(std::move(names));
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(Var v) const { return names_.at(v); }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<Var> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool operator==(const VarOrder& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, Var> index_;
};

}  // namespace scell
