#pragma once

// Independent reference implementations used to cross-check the fast paths:
// Sylvester-matrix resultants and Sturm-sequence root counts.

#include "scell/poly/algorithms.hpp"
#include "scell/realroots.hpp"

namespace scell {

/// det of the Sylvester matrix of p, q in v, by fraction-free Bareiss elimination.
inline Polynomial oracle_resultant(const Polynomial& p, const Polynomial& q, Var v) {
    if (p.is_zero() || q.is_zero()) throw DomainError("resultant of the zero polynomial");
    auto a = coeffs(p, v), b = coeffs(q, v);
    int m = static_cast<int>(a.size()) - 1, n = static_cast<int>(b.size()) - 1;
    if (m < 1 || n < 1) throw DomainError("resultant needs positive degree in the variable");
    int N = m + n;
    std::vector<std::vector<Polynomial>> M(N, std::vector<Polynomial>(N));
    // Row i of the p block holds the coefficients of x^(n-1-i) * p, highest power first.
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) M[i][i + k] = a[m - k];
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k) M[n + i][i + k] = b[n - k];
    Polynomial prev(1);
    int sign = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (M[k][k].is_zero()) {
            int r = k + 1;
            while (r < N && M[r][k].is_zero()) ++r;
            if (r == N) return Polynomial();
            std::swap(M[k], M[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) M[i][j] = divide_exact(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev);
            M[i][k] = Polynomial();
        }
        prev = M[k][k];
    }
    return sign < 0 ? -M[N - 1][N - 1] : M[N - 1][N - 1];
}

namespace detail {

// Remainder of a by b over Q, scaled by a positive factor to a primitive integer vector.
inline UPoly sturm_remainder(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(a.begin(), a.end());
    int db = upoly::degree(b);
    for (int k = static_cast<int>(r.size()) - 1; k >= db; --k) {
        if (r[k] == 0) continue;
        Rational f = r[k] / Rational(b.back());
        for (int j = 0; j <= db; ++j) r[k - db + j] -= f * Rational(b[j]);
    }
    r.resize(static_cast<std::size_t>(std::max(db, 0)));
    Integer l = 1;
    for (const auto& c : r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    UPoly out;
    for (const auto& c : r) out.push_back(Integer(c * l));
    upoly::trim(out);
    if (out.empty()) return out;
    Integer g = upoly::content(out);
    for (auto& c : out) c /= g;
    return out;
}

}  // namespace detail

/// Sturm sequence p, p', -rem(p, p'), ... with positive rescaling of each term.
inline std::vector<UPoly> sturm_sequence(const UPoly& p) {
    std::vector<UPoly> seq{p, upoly::derivative(p)};
    while (!seq.back().empty() && upoly::degree(seq.back()) > 0) {
        UPoly r = detail::sturm_remainder(seq[seq.size() - 2], seq.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        seq.push_back(std::move(r));
    }
    return seq;
}

/// Number of distinct real roots of squarefree p in (lo, hi); endpoints must not be roots.
inline int oracle_root_count(const UPoly& p, const Rational& lo, const Rational& hi) {
    if (sign_at_rational(p, lo) == 0 || sign_at_rational(p, hi) == 0)
        throw DomainError("Sturm count endpoint is a root");
    auto seq = sturm_sequence(p);
    auto var = [&](const Rational& x) {
        int v = 0, last = 0;
        for (const auto& s : seq) {
            int sg = sign_at_rational(s, x);
            if (sg == 0) continue;
            if (last != 0 && sg != last) ++v;
            last = sg;
        }
        return v;
    };
    return var(lo) - var(hi);
}

}  // namespace scell
