#pragma once

// Exact rational numbers and rational intervals.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace scell {

using Integer = mpz_class;
using Rational = mpq_class;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Canonical rational n/d. Throws DomainError when d == 0.
inline Rational rat_normalize(const Integer& n, const Integer& d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline Rational rat_normalize(long n, long d) { return rat_normalize(Integer(n), Integer(d)); }

inline int sign(const Rational& r) { return sgn(r); }
inline int sign(const Integer& z) { return sgn(z); }

/// "p/q" or "p"; denominators are always positive.
inline std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Accepts "p", "-p", "p/q". Decimal points are rejected.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
    };
    auto strip_plus = [](std::string t) {
        if (!t.empty() && t[0] == '+') t.erase(0, 1);
        return t;
    };
    if (slash == std::string::npos) {
        if (!valid_int(s)) throw DomainError("malformed rational '" + s + "'");
        return Rational(Integer(strip_plus(s), 10));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw DomainError("malformed rational '" + s + "'");
    return rat_normalize(Integer(strip_plus(num), 10), Integer(den, 10));
}

/// Either an open interval (lo, hi) with lo < hi or an exact point lo == hi.
class RatInterval {
public:
    enum class Kind { Open, Point };

    RatInterval() : lo_(0), hi_(0), kind_(Kind::Point) {}

    static RatInterval point(const Rational& v) { return RatInterval(v, v, Kind::Point); }

    static RatInterval open(const Rational& lo, const Rational& hi) {
        if (!(lo < hi)) throw DomainError("open interval needs lo < hi");
        return RatInterval(lo, hi, Kind::Open);
    }

    /// Closed hull used by interval arithmetic; degenerates to a point when lo == hi.
    static RatInterval hull(const Rational& lo, const Rational& hi) {
        if (hi < lo) throw DomainError("interval needs lo <= hi");
        return lo == hi ? point(lo) : RatInterval(lo, hi, Kind::Open);
    }

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Kind kind() const { return kind_; }
    bool is_point() const { return kind_ == Kind::Point; }
    Rational width() const { return hi_ - lo_; }

    /// Membership for the open interval, equality for a point.
    bool contains(const Rational& x) const {
        if (is_point()) return x == lo_;
        return lo_ < x && x < hi_;
    }

    bool operator==(const RatInterval&) const = default;

private:
    RatInterval(Rational lo, Rational hi, Kind k) : lo_(std::move(lo)), hi_(std::move(hi)), kind_(k) {}

    Rational lo_;
    Rational hi_;
    Kind kind_;
};

inline RatInterval interval_mul(const RatInterval& a, const RatInterval& b) {
    Rational p[4] = {a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()};
    auto [mn, mx] = std::minmax_element(std::begin(p), std::end(p));
    return RatInterval::hull(*mn, *mx);
}

inline RatInterval interval_add(const RatInterval& a, const RatInterval& b) {
    return RatInterval::hull(a.lo() + b.lo(), a.hi() + b.hi());
}

inline Rational interval_midpoint(const RatInterval& a) {
    if (a.is_point()) return a.lo();
    Rational m = (a.lo() + a.hi()) / 2;
    m.canonicalize();
    return m;
}

}  // namespace scell
