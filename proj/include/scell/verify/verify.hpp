#pragma once

// Randomized sign-invariance checks inside constructed cells and the
// projection-subset comparator.

#include "scell/scc_projective.hpp"
#include "scell/verify/oracles.hpp"

#include <random>

namespace scell {

struct Violation {
    enum class Kind { Sign, UndefinedBound, EmptyInterval };
    Kind kind = Kind::Sign;
    std::vector<Rational> point;  // for undefined bounds: the prefix reached
    Polynomial poly;
    int expected = 0;
    int observed = 0;
    std::size_t level = 0;
};

inline std::string to_string(Violation::Kind k) {
    switch (k) {
        case Violation::Kind::Sign: return "sign";
        case Violation::Kind::UndefinedBound: return "undefined-bound";
        case Violation::Kind::EmptyInterval: return "empty-interval";
    }
    return "?";
}

struct VerifyReport {
    std::size_t samples_tested = 0;
    std::vector<Violation> violations;
    /// Levels at which an irrational section value forced reuse of the sample prefix.
    std::vector<std::size_t> skipped_section_levels;

    bool passed() const { return violations.empty(); }
    std::size_t undefined_events() const {
        return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(), [](const Violation& v) {
            return v.kind != Violation::Kind::Sign;
        }));
    }
};

namespace detail {

inline int sign_of(const Polynomial& p, std::span<const Rational> point) { return sgn(evaluate(p, point)); }

// Uniform rational on a 1/64 grid strictly inside (lo, hi).
inline Rational grid_point(const Rational& lo, const Rational& hi, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> t(1, 63);
    Rational x = lo + (hi - lo) * Rational(t(rng), 64);
    x.canonicalize();
    return x;
}

inline Rational upper_below(const AlgebraicValue& a) { return a.is_rational() ? a.rational_value() : a.interval().lo(); }
inline Rational lower_above(const AlgebraicValue& a) { return a.is_rational() ? a.rational_value() : a.interval().hi(); }

}  // namespace detail

/// Draws `count` points level by level inside the cell and compares the signs
/// of every polynomial of P against its sign at the cell's sample.
inline VerifyReport verify_sign_invariance(const std::vector<Polynomial>& P, const Cell& c, std::size_t count, std::uint64_t seed) {
    VerifyReport rep;
    std::mt19937_64 rng(seed);
    std::span<const Rational> s(c.sample);
    std::vector<int> expected;
    for (const auto& p : P) expected.push_back(detail::sign_of(p, s));
    std::set<std::size_t> skipped;
    const Rational span(8);
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<Rational> pt;
        bool broken = false;
        for (std::size_t i = 0; i < c.dimension() && !broken; ++i) {
            const auto& I = c.intervals[i];
            auto e = evaluate_interval(I, pt);
            if (!e.defined) {
                Violation v;
                v.kind = Violation::Kind::UndefinedBound;
                v.point = pt;
                v.poly = I.is_section() ? I.bound().poly : (I.lower() && !e.lower ? I.lower()->poly : I.upper()->poly);
                v.level = i + 1;
                rep.violations.push_back(std::move(v));
                broken = true;
                break;
            }
            if (e.section) {
                if (e.lower->is_rational()) {
                    pt.push_back(e.lower->rational_value());
                } else {
                    skipped.insert(i + 1);
                    pt.assign(s.begin(), s.begin() + static_cast<long>(i) + 1);
                }
                continue;
            }
            AlgebraicValue lo, hi;
            if (e.lower && e.upper) {
                lo = *e.lower;
                hi = *e.upper;
                auto cmp = compare(lo, hi);
                if (cmp >= 0) {
                    Violation v;
                    v.kind = Violation::Kind::EmptyInterval;
                    v.point = pt;
                    v.poly = I.upper()->poly;
                    v.level = i + 1;
                    rep.violations.push_back(std::move(v));
                    broken = true;
                    break;
                }
                while (!(detail::lower_above(lo) < detail::upper_below(hi))) {
                    lo.bisect();
                    hi.bisect();
                }
                Rational a = detail::lower_above(lo), b = detail::upper_below(hi);
                pt.push_back(detail::grid_point(a, b, rng));
            } else if (e.lower) {
                Rational a = detail::lower_above(*e.lower);
                pt.push_back(detail::grid_point(a, a + span, rng));
            } else if (e.upper) {
                Rational b = detail::upper_below(*e.upper);
                pt.push_back(detail::grid_point(b - span, b, rng));
            } else {
                pt.push_back(detail::grid_point(s[i] - span, s[i] + span, rng));
            }
        }
        if (broken) continue;
        ++rep.samples_tested;
        for (std::size_t j = 0; j < P.size(); ++j) {
            int obs = detail::sign_of(P[j], pt);
            if (obs != expected[j]) rep.violations.push_back({Violation::Kind::Sign, pt, P[j], expected[j], obs, 0});
        }
    }
    rep.skipped_section_levels.assign(skipped.begin(), skipped.end());
    return rep;
}

struct TraceComparison {
    bool subset = true;
    std::vector<Polynomial> witness;
};

/// Whether every trace polynomial of `pd` is accounted for by the classical
/// trace and inputs, at the granularity of common factors.
inline TraceComparison compare_traces(const Cell& classical, const Cell& pd) {
    std::set<Polynomial> known(classical.inputs.begin(), classical.inputs.end());
    for (const auto& t : classical.trace) known.insert(t.poly);
    TraceComparison out;
    for (const auto& t : pd.trace) {
        if (known.count(t.poly)) continue;
        Polynomial rest = t.poly;
        for (const auto& k : known) {
            if (rest.is_constant()) break;
            for (Polynomial g = gcd(rest, k); !g.is_constant(); g = gcd(rest, k)) rest = divide_exact(rest, g);
        }
        if (!rest.is_constant()) {
            out.subset = false;
            out.witness.push_back(t.poly);
        }
    }
    return out;
}

}  // namespace scell
