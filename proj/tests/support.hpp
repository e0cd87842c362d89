#pragma once

#include "scell/poly/parse.hpp"

#include <random>

namespace scell::testing {

inline Polynomial P(const std::string& s, std::size_t n = 3) { return parse_polynomial(s, VarOrder::standard(n)); }

inline Polynomial random_poly(std::mt19937_64& rng, std::size_t nvars, unsigned max_deg, long coeff, unsigned nterms) {
    std::uniform_int_distribution<long> c(-coeff, coeff);
    std::uniform_int_distribution<unsigned> e(0, max_deg);
    std::vector<Term> ts;
    for (unsigned i = 0; i < nterms; ++i) {
        std::vector<std::uint32_t> ex(nvars);
        unsigned budget = max_deg;
        for (auto& x : ex) {
            x = std::min(e(rng), budget);
            budget -= x;
        }
        ts.push_back({Monomial(ex), Rational(c(rng))});
    }
    return Polynomial::from_terms(std::move(ts));
}

}  // namespace scell::testing
