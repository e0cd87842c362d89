#pragma once

// The real projective line R u {inf}: cyclic order and projective roots.

#include "scell/realroots.hpp"

#include <variant>

namespace scell {

class ProjPoint {
public:
    ProjPoint() : v_(Inf{}) {}
    ProjPoint(AlgebraicValue a) : v_(std::move(a)) {}  // NOLINT
    ProjPoint(const Rational& r) : v_(AlgebraicValue::rational(r)) {}  // NOLINT
    static ProjPoint infinity() { return ProjPoint(); }

    bool is_infinity() const { return std::holds_alternative<Inf>(v_); }
    const AlgebraicValue& value() const { return std::get<AlgebraicValue>(v_); }

private:
    struct Inf {};
    std::variant<Inf, AlgebraicValue> v_;
};

/// Extended total order with a < inf for every real a.
inline std::strong_ordering extended_compare(const ProjPoint& a, const ProjPoint& b) {
    if (a.is_infinity() && b.is_infinity()) return std::strong_ordering::equal;
    if (a.is_infinity()) return std::strong_ordering::greater;
    if (b.is_infinity()) return std::strong_ordering::less;
    return compare(a.value(), b.value());
}

/// [a,b,c]: a<b<c or b<c<a or c<a<b in the extended order.
inline bool cyclic3(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c) {
    auto ab = extended_compare(a, b), bc = extended_compare(b, c), ca = extended_compare(c, a);
    if (ab == 0 || bc == 0 || ca == 0) throw DomainError("cyclic order needs pairwise distinct points");
    return (ab < 0 && bc < 0) || (bc < 0 && ca < 0) || (ca < 0 && ab < 0);
}

/// cyclic3 on every index-increasing triple.
inline bool cyclic_chain(const std::vector<ProjPoint>& ts) {
    if (ts.size() < 3) throw DomainError("cyclic chain needs at least three points");
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = i + 1; j < ts.size(); ++j)
            if (extended_compare(ts[i], ts[j]) == 0) throw DomainError("cyclic chain needs pairwise distinct points");
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = i + 1; j < ts.size(); ++j)
            for (std::size_t k = j + 1; k < ts.size(); ++k)
                if (!cyclic3(ts[i], ts[j], ts[k])) return false;
    return true;
}

struct ProjRoot {
    ProjPoint point;
    unsigned multiplicity;
};

/// Real roots of p with multiplicities, plus inf with multiplicity d - deg p.
inline std::vector<ProjRoot> projective_roots(const UPoly& p_in, int d) {
    UPoly p = p_in;
    upoly::trim(p);
    if (p.empty()) throw DomainError("projective roots of the zero polynomial");
    if (d < upoly::degree(p)) throw DomainError("reference degree below polynomial degree");
    std::vector<std::pair<AlgebraicValue, unsigned>> finite;
    auto parts = upoly::squarefree_decomposition(p);
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (upoly::degree(parts[k]) < 1) continue;
        for (auto& r : isolate(parts[k])) finite.emplace_back(std::move(r), static_cast<unsigned>(k + 1));
    }
    std::sort(finite.begin(), finite.end(), [](const auto& x, const auto& y) { return compare(x.first, y.first) < 0; });
    std::vector<ProjRoot> out;
    for (auto& [v, m] : finite) out.push_back({ProjPoint(std::move(v)), m});
    if (d > upoly::degree(p)) out.push_back({ProjPoint::infinity(), static_cast<unsigned>(d - upoly::degree(p))});
    return out;
}

}  // namespace scell
