#pragma once

// Symbolic cells: indexed roots, per-level intervals, the projection trace and
// counters, plus evaluation and membership at rational points.

#include "scell/poly/algorithms.hpp"
#include "scell/projline.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace scell {

/// root(x_level, poly, index): the index-th real root in the main variable.
struct IndexedRoot {
    Polynomial poly;
    unsigned index = 1;

    std::size_t level() const { return poly.level(); }
    bool operator==(const IndexedRoot&) const = default;
};

/// The j-th real root of poly(prefix, x_level); nullopt when fewer roots exist
/// or the substituted polynomial vanishes identically.
inline std::optional<AlgebraicValue> eval_indexed_root(const IndexedRoot& ir, std::span<const Rational> prefix) {
    std::size_t lvl = ir.poly.level();
    if (lvl == 0) throw DomainError("indexed root of a constant");
    if (prefix.size() < lvl - 1) throw DomainError("prefix shorter than level - 1");
    Polynomial q = eval_prefix(ir.poly, prefix.first(lvl - 1));
    if (q.is_zero()) return std::nullopt;
    if (q.is_constant()) return std::nullopt;
    auto roots = isolate(upoly::from_polynomial(q, lvl - 1));
    if (ir.index == 0 || ir.index > roots.size()) return std::nullopt;
    return roots[ir.index - 1];
}

class SymbolicInterval {
public:
    enum class Kind { Section, Sector };

    static SymbolicInterval section(IndexedRoot bound) {
        SymbolicInterval s;
        s.kind_ = Kind::Section;
        s.lower_ = std::move(bound);
        return s;
    }

    /// nullopt bounds are -inf / +inf.
    static SymbolicInterval sector(std::optional<IndexedRoot> lower, std::optional<IndexedRoot> upper) {
        SymbolicInterval s;
        s.kind_ = Kind::Sector;
        s.lower_ = std::move(lower);
        s.upper_ = std::move(upper);
        return s;
    }

    Kind kind() const { return kind_; }
    bool is_section() const { return kind_ == Kind::Section; }
    const IndexedRoot& bound() const { return *lower_; }
    const std::optional<IndexedRoot>& lower() const { return lower_; }
    const std::optional<IndexedRoot>& upper() const { return upper_; }

    bool operator==(const SymbolicInterval&) const = default;

private:
    Kind kind_ = Kind::Sector;
    std::optional<IndexedRoot> lower_;
    std::optional<IndexedRoot> upper_;
};

enum class TagKind { Disc, Ldcf, CoeffNonnull, Res, DerivativeFallback };

inline std::string to_string(TagKind k) {
    switch (k) {
        case TagKind::Disc: return "disc";
        case TagKind::Ldcf: return "ldcf";
        case TagKind::CoeffNonnull: return "coeff-nonnull";
        case TagKind::Res: return "res";
        case TagKind::DerivativeFallback: return "derivative-fallback";
    }
    return "?";
}

inline TagKind tag_from_string(const std::string& s) {
    for (auto k : {TagKind::Disc, TagKind::Ldcf, TagKind::CoeffNonnull, TagKind::Res, TagKind::DerivativeFallback})
        if (to_string(k) == s) return k;
    throw DomainError("unknown trace tag '" + s + "'");
}

/// One polynomial added during construction. `variable` is the 1-based
/// level of the eliminated variable.
struct TraceEntry {
    Polynomial poly;
    TagKind tag = TagKind::Disc;
    std::vector<Polynomial> parents;
    std::size_t variable = 0;

    bool operator==(const TraceEntry&) const = default;
};

struct CounterSet {
    unsigned long resultants_added = 0;
    unsigned long discriminants_added = 0;
    unsigned long ldcfs_added = 0;
    unsigned long coeffs_added = 0;
    unsigned long ldcfs_omitted = 0;
    unsigned long pd_blocked_unbounded = 0;
    unsigned long pd_blocked_no_pairing = 0;
    unsigned long roots_computed = 0;
    unsigned long max_total_degree = 0;

    bool operator==(const CounterSet&) const = default;
};

enum class Heuristic { BC, LDB, BC_PD, LDB_PD };

inline std::string to_string(Heuristic h) {
    switch (h) {
        case Heuristic::BC: return "bc";
        case Heuristic::LDB: return "ldb";
        case Heuristic::BC_PD: return "bc-pd";
        case Heuristic::LDB_PD: return "ldb-pd";
    }
    return "?";
}

inline Heuristic heuristic_from_string(const std::string& s) {
    for (auto h : {Heuristic::BC, Heuristic::LDB, Heuristic::BC_PD, Heuristic::LDB_PD})
        if (to_string(h) == s) return h;
    throw DomainError("unknown heuristic '" + s + "'");
}

inline bool is_projective(Heuristic h) { return h == Heuristic::BC_PD || h == Heuristic::LDB_PD; }

enum class PdStatus { Omitted, BlockedUnbounded, BlockedNoPairing, LdcfNeededBound, LdcfNeededNoRoots, Trivial };

inline std::string to_string(PdStatus s) {
    switch (s) {
        case PdStatus::Omitted: return "omitted";
        case PdStatus::BlockedUnbounded: return "blocked-unbounded";
        case PdStatus::BlockedNoPairing: return "blocked-no-pairing";
        case PdStatus::LdcfNeededBound: return "ldcf-needed-bound";
        case PdStatus::LdcfNeededNoRoots: return "ldcf-needed-no-roots";
        case PdStatus::Trivial: return "trivial";
    }
    return "?";
}

inline PdStatus pd_status_from_string(const std::string& s) {
    for (auto k : {PdStatus::Omitted, PdStatus::BlockedUnbounded, PdStatus::BlockedNoPairing, PdStatus::LdcfNeededBound,
                   PdStatus::LdcfNeededNoRoots, PdStatus::Trivial})
        if (to_string(k) == s) return k;
    throw DomainError("unknown status '" + s + "'");
}

/// A chain element: an indexed root (at the cell's sample) or infinity.
using ChainNode = std::optional<IndexedRoot>;
using Chain = std::vector<ChainNode>;

/// Projective-delineability decision for one polynomial at one level. An
/// omitted ldcf carries one cyclic chain per root outside the cell.
struct PdRecord {
    Polynomial poly;
    std::size_t level = 0;
    PdStatus status = PdStatus::Trivial;
    std::vector<Chain> chains;

    bool operator==(const PdRecord&) const = default;
};

struct Cell {
    VarOrder vars;
    Heuristic heuristic = Heuristic::BC;
    std::vector<Rational> sample;
    /// normalize_basis of the input set.
    std::vector<Polynomial> inputs;
    /// intervals[i] describes level i+1.
    std::vector<SymbolicInterval> intervals;
    std::vector<TraceEntry> trace;
    CounterSet stats;
    std::vector<PdRecord> pd;

    std::size_t dimension() const { return sample.size(); }

    bool operator==(const Cell& o) const {
        return vars == o.vars && heuristic == o.heuristic && sample == o.sample && inputs == o.inputs &&
               intervals == o.intervals && trace == o.trace && stats == o.stats && pd == o.pd;
    }
};

struct Failure {
    std::string reason;  // "nullified"
    Polynomial poly;
    std::size_t level = 0;
};

using CellResult = std::variant<Cell, Failure>;

/// Evaluated bounds of one level at a prefix; nullopt entries are infinite.
struct EvaluatedInterval {
    bool defined = true;
    bool section = false;
    std::optional<AlgebraicValue> lower;
    std::optional<AlgebraicValue> upper;
};

inline EvaluatedInterval evaluate_interval(const SymbolicInterval& I, std::span<const Rational> prefix) {
    EvaluatedInterval e;
    if (I.is_section()) {
        e.section = true;
        e.lower = eval_indexed_root(I.bound(), prefix);
        e.upper = e.lower;
        e.defined = e.lower.has_value();
        return e;
    }
    if (I.lower()) {
        e.lower = eval_indexed_root(*I.lower(), prefix);
        if (!e.lower) e.defined = false;
    }
    if (I.upper()) {
        e.upper = eval_indexed_root(*I.upper(), prefix);
        if (!e.upper) e.defined = false;
    }
    return e;
}

/// Level-by-level membership; undefined bounds mean "not contained".
inline bool contains(const Cell& c, std::span<const Rational> point) {
    if (point.size() != c.dimension()) throw DomainError("point dimension mismatch");
    for (std::size_t i = 0; i < c.intervals.size(); ++i) {
        auto e = evaluate_interval(c.intervals[i], point.first(i));
        if (!e.defined) return false;
        auto x = AlgebraicValue::rational(point[i]);
        if (e.section) {
            if (compare(*e.lower, x) != 0) return false;
            continue;
        }
        if (e.lower && compare(*e.lower, x) >= 0) return false;
        if (e.upper && compare(x, *e.upper) >= 0) return false;
    }
    return true;
}

}  // namespace scell
