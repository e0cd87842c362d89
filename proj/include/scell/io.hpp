#pragma once

// Instance and cell documents (JSON), plus verification reports.

#include "scell/poly/parse.hpp"
#include "scell/scc_projective.hpp"
#include "scell/verify/verify.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace scell {

using json = nlohmann::ordered_json;

struct Instance {
    std::string id;
    VarOrder vars;
    std::vector<Polynomial> polys;
    std::vector<Rational> sample;
    /// Set by the generator when no non-nullifying sample was found.
    bool expect_fail = false;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        auto [l, c] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("malformed JSON", l, c);
    }
}

[[noreturn]] inline void fail(const std::string& msg) { throw ParseError(msg, 1, 1); }

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline std::string str(const json& j, const std::string& what) {
    if (!j.is_string()) fail(what + " must be a string");
    return j.get<std::string>();
}

inline Polynomial poly_field(const json& j, const VarOrder& vars, const std::string& what) {
    std::string s = str(j, what);
    try {
        return parse_polynomial(s, vars);
    } catch (const ParseError& e) {
        throw ParseError(what + ": " + std::string(e.what()).substr(std::string(e.what()).find(' ') + 1), e.line(), e.column());
    }
}

inline Rational rational_field(const json& j, const std::string& what) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    try {
        return parse_rational(str(j, what));
    } catch (const DomainError& e) {
        fail(what + ": " + e.what());
    }
}

inline VarOrder vars_field(const json& j) {
    const json& v = field(j, "vars");
    if (!v.is_array()) fail("'vars' must be an array");
    std::vector<std::string> names;
    for (const auto& x : v) names.push_back(str(x, "variable name"));
    try {
        return VarOrder(std::move(names));
    } catch (const DomainError& e) {
        fail(e.what());
    }
}

}  // namespace detail

/// Native instance document: {"vars": [...], "polys": [...], "sample": [...]}.
inline Instance instance_from_json(const json& j) {
    Instance in;
    in.vars = detail::vars_field(j);
    const json& ps = detail::field(j, "polys");
    if (!ps.is_array()) detail::fail("'polys' must be an array");
    for (std::size_t k = 0; k < ps.size(); ++k) {
        std::string what = "polys[" + std::to_string(k) + "]";
        Polynomial p = detail::poly_field(ps[k], in.vars, what);
        if (p.is_constant()) detail::fail(what + ": constant polynomial");
        in.polys.push_back(std::move(p));
    }
    const json& s = detail::field(j, "sample");
    if (!s.is_array()) detail::fail("'sample' must be an array");
    for (std::size_t k = 0; k < s.size(); ++k) in.sample.push_back(detail::rational_field(s[k], "sample[" + std::to_string(k) + "]"));
    if (in.sample.size() != in.vars.size())
        detail::fail("sample arity " + std::to_string(in.sample.size()) + " does not match " + std::to_string(in.vars.size()) +
                     " variables");
    if (j.contains("id") && j["id"].is_string()) in.id = j["id"].get<std::string>();
    if (j.contains("expect_fail") && j["expect_fail"].is_boolean()) in.expect_fail = j["expect_fail"].get<bool>();
    return in;
}

inline Instance parse_instance(const std::string& text) { return instance_from_json(detail::parse_json(text)); }

inline json to_json(const Instance& in) {
    json j;
    if (!in.id.empty()) j["id"] = in.id;
    j["vars"] = in.vars.names();
    j["polys"] = json::array();
    for (const auto& p : in.polys) j["polys"].push_back(to_string(p, in.vars));
    j["sample"] = json::array();
    for (const auto& r : in.sample) j["sample"].push_back(to_string(r));
    if (in.expect_fail) j["expect_fail"] = true;
    return j;
}

namespace detail {

inline json root_json(const IndexedRoot& r, const VarOrder& vars) { return {{"poly", to_string(r.poly, vars)}, {"index", r.index}}; }

inline IndexedRoot root_from(const json& j, const VarOrder& vars) {
    IndexedRoot r;
    r.poly = poly_field(field(j, "poly"), vars, "root polynomial");
    const json& idx = field(j, "index");
    if (!idx.is_number_unsigned() || idx.get<unsigned>() == 0) fail("root index must be a positive integer");
    r.index = idx.get<unsigned>();
    return r;
}

inline json value_json(const AlgebraicValue& a) {
    if (a.is_rational()) return to_string(a.rational_value());
    auto r = a.refined(Rational(1, 1 << 20));
    return json{{"between", {to_string(r.interval().lo()), to_string(r.interval().hi())}}};
}

}  // namespace detail

inline json to_json(const SymbolicInterval& I, const VarOrder& vars) {
    if (I.is_section()) return {{"section", detail::root_json(I.bound(), vars)}};
    json lo = I.lower() ? detail::root_json(*I.lower(), vars) : json("-inf");
    json hi = I.upper() ? detail::root_json(*I.upper(), vars) : json("+inf");
    return {{"sector", {{"lower", lo}, {"upper", hi}}}};
}

inline SymbolicInterval interval_from_json(const json& j, const VarOrder& vars) {
    if (j.is_object() && j.contains("section")) return SymbolicInterval::section(detail::root_from(j["section"], vars));
    const json& s = detail::field(j, "sector");
    auto side = [&](const char* key, const char* inf) -> std::optional<IndexedRoot> {
        const json& b = detail::field(s, key);
        if (b.is_string()) {
            if (b.get<std::string>() != inf) detail::fail(std::string("expected \"") + inf + "\"");
            return std::nullopt;
        }
        return detail::root_from(b, vars);
    };
    return SymbolicInterval::sector(side("lower", "-inf"), side("upper", "+inf"));
}

inline json to_json(const CounterSet& c) {
    return {{"resultants_added", c.resultants_added},
            {"discriminants_added", c.discriminants_added},
            {"ldcfs_added", c.ldcfs_added},
            {"coeffs_added", c.coeffs_added},
            {"ldcfs_omitted", c.ldcfs_omitted},
            {"pd_blocked_unbounded", c.pd_blocked_unbounded},
            {"pd_blocked_no_pairing", c.pd_blocked_no_pairing},
            {"roots_computed", c.roots_computed},
            {"max_total_degree", c.max_total_degree}};
}

inline CounterSet counters_from_json(const json& j) {
    CounterSet c;
    auto get = [&](const char* k) { return detail::field(j, k).get<unsigned long>(); };
    c.resultants_added = get("resultants_added");
    c.discriminants_added = get("discriminants_added");
    c.ldcfs_added = get("ldcfs_added");
    c.coeffs_added = get("coeffs_added");
    c.ldcfs_omitted = get("ldcfs_omitted");
    c.pd_blocked_unbounded = get("pd_blocked_unbounded");
    c.pd_blocked_no_pairing = get("pd_blocked_no_pairing");
    c.roots_computed = get("roots_computed");
    c.max_total_degree = get("max_total_degree");
    return c;
}

/// Cell document. Bound values at the sample are included for readers and
/// ignored when parsing.
inline json describe(const Cell& c) {
    const VarOrder& v = c.vars;
    json j;
    j["vars"] = v.names();
    j["heuristic"] = to_string(c.heuristic);
    j["sample"] = json::array();
    for (const auto& r : c.sample) j["sample"].push_back(to_string(r));
    j["inputs"] = json::array();
    for (const auto& p : c.inputs) j["inputs"].push_back(to_string(p, v));
    j["intervals"] = json::array();
    j["bounds_at_sample"] = json::array();
    std::span<const Rational> s(c.sample);
    for (std::size_t i = 0; i < c.intervals.size(); ++i) {
        j["intervals"].push_back(to_json(c.intervals[i], v));
        auto e = evaluate_interval(c.intervals[i], s.first(i));
        json b;
        if (e.section) {
            b["section"] = e.lower ? detail::value_json(*e.lower) : json(nullptr);
        } else {
            b["lower"] = e.lower ? detail::value_json(*e.lower) : json("-inf");
            b["upper"] = e.upper ? detail::value_json(*e.upper) : json("+inf");
        }
        j["bounds_at_sample"].push_back(b);
    }
    j["trace"] = json::array();
    for (const auto& t : c.trace) {
        json parents = json::array();
        for (const auto& p : t.parents) parents.push_back(to_string(p, v));
        j["trace"].push_back({{"poly", to_string(t.poly, v)},
                              {"tag", to_string(t.tag)},
                              {"parents", parents},
                              {"variable", t.variable >= 1 && t.variable <= v.size() ? v.name(t.variable - 1) : ""}});
    }
    j["stats"] = to_json(c.stats);
    if (is_projective(c.heuristic)) {
        j["pd"] = json::array();
        for (const auto& r : c.pd) {
            json chains = json::array();
            for (const auto& ch : r.chains) {
                json nodes = json::array();
                for (const auto& n : ch) nodes.push_back(n ? detail::root_json(*n, v) : json("inf"));
                chains.push_back(nodes);
            }
            j["pd"].push_back({{"poly", to_string(r.poly, v)}, {"level", r.level}, {"status", to_string(r.status)}, {"chains", chains}});
        }
    }
    return j;
}

inline Cell cell_from_json(const json& j) {
    Cell c;
    c.vars = detail::vars_field(j);
    const VarOrder& v = c.vars;
    c.heuristic = heuristic_from_string(detail::str(detail::field(j, "heuristic"), "heuristic"));
    for (const auto& r : detail::field(j, "sample")) c.sample.push_back(detail::rational_field(r, "sample"));
    for (const auto& p : detail::field(j, "inputs")) c.inputs.push_back(detail::poly_field(p, v, "input"));
    for (const auto& I : detail::field(j, "intervals")) c.intervals.push_back(interval_from_json(I, v));
    for (const auto& t : detail::field(j, "trace")) {
        TraceEntry e;
        e.poly = detail::poly_field(detail::field(t, "poly"), v, "trace polynomial");
        e.tag = tag_from_string(detail::str(detail::field(t, "tag"), "tag"));
        for (const auto& p : detail::field(t, "parents")) e.parents.push_back(detail::poly_field(p, v, "parent"));
        std::string var = detail::str(detail::field(t, "variable"), "variable");
        auto idx = v.find(var);
        e.variable = idx ? *idx + 1 : 0;
        c.trace.push_back(std::move(e));
    }
    c.stats = counters_from_json(detail::field(j, "stats"));
    if (j.contains("pd")) {
        for (const auto& r : j["pd"]) {
            PdRecord rec;
            rec.poly = detail::poly_field(detail::field(r, "poly"), v, "pd polynomial");
            rec.level = detail::field(r, "level").get<std::size_t>();
            rec.status = pd_status_from_string(detail::str(detail::field(r, "status"), "status"));
            for (const auto& ch : detail::field(r, "chains")) {
                Chain chain;
                for (const auto& n : ch) {
                    if (n.is_string() && n.get<std::string>() == "inf") chain.emplace_back(std::nullopt);
                    else chain.emplace_back(detail::root_from(n, v));
                }
                rec.chains.push_back(std::move(chain));
            }
            c.pd.push_back(std::move(rec));
        }
    }
    return c;
}

inline json to_json(const VerifyReport& r, const VarOrder& vars) {
    json j;
    j["samples_tested"] = r.samples_tested;
    j["passed"] = r.passed();
    j["skipped_section_levels"] = r.skipped_section_levels;
    j["violations"] = json::array();
    for (const auto& v : r.violations) {
        json pt = json::array();
        for (const auto& x : v.point) pt.push_back(to_string(x));
        json e{{"kind", to_string(v.kind)}, {"point", pt}, {"poly", to_string(v.poly, vars)}};
        if (v.kind == Violation::Kind::Sign) {
            e["expected"] = v.expected;
            e["observed"] = v.observed;
        } else {
            e["level"] = v.level;
        }
        j["violations"].push_back(e);
    }
    return j;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace scell
