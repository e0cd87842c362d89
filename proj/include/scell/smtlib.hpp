#pragma once

// Polynomial extraction from a small QF_NRA subset of SMT-LIB 2: real
// declarations and conjunctions of polynomial comparisons.

#include "scell/poly/parse.hpp"

#include <variant>

namespace scell {

struct SmtExtraction {
    VarOrder vars;
    /// lhs - rhs of every atomic constraint, in order of appearance.
    std::vector<Polynomial> polys;
    std::vector<std::string> relations;
};

namespace detail {

struct SExpr {
    std::string atom;  // empty for lists
    std::vector<SExpr> items;
    std::size_t line = 1, col = 1;
    bool is_list = false;
};

class SExprReader {
public:
    explicit SExprReader(const std::string& text) : t_(text) {}

    std::vector<SExpr> read_all() {
        std::vector<SExpr> out;
        skip();
        while (i_ < t_.size()) {
            out.push_back(read());
            skip();
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

    void bump() {
        if (t_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    void skip() {
        while (i_ < t_.size()) {
            if (std::isspace(static_cast<unsigned char>(t_[i_]))) {
                bump();
            } else if (t_[i_] == ';') {
                while (i_ < t_.size() && t_[i_] != '\n') bump();
            } else {
                break;
            }
        }
    }

    SExpr read() {
        SExpr e;
        e.line = line_;
        e.col = col_;
        if (t_[i_] == '(') {
            e.is_list = true;
            bump();
            for (skip(); i_ < t_.size() && t_[i_] != ')'; skip()) e.items.push_back(read());
            if (i_ >= t_.size()) fail("unbalanced '('");
            bump();
            return e;
        }
        if (t_[i_] == ')') fail("unexpected ')'");
        if (t_[i_] == '|') {
            bump();
            while (i_ < t_.size() && t_[i_] != '|') e.atom += t_[i_], bump();
            if (i_ >= t_.size()) fail("unterminated quoted symbol");
            bump();
            return e;
        }
        if (t_[i_] == '"') {
            e.atom += '"';
            bump();
            while (i_ < t_.size() && t_[i_] != '"') e.atom += t_[i_], bump();
            if (i_ >= t_.size()) fail("unterminated string");
            bump();
            return e;
        }
        while (i_ < t_.size() && !std::isspace(static_cast<unsigned char>(t_[i_])) && t_[i_] != '(' && t_[i_] != ')' && t_[i_] != ';')
            e.atom += t_[i_], bump();
        return e;
    }

    const std::string& t_;
    std::size_t i_ = 0, line_ = 1, col_ = 1;
};

inline std::optional<Rational> smt_number(const std::string& a) {
    if (a.empty() || !std::isdigit(static_cast<unsigned char>(a[0]))) return std::nullopt;
    auto dot = a.find('.');
    std::string digits = a;
    long scale = 0;
    if (dot != std::string::npos) {
        digits = a.substr(0, dot) + a.substr(dot + 1);
        scale = static_cast<long>(a.size() - dot - 1);
        if (scale == 0) return std::nullopt;
    }
    for (char ch : digits)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return std::nullopt;
    Rational r{Integer(digits, 10)};
    if (scale > 0) {
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(scale));
        r /= Rational(den);
    }
    return r;
}

class SmtTranslator {
public:
    SmtExtraction run(const std::vector<SExpr>& script) {
        for (const auto& cmd : script) command(cmd);
        out_.vars = VarOrder(names_);
        for (auto& raw : pending_) {
            if (raw.poly.is_constant()) continue;
            out_.polys.push_back(raw.poly);
            out_.relations.push_back(raw.rel);
        }
        return out_;
    }

private:
    struct Pending {
        Polynomial poly;
        std::string rel;
    };

    [[noreturn]] static void fail(const SExpr& e, const std::string& msg) { throw ParseError(msg, e.line, e.col); }

    static std::string head(const SExpr& e) { return e.is_list && !e.items.empty() && !e.items[0].is_list ? e.items[0].atom : ""; }

    void command(const SExpr& cmd) {
        std::string h = head(cmd);
        if (h.empty()) fail(cmd, "expected a command");
        if (h == "set-logic" || h == "set-info" || h == "set-option" || h == "check-sat" || h == "exit" || h == "get-model" ||
            h == "get-value" || h == "push" || h == "pop")
            return;
        if (h == "declare-fun") {
            if (cmd.items.size() != 4 || !cmd.items[2].is_list || !cmd.items[2].items.empty())
                fail(cmd, "unsupported construct 'declare-fun' with arguments");
            declare(cmd, cmd.items[1], cmd.items[3]);
            return;
        }
        if (h == "declare-const") {
            if (cmd.items.size() != 3) fail(cmd, "malformed declare-const");
            declare(cmd, cmd.items[1], cmd.items[2]);
            return;
        }
        if (h == "assert") {
            if (cmd.items.size() != 2) fail(cmd, "malformed assert");
            formula(cmd.items[1]);
            return;
        }
        fail(cmd, "unsupported construct '" + h + "'");
    }

    void declare(const SExpr& cmd, const SExpr& name, const SExpr& sort) {
        if (name.is_list) fail(name, "expected a symbol");
        if (sort.is_list || sort.atom != "Real") fail(sort, "unsupported construct: sort '" + (sort.is_list ? std::string("(...)") : sort.atom) + "'");
        if (std::find(names_.begin(), names_.end(), name.atom) != names_.end()) fail(cmd, "duplicate declaration '" + name.atom + "'");
        if (names_.size() >= 64) fail(cmd, "too many variables");
        names_.push_back(name.atom);
    }

    void formula(const SExpr& f) {
        if (!f.is_list) {
            if (f.atom == "true") return;
            fail(f, "unsupported construct '" + f.atom + "'");
        }
        std::string h = head(f);
        if (h == "and") {
            for (std::size_t k = 1; k < f.items.size(); ++k) formula(f.items[k]);
            return;
        }
        if (h == "<" || h == "<=" || h == "=" || h == ">=" || h == ">") {
            if (f.items.size() < 3) fail(f, "comparison needs two arguments");
            for (std::size_t k = 1; k + 1 < f.items.size(); ++k)
                pending_.push_back({term(f.items[k]) - term(f.items[k + 1]), h});
            return;
        }
        fail(f, "unsupported construct '" + (h.empty() ? std::string("(...)") : h) + "'");
    }

    Polynomial term(const SExpr& t) {
        if (!t.is_list) {
            if (auto r = smt_number(t.atom)) return Polynomial(*r);
            auto it = std::find(names_.begin(), names_.end(), t.atom);
            if (it == names_.end()) fail(t, "undeclared symbol '" + t.atom + "'");
            return Polynomial::variable(static_cast<Var>(it - names_.begin()));
        }
        std::string h = head(t);
        std::size_t n = t.items.size();
        if (h == "+" || h == "*") {
            if (n < 2) fail(t, "'" + h + "' needs arguments");
            Polynomial acc = term(t.items[1]);
            for (std::size_t k = 2; k < n; ++k) acc = h == "+" ? acc + term(t.items[k]) : acc * term(t.items[k]);
            return acc;
        }
        if (h == "-") {
            if (n < 2) fail(t, "'-' needs arguments");
            Polynomial acc = term(t.items[1]);
            if (n == 2) return -acc;
            for (std::size_t k = 2; k < n; ++k) acc = acc - term(t.items[k]);
            return acc;
        }
        if (h == "/") {
            if (n < 3) fail(t, "'/' needs two arguments");
            Polynomial acc = term(t.items[1]);
            for (std::size_t k = 2; k < n; ++k) {
                Polynomial d = term(t.items[k]);
                if (!d.is_constant()) fail(t.items[k], "unsupported construct: division by a non-constant");
                if (d.is_zero()) fail(t.items[k], "division by zero");
                acc = acc.scaled(Rational(Rational(1) / d.constant_value()));
            }
            return acc;
        }
        fail(t, "unsupported construct '" + (h.empty() ? std::string("(...)") : h) + "'");
    }

    std::vector<std::string> names_;
    std::vector<Pending> pending_;
    SmtExtraction out_;
};

}  // namespace detail

/// Atomic constraints of a QF_NRA script as polynomials `lhs - rhs`, with
/// variables in declaration order. Constant constraints are dropped.
inline SmtExtraction extract_smtlib(const std::string& text) {
    detail::SExprReader reader(text);
    detail::SmtTranslator tr;
    return tr.run(reader.read_all());
}

}  // namespace scell
