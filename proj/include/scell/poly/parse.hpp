#pragma once

// Text form of polynomials: literals (integers or p/q), declared variable
// names, + - * ^ and parentheses. No implicit multiplication.

#include "scell/poly/polynomial.hpp"

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

namespace scell {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, const VarOrder& vars) : s_(text), vars_(vars) {}

    Polynomial parse() {
        skip_ws();
        if (pos_ == s_.size()) fail("empty polynomial");
        Polynomial p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return p;
    }

private:
    static constexpr unsigned kMaxExponent = 4096;

    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

    [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
            if (s_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = unary();
        while (accept('*')) acc *= unary();
        return acc;
    }

    Polynomial unary() {
        if (accept('-')) return -unary();
        return power();
    }

    Polynomial power() {
        Polynomial base = atom();
        if (accept('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected a nonnegative integer exponent");
            std::string digits(s_.substr(start, pos_ - start));
            if (digits.size() > 6 || std::stoul(digits) > kMaxExponent) fail_at(start, "exponent too large");
            if (pos_ < s_.size() && s_[pos_] == '/') fail("exponent must be an integer");
            base = base.pow(static_cast<unsigned>(std::stoul(digits)));
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '^') fail("chained exponents need parentheses");
        }
        return base;
    }

    Polynomial atom() {
        skip_ws();
        if (pos_ == s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!accept(')')) fail("expected ')'");
            after_operand();
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            Integer num(std::string(s_.substr(start, pos_ - start)), 10);
            Integer den(1);
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                std::size_t ds = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                if (ds == pos_) fail("expected denominator digits");
                den = Integer(std::string(s_.substr(ds, pos_ - ds)), 10);
                if (den == 0) fail_at(ds, "zero denominator");
            }
            if (pos_ < s_.size() && s_[pos_] == '.') fail("decimal literals are not supported; use p/q");
            after_operand();
            return Polynomial(rat_normalize(num, den));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            auto v = vars_.find(name);
            if (!v) fail_at(start, "unknown variable '" + name + "'");
            after_operand();
            return Polynomial::variable(*v);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    // Rejects juxtaposition such as "2x" or "x y" and division outside literals.
    void after_operand() {
        std::size_t save = pos_;
        skip_ws();
        if (pos_ < s_.size()) {
            char c = s_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(')
                fail("implicit multiplication is not allowed; use '*'");
            if (c == '/') fail("division is only allowed inside rational literals");
        }
        pos_ = save;
    }

    std::string_view s_;
    const VarOrder& vars_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, const VarOrder& vars) {
    return detail::PolyParser(text, vars).parse();
}

/// Canonical text; parse_polynomial(to_string(p, vars), vars) == p.
inline std::string to_string(const Polynomial& p, const VarOrder& vars) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
        Rational c = t.coef;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) os << '-';
        } else {
            os << (neg ? '-' : '+');
        }
        first = false;
        std::string mono;
        const auto& e = t.mono.exponents();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += vars.name(i);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) os << to_string(c);
        else if (c == 1) os << mono;
        else os << to_string(c) << '*' << mono;
    }
    return os.str();
}

}  // namespace scell
