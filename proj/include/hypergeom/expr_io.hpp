#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "factored_expr.hpp"

namespace hypergeom {

// Renders an affine form with variables in canonical order, constant last:
// "x+u1-u2", "x+k1-u1-2a", "2y1-3/2". Unit coefficients are dropped.
inline std::string render_form(const LinearForm& l) {
    std::string s;
    auto emit = [&s](Rat c, const std::string& name) {
        if (s.empty()) {
            if (c < 0) {
                s += '-';
                c = -c;
            }
        } else {
            s += c < 0 ? '-' : '+';
            if (c < 0) c = -c;
        }
        if (name.empty())
            s += rat_string(c);
        else {
            if (c != 1) s += rat_string(c);
            s += name;
        }
    };
    for (const auto& [v, c] : l.coeffs()) emit(c, v.name());
    if (l.constant() != 0 || s.empty()) emit(l.constant(), "");
    return s;
}

// Canonical print: "scalar*(form)^exp*..." with the scalar omitted when 1 and
// unit exponents dropped, e.g. "-1*(x+u1-u2)^-1" or "(x)^2*(x+u1-u2)".
inline std::string render_expr(const FactoredExpr& e) {
    if (e.factors().empty()) return rat_string(e.scalar());
    std::string s;
    if (e.scalar() != 1) s = rat_string(e.scalar()) + "*";
    bool first = true;
    for (const auto& [f, k] : e.factors()) {
        if (!first) s += '*';
        first = false;
        s += '(' + render_form(f) + ')';
        if (k != 1) s += '^' + std::to_string(k);
    }
    return s;
}

namespace detail {

class ExprParser {
  public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    FactoredExpr parse() {
        FactoredExpr e = parse_term();
        skip_ws();
        while (!eof()) {
            char c = peek();
            long sign;
            if (c == '*')
                sign = 1;
            else if (c == '/')
                sign = -1;
            else
                fail("expected '*' or '/'");
            ++pos_;
            FactoredExpr t = parse_term();
            e *= sign > 0 ? t : t.inverse();
            skip_ws();
        }
        return e;
    }

  private:
    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    bool try_consume(char c) {
        if (eof() || peek() != c) return false;
        ++pos_;
        return true;
    }

    std::optional<Int> try_parse_int() {
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) return std::nullopt;
        std::size_t start = pos_;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return Int(std::string(text_.substr(start, pos_ - start)), 10);
    }

    // INT ('/' INT)?; the '/' is only a fraction bar when digits follow it.
    std::optional<Rat> try_parse_rational() {
        auto num = try_parse_int();
        if (!num) return std::nullopt;
        if (!eof() && peek() == '/' && pos_ + 1 < text_.size() &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            std::size_t den_at = ++pos_;
            Int den = *try_parse_int();
            if (den == 0) throw ParseError(den_at, "zero denominator literal");
            Rat q(*num, den);
            q.canonicalize();
            return q;
        }
        return Rat(*num);
    }

    long parse_exponent() {
        skip_ws();
        bool neg = try_consume('-');
        std::size_t at = pos_;
        auto v = try_parse_int();
        if (!v) fail("expected an integer exponent");
        if (*v > 1000000) throw ParseError(at, "exponent too large");
        long e = v->get_si();
        return neg ? -e : e;
    }

    Variable parse_varname() {
        char c = peek();
        std::size_t at = pos_;
        ++pos_;
        if (c == 'x') return Variable::x();
        if (c == 'a') return Variable::alpha();
        auto idx = try_parse_int();
        if (!idx || *idx < 1 || *idx > 1000) throw ParseError(at, "bad variable index");
        int i = static_cast<int>(idx->get_si());
        switch (c) {
            case 'u': return Variable::u(i);
            case 'H': return Variable::H(i);
            case 'k': return Variable::kappa(i);
            case 'y': return Variable::y(i);
            default: throw ParseError(at, "unknown variable name");
        }
    }

    bool at_varname() const {
        if (eof()) return false;
        char c = peek();
        return c == 'x' || c == 'a' || c == 'u' || c == 'H' || c == 'k' || c == 'y';
    }

    // rational? varname? with at least one present; leading sign handled by caller.
    void parse_monomial(LinearForm& l, const Rat& sign) {
        skip_ws();
        auto coeff = try_parse_rational();
        if (at_varname()) {
            Variable v = parse_varname();
            l.add_term(v, sign * coeff.value_or(Rat(1)));
        } else if (coeff) {
            l.add_constant(sign * *coeff);
        } else {
            fail("expected a variable or number");
        }
    }

    LinearForm parse_linform() {
        LinearForm l;
        skip_ws();
        Rat sign(1);
        if (try_consume('-'))
            sign = -1;
        else
            try_consume('+');
        parse_monomial(l, sign);
        skip_ws();
        while (!eof() && (peek() == '+' || peek() == '-')) {
            sign = peek() == '-' ? -1 : 1;
            ++pos_;
            parse_monomial(l, sign);
            skip_ws();
        }
        if (!try_consume(')')) fail("expected ')'");
        return l;
    }

    FactoredExpr parse_term() {
        skip_ws();
        bool neg = try_consume('-');
        skip_ws();
        std::size_t scalar_at = pos_;
        auto scalar = try_parse_rational();
        skip_ws();
        std::optional<LinearForm> form;
        std::size_t form_at = pos_;
        if (try_consume('(')) form = parse_linform();
        if (!scalar && !form) fail("expected a factor or a scalar");
        long exp = 1;
        skip_ws();
        if (form && try_consume('^')) exp = parse_exponent();
        Rat s = scalar.value_or(Rat(1));
        if (neg) s = -s;
        if (s == 0) throw ParseError(scalar_at, "zero scalar");
        FactoredExpr t = FactoredExpr::from_scalar(s);
        if (form) {
            try {
                t.multiply_form(*form, exp);
            } catch (const ZeroFactorError&) {
                throw ParseError(form_at, "factor is identically zero");
            }
        }
        return t;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline FactoredExpr parse_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

}  // namespace hypergeom
