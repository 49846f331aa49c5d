#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "factored_expr.hpp"

namespace hypergeom {

// Exponent vector; entries are strictly positive.
using Monomial = std::map<Variable, int>;

// Lexicographic monomial order with variable precedence given by the canonical
// variable order.  Compatible with multiplication, so single-divisor exact
// division below terminates with a well-defined leading term.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        auto ia = a.begin(), ib = b.begin();
        while (ia != a.end() || ib != b.end()) {
            if (ia == a.end()) return true;   // a runs out of earlier variables
            if (ib == b.end()) return false;
            if (ia->first != ib->first) {
                // The earlier variable present on one side only: that side is larger.
                return ib->first < ia->first;
            }
            if (ia->second != ib->second) return ia->second < ib->second;
            ++ia, ++ib;
        }
        return false;
    }
};

inline Monomial monomial_mul(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (const auto& [v, e] : b) r[v] += e;
    return r;
}

// b | a as monomials; quotient written to q when given.
inline bool monomial_divides(const Monomial& b, const Monomial& a, Monomial* q = nullptr) {
    Monomial out = a;
    for (const auto& [v, e] : b) {
        auto it = out.find(v);
        if (it == out.end() || it->second < e) return false;
        it->second -= e;
        if (it->second == 0) out.erase(it);
    }
    if (q) *q = std::move(out);
    return true;
}

class SparsePoly {
  public:
    using Terms = std::map<Monomial, Rat, MonomialLess>;

    SparsePoly() = default;
    explicit SparsePoly(const Rat& c) { add_term(Monomial{}, c); }
    explicit SparsePoly(const Variable& v) { add_term(Monomial{{v, 1}}, Rat(1)); }
    explicit SparsePoly(const LinearForm& l) {
        add_term(Monomial{}, l.constant());
        for (const auto& [v, c] : l.coeffs()) add_term(Monomial{{v, 1}}, c);
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }

    Rat constant_value() const {
        if (terms_.empty()) return Rat(0);
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void add_term(const Monomial& m, const Rat& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    SparsePoly& operator+=(const SparsePoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    SparsePoly& operator-=(const SparsePoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }

    SparsePoly operator-() const {
        SparsePoly r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(monomial_mul(ma, mb), ca * cb);
        return r;
    }

    SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

    SparsePoly& scale(const Rat& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend SparsePoly operator*(SparsePoly a, const Rat& s) {
        a.scale(s);
        return a;
    }
    friend SparsePoly operator*(const Rat& s, SparsePoly a) {
        a.scale(s);
        return a;
    }

    SparsePoly pow(long e) const {
        if (e < 0) throw DataError("negative power of a polynomial");
        SparsePoly acc(Rat(1));
        for (long i = 0; i < e; ++i) acc *= *this;
        return acc;
    }

    bool contains(const Variable& v) const {
        for (const auto& [m, c] : terms_)
            if (m.count(v)) return true;
        return false;
    }

    int degree_in(const Variable& v) const {
        int d = 0;
        for (const auto& [m, c] : terms_) {
            auto it = m.find(v);
            if (it != m.end() && it->second > d) d = it->second;
        }
        return d;
    }

    // Each occurrence of `from` becomes `to` (exponents merge).
    SparsePoly renamed(const Variable& from, const Variable& to) const {
        SparsePoly r;
        for (const auto& [m, c] : terms_) {
            auto it = m.find(from);
            if (it == m.end()) {
                r.add_term(m, c);
            } else {
                Monomial n = m;
                int e = it->second;
                n.erase(from);
                n[to] += e;
                r.add_term(n, c);
            }
        }
        return r;
    }

    // Exact quotient by a nonzero divisor, or nullopt when division leaves a
    // remainder.  Standard leading-term elimination: in an exact division the
    // leading term of the partial remainder is always divisible.
    std::optional<SparsePoly> divided_exact(const SparsePoly& d) const {
        if (d.is_zero()) throw DataError("division by the zero polynomial");
        SparsePoly q, r = *this;
        const auto& dlt = *d.terms_.rbegin();
        while (!r.terms_.empty()) {
            const auto& rlt = *r.terms_.rbegin();
            Monomial m;
            if (!monomial_divides(dlt.first, rlt.first, &m)) return std::nullopt;
            Rat c = rlt.second / dlt.second;
            SparsePoly t;
            t.add_term(m, c);
            q += t;
            r -= t * d;
        }
        return q;
    }

    // poly == content * primitive with integer coprime primitive coefficients
    // and positive leading coefficient.  Pre: nonzero.
    std::pair<Rat, SparsePoly> content_split() const {
        if (is_zero()) throw DataError("content of the zero polynomial");
        Int den_lcm(1), num_gcd(0);
        for (const auto& [m, c] : terms_) den_lcm = lcm(den_lcm, c.get_den());
        for (const auto& [m, c] : terms_) num_gcd = gcd(num_gcd, Rat(c * Rat(den_lcm)).get_num());
        Rat content = Rat(num_gcd) / Rat(den_lcm);
        if (terms_.rbegin()->second < 0) content = -content;
        SparsePoly prim = *this;
        prim.scale(1 / content);
        return {content, prim};
    }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        return a.terms_ == b.terms_;
    }

    // Report rendering only; not part of the expression grammar.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            Rat c = it->second;
            if (out.empty()) {
                if (c < 0) out += "-", c = -c;
            } else {
                out += c < 0 ? " - " : " + ";
                if (c < 0) c = -c;
            }
            std::string mono;
            for (const auto& [v, e] : it->first) {
                if (!mono.empty()) mono += "*";
                mono += v.name();
                if (e != 1) mono += "^" + std::to_string(e);
            }
            if (mono.empty())
                out += rat_string(c);
            else if (c == 1)
                out += mono;
            else
                out += rat_string(c) + "*" + mono;
        }
        return out;
    }

  private:
    Terms terms_;
};

// Expansion of a denominator-free factored expression.
inline SparsePoly expand_product(const FactoredExpr& e) {
    SparsePoly acc(e.scalar());
    for (const auto& [f, k] : e.factors()) {
        if (k < 0) throw DataError("cannot expand a factored expression with denominators");
        acc *= SparsePoly(f).pow(k);
    }
    return acc;
}

}  // namespace hypergeom
