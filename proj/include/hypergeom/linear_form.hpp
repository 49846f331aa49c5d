#pragma once

#include <map>
#include <string>
#include <utility>

#include "rational.hpp"
#include "variable.hpp"

namespace hypergeom {

// Affine-linear form: rational constant plus rational multiples of variables.
// Zero coefficients are never stored.  Forms held inside a FactoredExpr are
// kept *primitive*: integer coprime coefficients whose leading (first in
// variable order, or the constant when no variable is present) is positive;
// sign and rational content always live in the enclosing scalar.
class LinearForm {
  public:
    LinearForm() = default;
    explicit LinearForm(Rat constant) : constant_(std::move(constant)) {}
    explicit LinearForm(const Variable& v, Rat coeff = Rat(1)) { add_term(v, std::move(coeff)); }

    static LinearForm zero() { return LinearForm(); }

    void add_constant(const Rat& c) { constant_ += c; }

    void add_term(const Variable& v, const Rat& coeff) {
        if (coeff == 0) return;
        auto [it, fresh] = coeffs_.emplace(v, coeff);
        if (!fresh) {
            it->second += coeff;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    void add(const LinearForm& other, const Rat& scale = Rat(1)) {
        if (scale == 0) return;
        constant_ += scale * other.constant_;
        for (const auto& [v, c] : other.coeffs_) add_term(v, scale * c);
    }

    void negate() {
        constant_ = -constant_;
        for (auto& [v, c] : coeffs_) c = -c;
    }

    void scale(const Rat& s) {
        if (s == 0) {
            *this = LinearForm();
            return;
        }
        constant_ *= s;
        for (auto& [v, c] : coeffs_) c *= s;
    }

    bool is_zero() const { return coeffs_.empty() && constant_ == 0; }
    bool is_constant() const { return coeffs_.empty(); }
    const Rat& constant() const { return constant_; }
    const std::map<Variable, Rat>& coeffs() const { return coeffs_; }

    Rat coeff(const Variable& v) const {
        auto it = coeffs_.find(v);
        return it == coeffs_.end() ? Rat(0) : it->second;
    }

    bool contains(const Variable& v) const { return coeffs_.count(v) != 0; }
    bool contains_kind(VarKind k) const {
        for (const auto& [v, c] : coeffs_)
            if (v.kind == k) return true;
        return false;
    }

    // Coefficient that decides the canonical sign.
    const Rat& leading() const {
        return coeffs_.empty() ? constant_ : coeffs_.begin()->second;
    }

    friend bool operator==(const LinearForm& a, const LinearForm& b) {
        return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
    }

    // Deterministic total order (variable sequence, then coefficients, then constant).
    friend bool operator<(const LinearForm& a, const LinearForm& b) {
        auto ia = a.coeffs_.begin(), ib = b.coeffs_.begin();
        for (; ia != a.coeffs_.end() && ib != b.coeffs_.end(); ++ia, ++ib) {
            if (ia->first != ib->first) return ia->first < ib->first;
            if (ia->second != ib->second) return ia->second < ib->second;
        }
        if (ia != a.coeffs_.end()) return false;
        if (ib != b.coeffs_.end()) return true;
        return a.constant_ < b.constant_;
    }

  private:
    Rat constant_{0};
    std::map<Variable, Rat> coeffs_;
};

// Splits l == content * primitive with primitive as described above.
// Pre: l is not the zero form.
inline std::pair<Rat, LinearForm> canonical_split(const LinearForm& l) {
    if (l.is_zero()) throw ZeroFactorError("cannot canonicalize the zero form");
    Int den_lcm(1);
    Int num_gcd(0);
    auto feed = [&](const Rat& c) {
        if (c == 0) return;
        den_lcm = lcm(den_lcm, c.get_den());
    };
    feed(l.constant());
    for (const auto& [v, c] : l.coeffs()) feed(c);
    auto feed_num = [&](const Rat& c) {
        if (c == 0) return;
        Rat scaled = c * Rat(den_lcm);
        num_gcd = gcd(num_gcd, scaled.get_num());
    };
    feed_num(l.constant());
    for (const auto& [v, c] : l.coeffs()) feed_num(c);
    Rat content = Rat(num_gcd) / Rat(den_lcm);
    LinearForm primitive = l;
    primitive.scale(1 / content);
    if (primitive.leading() < 0) {
        primitive.negate();
        content = -content;
    }
    return {content, primitive};
}

}  // namespace hypergeom
