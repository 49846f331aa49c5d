#pragma once

#include <map>
#include <string>
#include <utility>

#include "linear_form.hpp"

namespace hypergeom {

// Product of integer powers of primitive linear forms times a nonzero rational
// scalar.  The representation is canonical: equal factor maps and equal scalars
// exactly when the rational functions are equal.  A form and its inverse can
// never coexist (exponents merge; zero exponents are erased), so factored
// cancellation is automatic.
class FactoredExpr {
  public:
    FactoredExpr() : scalar_(1) {}

    static FactoredExpr one() { return FactoredExpr(); }

    static FactoredExpr from_scalar(const Rat& s) {
        if (s == 0) throw ZeroFactorError("factored expression cannot be zero");
        FactoredExpr e;
        e.scalar_ = s;
        return e;
    }

    // (form)^exp with canonicalization; content^exp migrates into the scalar.
    static FactoredExpr from_form(const LinearForm& form, long exp = 1) {
        FactoredExpr e;
        e.multiply_form(form, exp);
        return e;
    }

    const Rat& scalar() const { return scalar_; }
    const std::map<LinearForm, long>& factors() const { return factors_; }
    bool is_scalar() const { return factors_.empty(); }

    void multiply_scalar(const Rat& s) {
        if (s == 0) throw ZeroFactorError("factored expression cannot be zero");
        scalar_ *= s;
    }

    void multiply_form(const LinearForm& form, long exp) {
        if (exp == 0) return;
        if (form.is_zero())
            throw ZeroFactorError("zero factor" + std::string(exp < 0 ? " in denominator" : ""));
        auto [content, primitive] = canonical_split(form);
        scalar_ *= rat_pow(content, exp);
        if (primitive.is_constant()) return;  // content normalization absorbed it all
        insert(primitive, exp);
    }

    FactoredExpr& operator*=(const FactoredExpr& o) {
        scalar_ *= o.scalar_;
        for (const auto& [f, e] : o.factors_) insert(f, e);
        return *this;
    }

    friend FactoredExpr operator*(FactoredExpr a, const FactoredExpr& b) { return a *= b; }

    FactoredExpr pow(long e) const {
        FactoredExpr r;
        if (e == 0) return r;
        r.scalar_ = rat_pow(scalar_, e);
        for (const auto& [f, k] : factors_) r.factors_.emplace(f, k * e);
        return r;
    }

    FactoredExpr inverse() const { return pow(-1); }

    friend FactoredExpr operator/(FactoredExpr a, const FactoredExpr& b) {
        return a *= b.inverse();
    }

    // alpha -> -alpha, factor by factor.
    FactoredExpr bar() const {
        FactoredExpr r = from_scalar(scalar_);
        for (const auto& [f, e] : factors_) {
            Rat ca = f.coeff(Variable::alpha());
            if (ca == 0) {
                r.insert(f, e);
            } else {
                LinearForm g = f;
                g.add_term(Variable::alpha(), -2 * ca);
                r.multiply_form(g, e);
            }
        }
        return r;
    }

    // Replaces each mapped variable by an affine form; unmapped variables stay.
    // Affine substituted into affine is affine, so no non-affine escape exists.
    // Throws ZeroFactorError when a factor collapses to the zero form.
    FactoredExpr substitute(const std::map<Variable, LinearForm>& target) const {
        FactoredExpr r = from_scalar(scalar_);
        for (const auto& [f, e] : factors_) {
            LinearForm acc(f.constant());
            for (const auto& [v, c] : f.coeffs()) {
                auto it = target.find(v);
                if (it == target.end())
                    acc.add_term(v, c);
                else
                    acc.add(it->second, c);
            }
            if (acc.is_zero())
                throw ZeroFactorError("substitution sent a factor to zero");
            r.multiply_form(acc, e);
        }
        return r;
    }

    // Exact degree in alpha of the rational function: each factor containing
    // alpha is degree one in alpha, so the signed count of such factors.
    long alpha_degree() const {
        long deg = 0;
        for (const auto& [f, e] : factors_)
            if (f.contains(Variable::alpha())) deg += e;
        return deg;
    }

    bool contains(const Variable& v) const {
        for (const auto& [f, e] : factors_)
            if (f.contains(v)) return true;
        return false;
    }

    long numerator_factor_count() const {
        long n = 0;
        for (const auto& [f, e] : factors_)
            if (e > 0) n += e;
        return n;
    }

    long denominator_factor_count() const {
        long n = 0;
        for (const auto& [f, e] : factors_)
            if (e < 0) n -= e;
        return n;
    }

    friend bool operator==(const FactoredExpr& a, const FactoredExpr& b) {
        return a.scalar_ == b.scalar_ && a.factors_ == b.factors_;
    }

  private:
    void insert(const LinearForm& primitive, long exp) {
        auto [it, fresh] = factors_.emplace(primitive, exp);
        if (!fresh) {
            it->second += exp;
            if (it->second == 0) factors_.erase(it);
        }
    }

    Rat scalar_;
    std::map<LinearForm, long> factors_;
};

// Canonical-representation comparison; for factored inputs this is exact
// rational-function equality.
inline bool equals_exact(const FactoredExpr& a, const FactoredExpr& b) { return a == b; }

}  // namespace hypergeom
