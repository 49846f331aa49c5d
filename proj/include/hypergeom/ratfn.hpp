#pragma once

#include <string>

#include "sparse_poly.hpp"

namespace hypergeom {

// Quotient of expanded polynomials.  Reduction strategy: strip content so the
// denominator is primitive with positive leading coefficient, then attempt one
// exact division; no multivariate gcd.  Sums of many terms should be built in
// factored form first (see LocalizationSum) so denominators stay small here.
class RatFn {
  public:
    RatFn() : num_(), den_(Rat(1)) {}
    explicit RatFn(const Rat& c) : num_(c), den_(Rat(1)) {}
    explicit RatFn(const SparsePoly& p) : num_(p), den_(Rat(1)) {}
    RatFn(SparsePoly num, SparsePoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DataError("rational function with zero denominator");
        normalize();
    }

    const SparsePoly& num() const { return num_; }
    const SparsePoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat constant_value() const {
        if (!is_constant()) throw DataError("rational function is not constant");
        return num_.constant_value() / den_.constant_value();
    }

    friend RatFn operator+(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFn operator-(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFn operator*(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFn operator/(const RatFn& a, const RatFn& b) {
        if (b.is_zero()) throw DataError("division by the zero rational function");
        return RatFn(a.num_ * b.den_, a.den_ * b.num_);
    }

    RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
    RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
    RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
    RatFn& operator/=(const RatFn& o) { return *this = *this / o; }

    RatFn operator-() const {
        RatFn r = *this;
        r.num_ = -r.num_;
        return r;
    }

    bool contains(const Variable& v) const { return num_.contains(v) || den_.contains(v); }

    friend bool operator==(const RatFn& a, const RatFn& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }

    std::string to_string() const {
        if (is_polynomial()) return num_.to_string();
        return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
    }

  private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = SparsePoly(Rat(1));
            return;
        }
        auto [nc, np] = num_.content_split();
        auto [dc, dp] = den_.content_split();
        num_ = np;
        num_.scale(nc / dc);
        den_ = dp;
        if (den_.is_constant()) {
            num_.scale(1 / den_.constant_value());
            den_ = SparsePoly(Rat(1));
            return;
        }
        if (auto q = num_.divided_exact(den_)) {
            num_ = *q;
            den_ = SparsePoly(Rat(1));
        }
    }

    SparsePoly num_, den_;
};

// Expands a factored expression into a single quotient of polynomials.
inline RatFn ratfn_of(const FactoredExpr& e) {
    SparsePoly num(e.scalar());
    SparsePoly den(Rat(1));
    for (const auto& [f, k] : e.factors()) {
        SparsePoly p = SparsePoly(f).pow(k > 0 ? k : -k);
        (k > 0 ? num : den) *= p;
    }
    return RatFn(std::move(num), std::move(den));
}

}  // namespace hypergeom
