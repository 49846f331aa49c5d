#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ratfn.hpp"

namespace hypergeom {

// Laurent series in α, descending from a finite top exponent.  Coefficients
// are rational functions of the remaining variables.  A value either is exact
// (finite, nothing discarded) or carries a floor: terms below the floor have
// been discarded and must not be read.  Operations only lower precision.
class LaurentInAlpha {
  public:
    LaurentInAlpha() = default;  // exact zero

    static LaurentInAlpha term(int k, RatFn c) {
        LaurentInAlpha r;
        r.add_term(k, std::move(c));
        return r;
    }

    // Zero above `f`, unknown below: the floor is set even though no term was
    // explicitly discarded yet.
    static LaurentInAlpha truncated_zero(int f) {
        LaurentInAlpha r;
        r.floor_ = f;
        return r;
    }

    const std::map<int, RatFn>& terms() const { return coeffs_; }
    std::optional<int> floor() const { return floor_; }
    bool is_exact() const { return !floor_.has_value(); }
    bool is_zero_above_floor() const { return coeffs_.empty(); }

    RatFn coefficient(int k) const {
        if (floor_ && k < *floor_) throw DataError("coefficient read below the truncation floor");
        auto it = coeffs_.find(k);
        return it == coeffs_.end() ? RatFn() : it->second;
    }

    // Largest exponent that could carry a term.
    int top_bound() const {
        if (!coeffs_.empty()) return coeffs_.rbegin()->first;
        if (floor_) return *floor_ - 1;
        return std::numeric_limits<int>::min();  // exact zero; callers special-case
    }

    std::optional<int> top_degree() const {
        if (coeffs_.empty()) return std::nullopt;
        return coeffs_.rbegin()->first;
    }

    void add_term(int k, const RatFn& c) {
        if (c.is_zero()) return;
        if (floor_ && k < *floor_) return;
        auto [it, fresh] = coeffs_.emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    friend LaurentInAlpha operator+(const LaurentInAlpha& a, const LaurentInAlpha& b) {
        LaurentInAlpha r;
        if (a.floor_ || b.floor_) {
            int f = std::numeric_limits<int>::min();
            if (a.floor_) f = std::max(f, *a.floor_);
            if (b.floor_) f = std::max(f, *b.floor_);
            r.floor_ = f;
        }
        for (const auto& [k, c] : a.coeffs_) r.add_term(k, c);
        for (const auto& [k, c] : b.coeffs_) r.add_term(k, c);
        return r;
    }

    friend LaurentInAlpha operator-(const LaurentInAlpha& a, const LaurentInAlpha& b) {
        LaurentInAlpha nb = b;
        for (auto& [k, c] : nb.coeffs_) c = -c;
        return a + nb;
    }

    friend LaurentInAlpha operator*(const LaurentInAlpha& a, const LaurentInAlpha& b) {
        if (a.is_exact() && a.coeffs_.empty()) return LaurentInAlpha();
        if (b.is_exact() && b.coeffs_.empty()) return LaurentInAlpha();
        LaurentInAlpha r;
        if (a.floor_ || b.floor_) {
            // A product term at exponent k draws on factors below a floor once k
            // drops under floor+other's top; everything above that is complete.
            int f = std::numeric_limits<int>::min();
            if (a.floor_) f = std::max(f, *a.floor_ + b.top_bound());
            if (b.floor_) f = std::max(f, *b.floor_ + a.top_bound());
            r.floor_ = f;
        }
        for (const auto& [ka, ca] : a.coeffs_)
            for (const auto& [kb, cb] : b.coeffs_) r.add_term(ka + kb, ca * cb);
        return r;
    }

    LaurentInAlpha& operator+=(const LaurentInAlpha& o) { return *this = *this + o; }
    LaurentInAlpha& operator-=(const LaurentInAlpha& o) { return *this = *this - o; }
    LaurentInAlpha& operator*=(const LaurentInAlpha& o) { return *this = *this * o; }

    void scale(const RatFn& s) {
        if (s.is_zero()) {
            coeffs_.clear();
            return;
        }
        for (auto& [k, c] : coeffs_) c *= s;
    }

    void shift(int k) {
        std::map<int, RatFn> moved;
        for (auto& [e, c] : coeffs_) moved.emplace(e + k, std::move(c));
        coeffs_ = std::move(moved);
        if (floor_) *floor_ += k;
    }

    // α ↦ −α: flips the sign of every odd-exponent coefficient.
    LaurentInAlpha barred() const {
        LaurentInAlpha r = *this;
        for (auto& [k, c] : r.coeffs_)
            if (k % 2 != 0) c = -c;
        return r;
    }

    void truncate_to(int f) {
        if (floor_ && *floor_ >= f) return;
        bool dropped = false;
        while (!coeffs_.empty() && coeffs_.begin()->first < f) {
            coeffs_.erase(coeffs_.begin());
            dropped = true;
        }
        if (floor_ || dropped) floor_ = f;
    }

    friend bool operator==(const LaurentInAlpha& a, const LaurentInAlpha& b) {
        return a.floor_ == b.floor_ && a.coeffs_ == b.coeffs_;
    }

    std::string to_string() const {
        std::string out;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            if (!out.empty()) out += " + ";
            out += "[" + it->second.to_string() + "]*a^" + std::to_string(it->first);
        }
        if (out.empty()) out = "0";
        if (floor_) out += " (floor " + std::to_string(*floor_) + ")";
        return out;
    }

  private:
    std::optional<int> floor_;
    std::map<int, RatFn> coeffs_;
};

namespace detail {

// (cα + L)^k expanded in descending α, down to exponent `low` when k < 0.
inline LaurentInAlpha alpha_factor_series(const Rat& c, const LinearForm& rest, long k, int low) {
    LaurentInAlpha s;
    SparsePoly l(rest);
    if (k >= 0) {
        SparsePoly lp(Rat(1));
        for (long j = k; j >= 0; --j) {  // α-exponent j, L-power k−j built up incrementally
            s.add_term(static_cast<int>(j), RatFn(lp) * RatFn(rat_binomial(k, k - j) * rat_pow(c, j)));
            lp *= l;
        }
        return s;
    }
    // (cα+L)^k = Σ_{s≥0} C(k,s) c^{k−s} L^s α^{k−s}; truncate once k−s < low.
    s = LaurentInAlpha::truncated_zero(low);
    SparsePoly lp(Rat(1));
    for (long i = 0; k - i >= low; ++i) {
        s.add_term(static_cast<int>(k - i), RatFn(lp) * RatFn(rat_binomial(k, i) * rat_pow(c, k - i)));
        lp *= l;
    }
    return s;
}

}  // namespace detail

// Descending Laurent expansion of a factored expression, complete down to
// `low`.  Exact (no floor) when no α-carrying factor sits in the denominator.
inline LaurentInAlpha expand_alpha(const FactoredExpr& e, int low) {
    long shift = 0;
    Rat shift_scale(1);
    RatFn prefactor{Rat(e.scalar())};
    struct Mixed {
        Rat c;
        LinearForm rest;
        long k;
    };
    std::vector<Mixed> mixed;
    const Variable al = Variable::alpha();
    for (const auto& [f, k] : e.factors()) {
        Rat c = f.coeff(al);
        if (c == 0) {
            SparsePoly p{f};
            if (k >= 0)
                prefactor *= RatFn(p.pow(k));
            else
                prefactor /= RatFn(p.pow(-k));
        } else {
            LinearForm rest = f;
            rest.add_term(al, -c);
            if (rest.is_zero()) {
                shift += k;
                shift_scale *= rat_pow(c, k);
            } else {
                mixed.push_back({c, rest, k});
            }
        }
    }
    long top = 0;
    for (const auto& m : mixed) top += m.k;
    const long part_low = static_cast<long>(low) - shift;
    LaurentInAlpha acc = LaurentInAlpha::term(0, RatFn(Rat(1)));
    for (const auto& m : mixed) {
        // The rest of the product tops out at α^(top − m.k), so this factor is
        // needed down to part_low − (top − m.k).
        long factor_low = part_low - (top - m.k);
        if (factor_low < std::numeric_limits<int>::min() / 2) factor_low = std::numeric_limits<int>::min() / 2;
        acc *= detail::alpha_factor_series(m.c, m.rest, m.k, static_cast<int>(factor_low));
    }
    acc.scale(prefactor * RatFn(shift_scale));
    acc.shift(static_cast<int>(shift));
    acc.truncate_to(low);
    return acc;
}

}  // namespace hypergeom
