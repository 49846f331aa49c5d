#pragma once

#include <string>
#include <vector>

#include "flag_geometry.hpp"
#include "sparse_poly.hpp"

namespace hypergeom {

// Equivariant class in the fixed-point model: a tuple of restrictions indexed
// by S_n.  Each restriction is a formal sum of factored expressions (an empty
// sum is zero), which keeps products exactly cancellable while still allowing
// additive perturbations and series coefficients.
class GkmClass {
  public:
    explicit GkmClass(int n) : n_(n) { check_rank(n); }

    static GkmClass zero(int n) {
        GkmClass c(n);
        for (const Perm& w : fixed_points(n)) c.restrictions_.emplace(w, std::vector<FactoredExpr>{});
        return c;
    }

    static GkmClass constant(int n, const FactoredExpr& e) {
        GkmClass c = zero(n);
        for (auto& [w, terms] : c.restrictions_) terms.push_back(e);
        return c;
    }

    int n() const { return n_; }

    void set(const Perm& w, std::vector<FactoredExpr> terms) {
        if (w.n() != n_) throw DataError("fixed point has wrong rank");
        restrictions_[w] = std::move(terms);
    }

    void add_term(const Perm& w, const FactoredExpr& e) {
        if (w.n() != n_) throw DataError("fixed point has wrong rank");
        restrictions_[w].push_back(e);
    }

    bool is_complete() const {
        std::size_t expected = 1;
        for (int i = 2; i <= n_; ++i) expected *= i;
        return restrictions_.size() == expected;
    }

    const std::vector<FactoredExpr>& at(const Perm& w) const {
        auto it = restrictions_.find(w);
        if (it == restrictions_.end()) throw DataError("missing fixed point " + w.str());
        return it->second;
    }

    const std::map<Perm, std::vector<FactoredExpr>>& restrictions() const { return restrictions_; }

    GkmClass multiplied(const GkmClass& o) const {
        if (o.n_ != n_) throw DataError("rank mismatch");
        GkmClass r(n_);
        for (const auto& [w, terms] : restrictions_) {
            std::vector<FactoredExpr> prod;
            for (const FactoredExpr& a : terms)
                for (const FactoredExpr& b : o.at(w)) prod.push_back(a * b);
            r.restrictions_.emplace(w, std::move(prod));
        }
        return r;
    }

    GkmClass scaled(const FactoredExpr& e) const {
        GkmClass r(n_);
        for (const auto& [w, terms] : restrictions_) {
            std::vector<FactoredExpr> scaled;
            for (const FactoredExpr& a : terms) scaled.push_back(a * e);
            r.restrictions_.emplace(w, std::move(scaled));
        }
        return r;
    }

    GkmClass barred() const {
        GkmClass r(n_);
        for (const auto& [w, terms] : restrictions_) {
            std::vector<FactoredExpr> b;
            for (const FactoredExpr& a : terms) b.push_back(a.bar());
            r.restrictions_.emplace(w, std::move(b));
        }
        return r;
    }

  private:
    int n_;
    std::map<Perm, std::vector<FactoredExpr>> restrictions_;
};

inline SparsePoly expand_sum(const std::vector<FactoredExpr>& terms) {
    SparsePoly p;
    for (const FactoredExpr& t : terms) p += expand_product(t);
    return p;
}

struct GkmCheckReport {
    bool pass = true;
    std::vector<std::string> violating_balloons;
};

// Edge condition: restriction differences divisible by the tangent weight.
// Pre: restrictions are polynomial (no denominator factors).
inline GkmCheckReport gkm_check(const GkmClass& c) {
    GkmCheckReport report;
    for (const Balloon& b : balloons(c.n())) {
        SparsePoly diff = expand_sum(c.at(b.p)) - expand_sum(c.at(b.q));
        if (diff.is_zero()) continue;
        if (!diff.divided_exact(SparsePoly(b.tangent_weight_at_p))) {
            report.pass = false;
            report.violating_balloons.push_back(b.str());
        }
    }
    return report;
}

// Fixed-point sum brought over one common factored denominator and reduced by
// exact division, one linear factor at a time.
struct LocalizationSum {
    SparsePoly numerator;
    FactoredExpr residual_denominator;  // empty product when fully reduced

    bool is_polynomial() const {
        return residual_denominator.factors().empty() && residual_denominator.scalar() == 1;
    }
};

inline LocalizationSum integrate_localization(const GkmClass& c) {
    if (!c.is_complete()) throw DataError("class is not defined on all fixed points");
    std::vector<FactoredExpr> contributions;
    for (const auto& [w, terms] : c.restrictions()) {
        FactoredExpr inv_euler = tangent_euler_class(w).inverse();
        for (const FactoredExpr& t : terms) contributions.push_back(t * inv_euler);
    }
    std::map<LinearForm, long> needed;
    for (const FactoredExpr& t : contributions)
        for (const auto& [f, e] : t.factors())
            if (e < 0) {
                long& m = needed[f];
                if (-e > m) m = -e;
            }
    FactoredExpr den;
    for (const auto& [f, m] : needed) den.multiply_form(f, m);
    SparsePoly num;
    for (const FactoredExpr& t : contributions) num += expand_product(t * den);

    LocalizationSum out;
    if (num.is_zero()) {
        out.numerator = num;
        return out;
    }
    // The common denominator carries only primitive forms (scalar 1), so the
    // value is exactly num / residual after peeling off the factors that divide.
    FactoredExpr residual;
    for (const auto& [f, m] : den.factors()) {
        long left = m;
        SparsePoly fp{f};
        while (left > 0) {
            auto q = num.divided_exact(fp);
            if (!q) break;
            num = *q;
            --left;
        }
        if (left > 0) residual.multiply_form(f, left);
    }
    out.numerator = num;
    out.residual_denominator = residual;
    return out;
}

}  // namespace hypergeom
