#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "euler_data.hpp"
#include "gkm.hpp"
#include "ratfn.hpp"

namespace hypergeom {

// Restriction of the a-th accumulated tautological class: u_{w(1)} + ... + u_{w(a)}.
inline LinearForm sigma_restricted(int a, const Perm& w) {
    LinearForm l;
    for (int c = 1; c <= a; ++c) l.add_term(Variable::u(w(c)), Rat(1));
    return l;
}

// One expression per fixed point, each the restriction of the same global class.
inline GkmClass restricted_class(int n, const FactoredExpr& e) {
    GkmClass c = GkmClass::zero(n);
    for (const Perm& w : fixed_points(n)) c.add_term(w, restrict_at(e, w));
    return c;
}

struct IngestedSeries {
    int n = 0;
    std::map<MultiDegree, GkmClass> coeff;
    std::map<MultiDegree, std::string> provenance;
};

namespace detail {

// Edge condition for rational restriction tuples: the difference across a
// balloon must be divisible by the tangent weight after full reduction, and
// must not keep the weight in its denominator.
inline bool rational_edge_ok(const std::vector<FactoredExpr>& p, const std::vector<FactoredExpr>& q,
                             const LinearForm& weight) {
    RatFn diff;
    for (const FactoredExpr& t : p) diff += ratfn_of(t);
    for (const FactoredExpr& t : q) diff -= ratfn_of(t);
    if (diff.is_zero()) return true;
    SparsePoly w(weight);
    SparsePoly num = diff.num();
    SparsePoly den = diff.den();
    while (true) {
        auto nq = num.divided_exact(w);
        auto dq = den.divided_exact(w);
        if (nq && dq) {
            num = *nq;
            den = *dq;
            continue;
        }
        if (dq) return false;
        return static_cast<bool>(nq);
    }
}

inline FactoredExpr parse_restriction(const nlohmann::json& entry, const Perm& w,
                                      const std::string& where) {
    const auto& restrictions = entry.at("restrictions");
    if (!restrictions.contains(w.str()))
        throw DataError(where + ": missing fixed point " + w.str());
    const auto& value = restrictions.at(w.str());
    if (!value.is_string()) throw DataError(where + ": restriction " + w.str() + " must be a string");
    try {
        return parse_expr(value.get<std::string>());
    } catch (const ParseError& err) {
        throw DataError(where + ": restriction " + w.str() + ": " + err.what());
    }
}

}  // namespace detail

inline IngestedSeries ingest_I(const nlohmann::json& doc) {
    if (!doc.contains("n") || !doc.at("n").is_number_integer())
        throw DataError("input needs an integer field n");
    IngestedSeries out;
    out.n = doc.at("n").get<int>();
    check_rank(out.n);
    if (!doc.contains("entries") || !doc.at("entries").is_array())
        throw DataError("input needs an entries array");

    std::vector<Perm> points = fixed_points(out.n);
    std::vector<Balloon> edges = balloons(out.n);
    size_t index = 0;
    for (const auto& entry : doc.at("entries")) {
        std::string where = "entry " + std::to_string(index++);
        if (!entry.contains("d") || !entry.at("d").is_array())
            throw DataError(where + ": missing degree array d");
        std::vector<long> dv;
        for (const auto& item : entry.at("d")) {
            if (!item.is_number_integer()) throw DataError(where + ": degree entries must be integers");
            dv.push_back(item.get<long>());
        }
        if (static_cast<int>(dv.size()) != out.n - 1)
            throw DataError(where + ": degree length must be n-1");
        MultiDegree d(dv);
        if (!d.is_effective()) throw DataError(where + ": degree must be effective");
        where += " (d=" + d.str() + ")";
        if (out.coeff.count(d)) throw DataError(where + ": duplicate degree");
        if (!entry.contains("provenance") || !entry.at("provenance").is_string() ||
            entry.at("provenance").get<std::string>().empty())
            throw DataError(where + ": provenance string is mandatory");
        if (!entry.contains("restrictions") || !entry.at("restrictions").is_object())
            throw DataError(where + ": missing restrictions object");
        for (const auto& [key, unused] : entry.at("restrictions").items()) {
            try {
                if (Perm::parse(key).n() != out.n) throw DataError("wrong rank");
            } catch (const DataError&) {
                throw DataError(where + ": unknown fixed point key " + key);
            }
        }

        GkmClass cls = GkmClass::zero(out.n);
        long bound = std::min<long>(-2, -c1_pairing(d));
        for (const Perm& w : points) {
            FactoredExpr e = detail::parse_restriction(entry, w, where);
            if (d.is_zero()) {
                if (!equals_exact(e, FactoredExpr::one()))
                    throw DataError(where + ": the degree-zero coefficient must be the constant 1");
            } else if (e.alpha_degree() > bound) {
                throw DataError(where + ": restriction " + w.str() + " has alpha degree " +
                                std::to_string(e.alpha_degree()) + ", above the bound " +
                                std::to_string(bound));
            }
            cls.set(w, {e});
        }

        if (entry.value("gkm_checked", false)) {
            for (const Balloon& bl : edges)
                if (!detail::rational_edge_ok(cls.at(bl.p), cls.at(bl.q), bl.tangent_weight_at_p))
                    throw DataError(where + ": edge condition fails on balloon " + bl.str());
        }

        out.provenance.emplace(d, entry.at("provenance").get<std::string>());
        out.coeff.emplace(d, std::move(cls));
    }
    return out;
}

inline IngestedSeries ingest_I_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& err) {
        throw DataError(path + ": " + err.what());
    }
    return ingest_I(doc);
}

struct SeriesFamily {
    int n = 0;
    std::map<MultiDegree, GkmClass> coeff;
};

// B_d = (pullback of the degree-d datum at r = 0) * I_d, pointwise per fixed point.
inline SeriesFamily assemble_B(int n, const IngestedSeries& I, const MultiDegree& cutoff) {
    if (I.n != n) throw DataError("ingested data has rank " + std::to_string(I.n));
    SeriesFamily B;
    B.n = n;
    for (const MultiDegree& d : degree_interval(cutoff)) {
        auto it = I.coeff.find(d);
        if (it == I.coeff.end()) throw DataError("no ingested coefficient for degree " + d.str());
        FactoredExpr pulled = tau_pullback(restrict_jr(build_Q(n, d).q, MultiDegree::zero(n - 1)), n);
        GkmClass bd = GkmClass::zero(n);
        for (const Perm& w : fixed_points(n)) {
            FactoredExpr base = restrict_at(pulled, w);
            for (const FactoredExpr& t : it->second.at(w)) bd.add_term(w, base * t);
        }
        B.coeff.emplace(d, std::move(bd));
    }
    return B;
}

struct ZetaCaseResult {
    std::vector<long> monomial;
    bool pass = false;
    bool alpha_pole = false;
    std::string residual;
};

struct EulerSeriesReport {
    int n = 0;
    MultiDegree d = MultiDegree::zero(1);
    int zeta_order = 0;
    std::vector<ZetaCaseResult> cases;
    bool pass = true;
};

namespace detail {

inline std::vector<std::vector<long>> zeta_monomials(int len, int order) {
    std::vector<std::vector<long>> out;
    std::vector<long> m(len, 0);
    while (true) {
        long total = 0;
        for (long v : m) total += v;
        if (total <= order) out.push_back(m);
        int pos = 0;
        while (pos < len) {
            if (++m[pos] > order) {
                m[pos] = 0;
                ++pos;
            } else {
                break;
            }
        }
        if (pos == len) break;
    }
    return out;
}

}  // namespace detail

// The quadratic integrality condition: for every zeta-monomial up to the given
// order, the localization sum over 0 <= r <= d of
//   Omega^{-1} * bar(B_r) * B_{d-r} * prod_a (sigma_a + r_a alpha)^{m_a} / m_a!
// must reduce to a polynomial (denominator 1, no alpha poles).
inline EulerSeriesReport euler_series_check(const SeriesFamily& B, const ChernData& chern,
                                            const MultiDegree& d, int zeta_order) {
    if (B.n != chern.n) throw DataError("series family and chern data disagree on rank");
    int n = B.n;
    EulerSeriesReport report;
    report.n = n;
    report.d = d;
    report.zeta_order = zeta_order;

    std::vector<Perm> points = fixed_points(n);
    std::map<Perm, FactoredExpr> omega_inv;
    for (const Perm& w : points) omega_inv.emplace(w, restrict_at(chern.omega, w).inverse());

    for (const std::vector<long>& m : detail::zeta_monomials(n - 1, zeta_order)) {
        Rat factorial_scale(1);
        for (long v : m) factorial_scale /= rat_factorial(v);
        GkmClass acc = GkmClass::zero(n);
        for (const MultiDegree& r : degree_interval(d)) {
            auto br = B.coeff.find(r);
            auto bdr = B.coeff.find(d - r);
            if (br == B.coeff.end() || bdr == B.coeff.end())
                throw DataError("series family does not cover degree " + d.str());
            for (const Perm& w : points) {
                FactoredExpr weight = FactoredExpr::from_scalar(factorial_scale);
                for (int a = 1; a <= n - 1; ++a) {
                    if (m[a - 1] == 0) continue;
                    LinearForm l = sigma_restricted(a, w);
                    l.add_term(Variable::alpha(), Rat(r.entry(a)));
                    weight.multiply_form(l, m[a - 1]);
                }
                weight = weight * omega_inv.at(w);
                for (const FactoredExpr& t1 : br->second.at(w))
                    for (const FactoredExpr& t2 : bdr->second.at(w))
                        acc.add_term(w, weight * t1.bar() * t2);
            }
        }
        LocalizationSum sum = integrate_localization(acc);
        ZetaCaseResult result;
        result.monomial = m;
        result.pass = sum.is_polynomial();
        if (!result.pass) {
            result.residual = render_expr(sum.residual_denominator);
            for (const auto& [f, k] : sum.residual_denominator.factors())
                if (f.contains(Variable::alpha())) result.alpha_pole = true;
            report.pass = false;
        }
        report.cases.push_back(std::move(result));
    }
    return report;
}

}  // namespace hypergeom
