#pragma once

#include <string>
#include <vector>

#include "expr_io.hpp"
#include "flag_geometry.hpp"

namespace hypergeom {

namespace detail {

// H_a - H_{a-1} with the H_0 = 0 convention, as a reusable building block;
// kind selects the generator family (H or kappa).
inline LinearForm step_form(VarKind kind, int a) {
    LinearForm l;
    auto var = [kind](int i) {
        return kind == VarKind::H ? Variable::H(i) : Variable::kappa(i);
    };
    if (a >= 1) l.add_term(var(a), Rat(1));
    if (a >= 2) l.add_term(var(a - 1), Rat(-1));
    return l;
}

// kappa_ab = (kappa_a - kappa_{a-1}) - (kappa_b - kappa_{b-1}); zero when a = b.
inline LinearForm pair_form(VarKind kind, int a, int b) {
    LinearForm l = step_form(kind, a);
    LinearForm mb = step_form(kind, b);
    mb.negate();
    l.add(mb);
    return l;
}

}  // namespace detail

// The Chern-polynomial generating classes: gamma on the linear sigma model in
// the H alphabet, omega = its pullback to the flag manifold in the y alphabet.
struct ChernData {
    int n;
    FactoredExpr gamma;
    FactoredExpr omega;
};

// tau pullback: H_a -> y_1 + ... + y_a.
inline std::map<Variable, LinearForm> tau_map(int n) {
    std::map<Variable, LinearForm> m;
    LinearForm acc;
    for (int a = 1; a <= n - 1; ++a) {
        acc.add_term(Variable::y(a), Rat(1));
        m.emplace(Variable::H(a), acc);
    }
    return m;
}

inline FactoredExpr tau_pullback(const FactoredExpr& e, int n) { return e.substitute(tau_map(n)); }

// j_r: kappa_a -> H_a + r_a alpha.
inline std::map<Variable, LinearForm> jr_map(const MultiDegree& r) {
    std::map<Variable, LinearForm> m;
    for (int a = 1; a <= r.length(); ++a) {
        LinearForm l(Variable::H(a));
        l.add_term(Variable::alpha(), Rat(r.entry(a)));
        m.emplace(Variable::kappa(a), l);
    }
    return m;
}

inline FactoredExpr restrict_jr(const FactoredExpr& e, const MultiDegree& r) {
    return e.substitute(jr_map(r));
}

// Builds gamma and omega and verifies the fixed-point oracle: at every
// permutation the restriction of omega is the product of tangent Chern roots
// x + u_{w(i)} - u_{w(j)} over i < j.
inline ChernData build_chern(int n) {
    check_rank(n);
    FactoredExpr gamma;
    for (int i = 1; i <= n; ++i)
        for (int a = 1; a <= n - 1; ++a) {
            LinearForm l(Variable::x());
            l.add(detail::step_form(VarKind::H, a));
            l.add_term(Variable::u(i), Rat(-1));
            gamma.multiply_form(l, 1);
        }
    for (int i = 1; i <= n - 2; ++i)
        for (int a = 1; a <= i; ++a)
            for (int b = 1; b <= i + 1; ++b) {
                LinearForm l(Variable::x());
                l.add(detail::pair_form(VarKind::H, a, b));
                gamma.multiply_form(l, 1);
            }
    for (int i = 1; i <= n - 1; ++i)
        for (int a = 1; a <= i; ++a)
            for (int b = 1; b <= i; ++b) {
                LinearForm l(Variable::x());
                l.add(detail::pair_form(VarKind::H, a, b));
                gamma.multiply_form(l, -1);
            }

    ChernData data{n, gamma, tau_pullback(gamma, n)};

    for (const Perm& w : fixed_points(n)) {
        FactoredExpr expected;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                LinearForm l(Variable::x());
                l.add_term(Variable::u(w(i)), Rat(1));
                l.add_term(Variable::u(w(j)), Rat(-1));
                expected.multiply_form(l, 1);
            }
        if (!equals_exact(restrict_at(data.omega, w), expected))
            throw DataError("chern restriction oracle failed at " + w.str());
    }
    return data;
}

// The three-part product attached to a degree d, each part a ratio of products
// of affine factors; q is their fully cancelled product.
struct EulerDatum {
    int n;
    MultiDegree d;
    FactoredExpr q1, q2, q3, q;
};

inline EulerDatum build_Q(int n, const MultiDegree& d) {
    check_rank(n);
    if (d.length() != n - 1) throw DataError("degree vector length must be n-1");
    if (!d.is_effective()) throw DataError("degree must be effective");

    FactoredExpr q1;
    for (int i = 1; i <= n; ++i)
        for (int a = 1; a <= n - 1; ++a) {
            long inc = d.entry(a) - d.entry(a - 1);
            LinearForm base(Variable::x());
            base.add(detail::step_form(VarKind::kappa, a));
            base.add_term(Variable::u(i), Rat(-1));
            if (inc >= 0) {
                for (long k = 0; k <= inc; ++k) {
                    LinearForm l = base;
                    l.add_term(Variable::alpha(), Rat(-k));
                    q1.multiply_form(l, 1);
                }
            } else {
                for (long k = 1; k <= -inc - 1; ++k) {
                    LinearForm l = base;
                    l.add_term(Variable::alpha(), Rat(k));
                    q1.multiply_form(l, -1);
                }
            }
        }

    FactoredExpr q2;
    for (int i = 1; i <= n - 1; ++i)
        for (int a = 1; a <= i; ++a)
            for (int b = 1; b <= i; ++b) {
                long dab = d_ab(d, a, b);
                LinearForm base(Variable::x());
                base.add(detail::pair_form(VarKind::kappa, a, b));
                if (dab < 0) {
                    for (long k = 1; k <= -dab - 1; ++k) {
                        LinearForm l = base;
                        l.add_term(Variable::alpha(), Rat(k));
                        q2.multiply_form(l, 1);
                    }
                } else {
                    for (long k = 0; k <= dab; ++k) {
                        LinearForm l = base;
                        l.add_term(Variable::alpha(), Rat(-k));
                        q2.multiply_form(l, -1);
                    }
                }
            }

    FactoredExpr q3;
    for (int i = 1; i <= n - 2; ++i)
        for (int a = 1; a <= i; ++a)
            for (int b = 1; b <= i + 1; ++b) {
                long dab = d_ab(d, a, b);
                LinearForm base(Variable::x());
                base.add(detail::pair_form(VarKind::kappa, a, b));
                if (dab >= 0) {
                    for (long k = 0; k <= dab; ++k) {
                        LinearForm l = base;
                        l.add_term(Variable::alpha(), Rat(-k));
                        q3.multiply_form(l, 1);
                    }
                } else {
                    for (long k = 1; k <= -dab - 1; ++k) {
                        LinearForm l = base;
                        l.add_term(Variable::alpha(), Rat(k));
                        q3.multiply_form(l, -1);
                    }
                }
            }

    return EulerDatum{n, d, q1, q2, q3, q1 * q2 * q3};
}

// After cancellation the q2*q3 product must involve, beyond x and alpha, only
// the pair forms kappa_ia with a <= i.
inline bool q2q3_simplified_support(const EulerDatum& e) {
    FactoredExpr prod = e.q2 * e.q3;
    for (const auto& [f, exp] : prod.factors()) {
        LinearForm kappa_part;
        for (const auto& [v, c] : f.coeffs())
            if (v.kind == VarKind::kappa) kappa_part.add_term(v, c);
        bool matched = kappa_part.is_zero();
        for (int i = 1; i <= e.n - 1 && !matched; ++i)
            for (int a = 1; a <= i && !matched; ++a)
                matched = kappa_part == detail::pair_form(VarKind::kappa, i, a);
        if (!matched) return false;
    }
    return true;
}

struct EulerCase {
    MultiDegree r;
    bool pass = false;
    std::string mismatch;  // rendered L/R ratio when the identity fails
};

// One case of the defining identity: gamma * j_r(Q_d) = bar(j_0(Q_r)) * j_0(Q_{d-r}).
inline EulerCase verify_euler_case(const ChernData& chern, const MultiDegree& d, const MultiDegree& r) {
    EulerDatum qd = build_Q(chern.n, d);
    EulerDatum qr = build_Q(chern.n, r);
    EulerDatum qdr = build_Q(chern.n, d - r);
    FactoredExpr lhs = chern.gamma * restrict_jr(qd.q, r);
    FactoredExpr rhs = restrict_jr(qr.q, MultiDegree::zero(chern.n - 1)).bar() *
                       restrict_jr(qdr.q, MultiDegree::zero(chern.n - 1));
    EulerCase result{r, equals_exact(lhs, rhs), {}};
    if (!result.pass) result.mismatch = render_expr(lhs * rhs.inverse());
    return result;
}

struct EulerDataReport {
    int n = 0;
    MultiDegree d = MultiDegree::zero(1);
    std::vector<EulerCase> cases;
    bool pass = true;
};

inline EulerDataReport verify_euler_data(int n, const MultiDegree& d) {
    ChernData chern = build_chern(n);
    EulerDataReport report;
    report.n = n;
    report.d = d;
    for (const MultiDegree& r : degree_interval(d)) {
        report.cases.push_back(verify_euler_case(chern, d, r));
        if (!report.cases.back().pass) report.pass = false;
    }
    return report;
}

struct DegreeAuditRow {
    MultiDegree d = MultiDegree::zero(1);
    long exact_deg = 0;      // deg_alpha of tau(j_0(Q_d)) after cancellation
    long stated_bound = 0;   // n d_{n-1} - sum (d_ia + 1), reported for reference
    long c1 = 0;             // <c_1, d>
    long slack = 0;          // c1 - exact_deg
    bool bound_holds = false;
    bool slack_ok = false;
};

inline DegreeAuditRow degree_audit_row(int n, const MultiDegree& d) {
    EulerDatum qd = build_Q(n, d);
    FactoredExpr pulled = tau_pullback(restrict_jr(qd.q, MultiDegree::zero(n - 1)), n);
    DegreeAuditRow row;
    row.d = d;
    row.exact_deg = pulled.alpha_degree();
    long penalty = 0;
    for (int i = 1; i <= n - 1; ++i)
        for (int a = 1; a <= i; ++a) penalty += d_ab(d, i, a) + 1;
    row.stated_bound = n * d.entry(n - 1) - penalty;
    row.c1 = c1_pairing(d);
    row.slack = row.c1 - row.exact_deg;
    row.bound_holds = row.exact_deg <= row.stated_bound;
    row.slack_ok = row.slack >= 0;
    return row;
}

// e_G(Y_r / W_d) for explicit per-factor weight lists: product over the k-range
// 0..d_a with k = r_a removed, of H_a - u_{a,i} - (k - r_a) alpha.
inline FactoredExpr euler_class_Yr_Wd(const std::vector<std::vector<LinearForm>>& weights,
                                      const MultiDegree& d, const MultiDegree& r) {
    if (static_cast<int>(weights.size()) != d.length() || r.length() != d.length())
        throw DataError("weight list length must match the degree length");
    if (!degree_leq(r, d) || !r.is_effective()) throw DataError("need 0 <= r <= d");
    FactoredExpr e;
    for (int a = 1; a <= d.length(); ++a)
        for (const LinearForm& w : weights[a - 1])
            for (long k = 0; k <= d.entry(a); ++k) {
                if (k == r.entry(a)) continue;
                LinearForm l(Variable::H(a));
                LinearForm neg = w;
                neg.negate();
                l.add(neg);
                l.add_term(Variable::alpha(), Rat(-(k - r.entry(a))));
                e.multiply_form(l, 1);
            }
    return e;
}

}  // namespace hypergeom
