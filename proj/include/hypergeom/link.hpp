#pragma once

#include <string>
#include <vector>

#include "euler_data.hpp"

namespace hypergeom {

// One line summand of the tangent bundle along a balloon: its first Chern
// class restricted to the south pole and its degree on the connecting line.
struct LineSummand {
    int sign;  // +1 for a genuine summand, -1 for a correction term
    LinearForm c1_at_p;
    long line_degree;
};

inline std::vector<LineSummand> tangent_decomposition(const Balloon& bl, int n) {
    check_rank(n);
    const Perm& w = bl.p;
    std::vector<LineSummand> out;
    auto diff = [](int a, int b) {
        LinearForm l;
        l.add_term(Variable::u(a), Rat(1));
        l.add_term(Variable::u(b), Rat(-1));
        return l;  // zero when a == b, since the terms cancel
    };
    for (int i = 1; i <= n; ++i)
        for (int a = 1; a <= n - 1; ++a)
            out.push_back({+1, diff(w(a), i), line_degree_s(a, bl)});
    for (int i = 1; i <= n - 1; ++i)
        for (int a = 1; a <= i; ++a)
            for (int b = 1; b <= i; ++b)
                out.push_back({-1, diff(w(a), w(b)), line_degree(a, b, bl)});
    for (int i = 1; i <= n - 2; ++i)
        for (int a = 1; a <= i; ++a)
            for (int b = 1; b <= i + 1; ++b)
                out.push_back({+1, diff(w(a), w(b)), line_degree(a, b, bl)});
    long rank = 0;
    for (const LineSummand& s : out) rank += s.sign;
    if (rank != static_cast<long>(n) * (n - 1) / 2)
        throw DataError("tangent decomposition has wrong signed rank");
    return out;
}

// Hypergeometric factor a single line summand contributes on a degree-delta
// balloon: an ascending product of c1 shifts when the line degree is
// nonnegative, the reciprocal of a descending one otherwise.
inline FactoredExpr line_contribution(const LinearForm& c1, long line_degree, long delta,
                                      const LinearForm& lambda) {
    if (delta < 1) throw DataError("balloon degree must be positive");
    LinearForm step = lambda;
    step.scale(Rat(1, delta));
    long m = line_degree * delta;
    FactoredExpr out;
    if (m >= 0) {
        for (long k = 0; k <= m; ++k) {
            LinearForm l(Variable::x());
            l.add(c1);
            l.add(step, Rat(-k));
            out.multiply_form(l, 1);
        }
    } else {
        for (long k = 1; k <= -m - 1; ++k) {
            LinearForm l(Variable::x());
            l.add(c1);
            l.add(step, Rat(k));
            out.multiply_form(l, -1);
        }
    }
    return out;
}

inline FactoredExpr balloon_product(const Balloon& bl, long delta, int n) {
    FactoredExpr out;
    for (const LineSummand& s : tangent_decomposition(bl, n)) {
        FactoredExpr c = line_contribution(s.c1_at_p, s.line_degree, delta, bl.tangent_weight_at_p);
        out = out * (s.sign > 0 ? c : c.inverse());
    }
    return out;
}

struct LinkCase {
    Balloon balloon;
    long delta;
    bool pass;
    std::string detail;  // mismatch ratio or pole location when the check fails
};

// The linking condition: the pullback of the degree-d datum, restricted to the
// south pole with alpha specialised to lambda/delta, equals the product of the
// per-line contributions. Here d is the multidegree of the balloon itself.
inline LinkCase verify_link(const Balloon& bl, long delta, int n) {
    MultiDegree d = multidegree_of_balloon(bl, delta, n);
    FactoredExpr pulled = tau_pullback(restrict_jr(build_Q(n, d).q, MultiDegree::zero(n - 1)), n);
    FactoredExpr at_p = restrict_at(pulled, bl.p);
    LinearForm alpha_value = bl.tangent_weight_at_p;
    alpha_value.scale(Rat(1, delta));
    FactoredExpr lhs;
    try {
        lhs = at_p.substitute({{Variable::alpha(), alpha_value}});
    } catch (const ZeroFactorError&) {
        return {bl, delta, false, "pole at alpha = weight/delta"};
    }
    FactoredExpr rhs = balloon_product(bl, delta, n);
    LinkCase result{bl, delta, equals_exact(lhs, rhs), {}};
    if (!result.pass) result.detail = render_expr(lhs * rhs.inverse());
    return result;
}

}  // namespace hypergeom
