#pragma once

#include <string>
#include <vector>

#include "laurent.hpp"
#include "series.hpp"

namespace hypergeom {

// One series coefficient in expansion form: a Laurent series in alpha at every
// fixed point. All operations require matching fixed-point sets.
struct AlphaSeries {
    std::map<Perm, LaurentInAlpha> at;

    friend bool operator==(const AlphaSeries& a, const AlphaSeries& b) = default;
};

using AlphaFamily = std::map<MultiDegree, AlphaSeries>;

inline AlphaSeries alpha_series_zero(int n) {
    AlphaSeries s;
    for (const Perm& w : fixed_points(n)) s.at.emplace(w, LaurentInAlpha());
    return s;
}

inline AlphaSeries alpha_series_constant(int n, const RatFn& c) {
    AlphaSeries s;
    for (const Perm& w : fixed_points(n)) s.at.emplace(w, LaurentInAlpha::term(0, c));
    return s;
}

// Expands every restriction down to `low`; exactness is preserved when nothing
// is actually truncated (alpha-free classes, finite tails).
inline AlphaSeries alpha_series_of(const GkmClass& c, int low) {
    AlphaSeries s;
    for (const auto& [w, terms] : c.restrictions()) {
        LaurentInAlpha acc;
        for (const FactoredExpr& t : terms) acc += expand_alpha(t, low);
        s.at.emplace(w, std::move(acc));
    }
    return s;
}

inline AlphaSeries series_add(const AlphaSeries& a, const AlphaSeries& b) {
    if (a.at.size() != b.at.size()) throw DataError("fixed point sets differ");
    AlphaSeries r;
    for (const auto& [w, l] : a.at) {
        auto it = b.at.find(w);
        if (it == b.at.end()) throw DataError("fixed point sets differ");
        r.at.emplace(w, l + it->second);
    }
    return r;
}

inline AlphaSeries series_mul(const AlphaSeries& a, const AlphaSeries& b) {
    if (a.at.size() != b.at.size()) throw DataError("fixed point sets differ");
    AlphaSeries r;
    for (const auto& [w, l] : a.at) {
        auto it = b.at.find(w);
        if (it == b.at.end()) throw DataError("fixed point sets differ");
        r.at.emplace(w, l * it->second);
    }
    return r;
}

inline AlphaSeries series_scale(AlphaSeries a, const RatFn& c) {
    for (auto& [w, l] : a.at) l.scale(c);
    return a;
}

inline bool series_is_zero(const AlphaSeries& a) {
    for (const auto& [w, l] : a.at)
        if (!l.terms().empty()) return false;
    return true;
}

inline bool alpha_degree_at_most(const AlphaSeries& a, int bound) {
    for (const auto& [w, l] : a.at)
        for (const auto& [k, c] : l.terms())
            if (k > bound) return false;
    return true;
}

inline void family_add_into(AlphaFamily& f, const MultiDegree& d, const AlphaSeries& s, int n) {
    auto it = f.find(d);
    if (it == f.end())
        f.emplace(d, series_add(alpha_series_zero(n), s));
    else
        it->second = series_add(it->second, s);
}

inline AlphaFamily family_product(const AlphaFamily& f, const AlphaFamily& g,
                                  const MultiDegree& cutoff, int n) {
    AlphaFamily out;
    for (const auto& [df, sf] : f)
        for (const auto& [dg, sg] : g) {
            MultiDegree d = df + dg;
            if (!degree_leq(d, cutoff)) continue;
            family_add_into(out, d, series_mul(sf, sg), n);
        }
    return out;
}

// exp of a family with no degree-zero part, truncated at the cutoff.
inline AlphaFamily family_exp(const AlphaFamily& u, const MultiDegree& cutoff, int n) {
    for (const auto& [d, s] : u)
        if (d.is_zero() && !series_is_zero(s)) throw DataError("exponent series has a constant term");
    AlphaFamily out{{MultiDegree::zero(cutoff.length()), alpha_series_constant(n, RatFn(Rat(1)))}};
    AlphaFamily power = out;
    long k = 0;
    while (true) {
        ++k;
        power = family_product(power, u, cutoff, n);
        bool live = false;
        for (auto& [d, s] : power) {
            s = series_scale(s, RatFn(Rat(1, k)));
            if (!series_is_zero(s)) live = true;
        }
        if (!live) break;
        for (const auto& [d, s] : power) family_add_into(out, d, s, n);
    }
    return out;
}

// Degree-d correction pair: f_d = f_const + f_alpha*alpha and the tuple g_d
// likewise, coefficients rational functions free of alpha.
struct MirrorCorrection {
    RatFn f_const, f_alpha;
    std::vector<RatFn> g_const, g_alpha;

    bool is_zero() const {
        if (!f_const.is_zero() || !f_alpha.is_zero()) return false;
        for (const RatFn& c : g_const)
            if (!c.is_zero()) return false;
        for (const RatFn& c : g_alpha)
            if (!c.is_zero()) return false;
        return true;
    }

    friend bool operator==(const MirrorCorrection& a, const MirrorCorrection& b) = default;
};

struct MirrorTransformData {
    int n = 0;
    MultiDegree order = MultiDegree::zero(1);
    std::map<MultiDegree, MirrorCorrection> by_degree;

    bool trivial() const {
        for (const auto& [d, c] : by_degree)
            if (!c.is_zero()) return false;
        return true;
    }
};

// (f_d + sigma . g_d)/alpha as a two-level series, restricted per fixed point.
inline AlphaSeries correction_series(const MirrorCorrection& c, int n) {
    AlphaSeries s;
    for (const Perm& w : fixed_points(n)) {
        RatFn level0 = c.f_alpha;
        RatFn level1 = c.f_const;
        for (int a = 1; a <= n - 1; ++a) {
            RatFn sigma{SparsePoly(sigma_restricted(a, w))};
            level0 += sigma * c.g_alpha[a - 1];
            level1 += sigma * c.g_const[a - 1];
        }
        LaurentInAlpha l;
        l.add_term(0, level0);
        l.add_term(-1, level1);
        s.at.emplace(w, std::move(l));
    }
    return s;
}

namespace detail {

inline AlphaFamily correction_family(const MirrorTransformData& fg, int n) {
    AlphaFamily u;
    for (const auto& [d, c] : fg.by_degree) u.emplace(d, correction_series(c, n));
    return u;
}

// Family for d . g = sum_a d_a g_a: alpha-linear values, constant over fixed points.
inline AlphaFamily weighted_shift_family(const MirrorTransformData& fg, const MultiDegree& d, int n) {
    AlphaFamily u;
    for (const auto& [e, c] : fg.by_degree) {
        RatFn lvl0, lvl1;
        for (int a = 1; a <= n - 1; ++a) {
            RatFn da{Rat(d.entry(a))};
            lvl1 += da * c.g_alpha[a - 1];
            lvl0 += da * c.g_const[a - 1];
        }
        LaurentInAlpha l;
        l.add_term(0, lvl0);
        l.add_term(1, lvl1);
        AlphaSeries s;
        for (const Perm& w : fixed_points(n)) s.at.emplace(w, l);
        u.emplace(e, s);
    }
    return u;
}

}  // namespace detail

// Forward direction: given coefficients A_d, corrections (f, g), produce the
// family B with  sum A_d e^{d(t+g)} e^{-sigma.g/alpha} = e^{f/alpha}-scaled B,
// i.e. B = e^{-(f+sigma.g)/alpha} * (g-shifted A). The degree-zero entry of A
// must be present; it is carried through unchanged.
inline AlphaFamily mirror_compose(const AlphaFamily& a, const MirrorTransformData& fg,
                                  const MultiDegree& cutoff, int n) {
    AlphaFamily shifted;
    for (const auto& [d, s] : a) {
        if (!degree_leq(d, cutoff)) continue;
        if (d.is_zero()) {
            family_add_into(shifted, d, s, n);
            continue;
        }
        AlphaFamily e = family_exp(detail::weighted_shift_family(fg, d, n), cutoff, n);
        for (const auto& [de, se] : e) {
            MultiDegree target = d + de;
            if (degree_leq(target, cutoff)) family_add_into(shifted, target, series_mul(s, se), n);
        }
    }
    AlphaFamily u = detail::correction_family(fg, n);
    for (auto& [d, s] : u) s = series_scale(s, RatFn(Rat(-1)));
    return family_product(family_exp(u, cutoff, n), shifted, cutoff, n);
}

namespace detail {

struct SigmaSolve {
    bool ok = true;
    std::vector<RatFn> coeffs;  // (s, c_1, ..., c_{n-1}): value s + sum c_a sigma_a
    std::string offending;
};

// Least structure recovery: express per-fixed-point values as a constant plus
// a combination of the sigma restrictions, exactly, or report the obstruction.
inline SigmaSolve solve_sigma_profile(const std::map<Perm, RatFn>& values, int n) {
    int cols = n;  // unknowns: constant, then g-coefficients 1..n-1
    std::vector<std::vector<RatFn>> rows;
    for (const auto& [w, v] : values) {
        std::vector<RatFn> row(cols + 1);
        row[0] = RatFn(Rat(1));
        for (int a = 1; a <= n - 1; ++a) row[a] = RatFn{SparsePoly(sigma_restricted(a, w))};
        row[cols] = v;
        rows.push_back(std::move(row));
    }

    std::vector<int> pivot_of_col(cols, -1);
    int rank = 0;
    for (int col = 0; col < cols; ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (!rows[r][col].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        RatFn lead = rows[rank][col];
        for (int c = col; c <= cols; ++c) rows[rank][c] /= lead;
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][col].is_zero()) continue;
            RatFn factor = rows[r][col];
            for (int c = col; c <= cols; ++c) rows[r][c] -= factor * rows[rank][c];
        }
        pivot_of_col[col] = rank;
        ++rank;
    }

    SigmaSolve out;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
        if (!rows[r][cols].is_zero()) {
            out.ok = false;
            out.offending = rows[r][cols].to_string();
            return out;
        }
    out.coeffs.assign(cols, RatFn());
    for (int col = 0; col < cols; ++col)
        if (pivot_of_col[col] >= 0) out.coeffs[col] = rows[pivot_of_col[col]][cols];
    return out;
}

}  // namespace detail

struct MirrorResult {
    MirrorTransformData data;
    AlphaFamily a;
};

// Lexicographic extraction of (f, g): at each degree the residual levels 0 and
// -1 of (transformed coefficient)/Omega must be a constant plus a combination
// of the sigma classes; those determine the alpha-linear corrections, and the
// corrected coefficient satisfies deg_alpha <= -2. Residue at positive alpha
// levels, or a profile outside the solvable shape, aborts the extraction.
inline MirrorResult mirror_transform(const AlphaFamily& b_in, const ChernData& chern,
                                     const MultiDegree& cutoff) {
    int n = chern.n;
    if (cutoff.length() != n - 1) throw DataError("cutoff length must be n-1");
    std::map<Perm, RatFn> omega_at;
    for (const Perm& w : fixed_points(n))
        omega_at.emplace(w, RatFn{expand_product(restrict_at(chern.omega, w))});
    AlphaSeries omega_series;
    for (const auto& [w, v] : omega_at) omega_series.at.emplace(w, LaurentInAlpha::term(0, v));

    AlphaFamily b = b_in;
    MultiDegree zero = MultiDegree::zero(n - 1);
    if (auto it = b.find(zero); it != b.end()) {
        if (!(it->second == omega_series))
            throw DataError("degree-zero coefficient must be the chern class tuple");
    } else {
        b.emplace(zero, omega_series);
    }

    MirrorResult res;
    res.data.n = n;
    res.data.order = cutoff;
    res.a.emplace(zero, omega_series);

    for (const MultiDegree& d : degree_interval(cutoff)) {
        if (d.is_zero()) continue;
        AlphaFamily exp_u = family_exp(detail::correction_family(res.data, n), cutoff, n);

        AlphaSeries m = alpha_series_zero(n);
        for (const MultiDegree& e : degree_interval(d)) {
            auto be = b.find(e);
            if (be == b.end()) throw DataError("input family does not cover degree " + e.str());
            auto ee = exp_u.find(d - e);
            if (ee != exp_u.end()) m = series_add(m, series_mul(be->second, ee->second));
        }
        for (const MultiDegree& e : degree_interval(d)) {
            if (e.is_zero() || e == d) continue;
            AlphaFamily shift = family_exp(detail::weighted_shift_family(res.data, e, n), d, n);
            auto se = shift.find(d - e);
            if (se == shift.end()) continue;
            m = series_add(m, series_scale(series_mul(res.a.at(e), se->second), RatFn(Rat(-1))));
        }

        std::map<Perm, RatFn> level0, level1;
        for (const auto& [w, l] : m.at) {
            LaurentInAlpha hat = l;
            hat.scale(RatFn(Rat(1)) / omega_at.at(w));
            for (const auto& [k, c] : hat.terms())
                if (k >= 1)
                    throw NonNormalizableError("degree " + d.str() + ", fixed point " + w.str() +
                                               ": residual alpha level " + std::to_string(k) +
                                               " with coefficient " + c.to_string());
            level0.emplace(w, -hat.coefficient(0));
            level1.emplace(w, -hat.coefficient(-1));
        }
        detail::SigmaSolve s0 = detail::solve_sigma_profile(level0, n);
        if (!s0.ok)
            throw NonNormalizableError("degree " + d.str() +
                                       ": alpha level 0 excess is not constant-plus-sigma: " +
                                       s0.offending);
        detail::SigmaSolve s1 = detail::solve_sigma_profile(level1, n);
        if (!s1.ok)
            throw NonNormalizableError("degree " + d.str() +
                                       ": alpha level -1 excess is not constant-plus-sigma: " +
                                       s1.offending);

        MirrorCorrection corr;
        corr.f_alpha = s0.coeffs[0];
        corr.f_const = s1.coeffs[0];
        corr.g_alpha.assign(s0.coeffs.begin() + 1, s0.coeffs.end());
        corr.g_const.assign(s1.coeffs.begin() + 1, s1.coeffs.end());

        AlphaSeries correction = correction_series(corr, n);
        AlphaSeries ad = alpha_series_zero(n);
        for (const auto& [w, l] : m.at) {
            LaurentInAlpha scaled = correction.at.at(w);
            scaled.scale(omega_at.at(w));
            LaurentInAlpha total = l + scaled;
            for (const auto& [k, c] : total.terms())
                if (k >= -1)
                    throw NonNormalizableError("degree " + d.str() + ", fixed point " + w.str() +
                                               ": residue survives correction at alpha level " +
                                               std::to_string(k));
            ad.at.at(w) = std::move(total);
        }
        res.data.by_degree.emplace(d, std::move(corr));
        res.a.emplace(d, std::move(ad));
    }
    return res;
}

// Expansion floors for a factored family: -<c1,d>-2 at positive degrees.
inline AlphaFamily alpha_family_of(const SeriesFamily& b) {
    AlphaFamily out;
    for (const auto& [d, cls] : b.coeff) {
        int low = d.is_zero() ? -2 : static_cast<int>(-c1_pairing(d)) - 2;
        out.emplace(d, alpha_series_of(cls, low));
    }
    return out;
}

}  // namespace hypergeom
