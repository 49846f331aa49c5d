#pragma once

#include <set>
#include <string>
#include <vector>

#include "factored_expr.hpp"
#include "permutation.hpp"

namespace hypergeom {

inline constexpr int kMaxFlagRank = 6;

inline void check_rank(int n) {
    if (n < 2 || n > kMaxFlagRank) throw DataError("flag rank n must be in 2.." + std::to_string(kMaxFlagRank));
}

// Degree vector (d_1, ..., d_{n-1}) against the dual Schubert basis, with the
// componentwise partial order. entry(0) is pinned to 0 so the pervasive
// d_a - d_{a-1} differences need no special case at a = 1.
class MultiDegree {
  public:
    explicit MultiDegree(std::vector<long> entries) : d_(std::move(entries)) {
        if (d_.empty()) throw DataError("empty degree vector");
    }

    static MultiDegree zero(int len) { return MultiDegree(std::vector<long>(len, 0)); }

    static MultiDegree parse(const std::string& s) {
        std::vector<long> v;
        std::size_t pos = 0;
        while (pos <= s.size()) {
            std::size_t comma = s.find(',', pos);
            std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            try {
                std::size_t used = 0;
                long val = std::stol(item, &used);
                if (used != item.size() || item.empty()) throw std::invalid_argument(item);
                v.push_back(val);
            } catch (const std::exception&) {
                throw DataError("bad degree vector: " + s);
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return MultiDegree(std::move(v));
    }

    int length() const { return static_cast<int>(d_.size()); }
    const std::vector<long>& entries() const { return d_; }

    long entry(int a) const {
        if (a == 0) return 0;
        if (a < 1 || a > length()) throw DataError("degree index out of range");
        return d_[a - 1];
    }

    bool is_effective() const {
        for (long v : d_)
            if (v < 0) return false;
        return true;
    }

    bool is_zero() const {
        for (long v : d_)
            if (v != 0) return false;
        return true;
    }

    long sum() const {
        long s = 0;
        for (long v : d_) s += v;
        return s;
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < d_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(d_[i]);
        }
        return s;
    }

    friend MultiDegree operator-(const MultiDegree& a, const MultiDegree& b) {
        if (a.length() != b.length()) throw DataError("degree length mismatch");
        std::vector<long> v = a.d_;
        for (int i = 0; i < a.length(); ++i) v[i] -= b.d_[i];
        return MultiDegree(std::move(v));
    }

    friend MultiDegree operator+(const MultiDegree& a, const MultiDegree& b) {
        if (a.length() != b.length()) throw DataError("degree length mismatch");
        std::vector<long> v = a.d_;
        for (int i = 0; i < a.length(); ++i) v[i] += b.d_[i];
        return MultiDegree(std::move(v));
    }

    friend bool operator==(const MultiDegree& a, const MultiDegree& b) { return a.d_ == b.d_; }
    friend bool operator<(const MultiDegree& a, const MultiDegree& b) { return a.d_ < b.d_; }

  private:
    std::vector<long> d_;
};

// r ⪯ d componentwise.
inline bool degree_leq(const MultiDegree& r, const MultiDegree& d) {
    if (r.length() != d.length()) throw DataError("degree length mismatch");
    for (int i = 1; i <= r.length(); ++i)
        if (r.entry(i) > d.entry(i)) return false;
    return true;
}

// All 0 ⪯ r ⪯ d in lexicographic order; ∏(d_i+1) elements.
inline std::vector<MultiDegree> degree_interval(const MultiDegree& d) {
    if (!d.is_effective()) throw DataError("degree interval requires an effective degree");
    std::vector<MultiDegree> out;
    std::vector<long> cur(d.length(), 0);
    for (;;) {
        out.push_back(MultiDegree(cur));
        int i = d.length() - 1;
        while (i >= 0 && cur[i] == d.entry(i + 1)) cur[i--] = 0;
        if (i < 0) break;
        ++cur[i];
    }
    return out;
}

// d_ab = d_a - d_{a-1} - d_b + d_{b-1}.
inline long d_ab(const MultiDegree& d, int a, int b) {
    return d.entry(a) - d.entry(a - 1) - d.entry(b) + d.entry(b - 1);
}

// <c_1(X), d> = 2 Σ d_i.
inline long c1_pairing(const MultiDegree& d) { return 2 * d.sum(); }

struct Balloon {
    Perm p, q;
    int i, j;  // transposition indices, i < j
    LinearForm tangent_weight_at_p;  // u_{ω(i)} - u_{ω(j)}

    std::string str() const {
        return p.str() + "x(" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
};

inline std::vector<Perm> fixed_points(int n) {
    check_rank(n);
    return Perm::all(n);
}

namespace detail {

// Pairwise linear independence of the isotropy weights at a fixed point.
inline void check_gkm_weights(const Perm& w) {
    std::set<LinearForm> primitives;
    for (int i = 1; i <= w.n(); ++i)
        for (int j = i + 1; j <= w.n(); ++j) {
            LinearForm weight(Variable::u(w(i)));
            weight.add_term(Variable::u(w(j)), Rat(-1));
            auto [content, prim] = canonical_split(weight);
            if (!primitives.insert(prim).second)
                throw DataError("isotropy weights are not pairwise independent at " + w.str());
        }
}

}  // namespace detail

// Every directed balloon: each unordered invariant sphere appears once per
// endpoint. The GKM independence condition is checked at every fixed point.
inline std::vector<Balloon> balloons(int n) {
    check_rank(n);
    std::vector<Balloon> out;
    for (const Perm& w : Perm::all(n)) {
        detail::check_gkm_weights(w);
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                LinearForm weight(Variable::u(w(i)));
                weight.add_term(Variable::u(w(j)), Rat(-1));
                out.push_back(Balloon{w, w.swapped(i, j), i, j, weight});
            }
    }
    return out;
}

inline Balloon parse_balloon(const std::string& s, int n) {
    auto x = s.find('x');
    if (x == std::string::npos || x + 1 >= s.size() || s[x + 1] != '(')
        throw DataError("bad balloon string: " + s);
    Perm p = Perm::parse(s.substr(0, x));
    if (p.n() != n) throw DataError("balloon permutation has wrong rank: " + s);
    auto comma = s.find(',', x);
    auto close = s.find(')', x);
    if (comma == std::string::npos || close == std::string::npos || close != s.size() - 1)
        throw DataError("bad balloon string: " + s);
    int i = std::stoi(s.substr(x + 2, comma - x - 2));
    int j = std::stoi(s.substr(comma + 1, close - comma - 1));
    if (i < 1 || j <= i || j > n) throw DataError("bad balloon transposition: " + s);
    LinearForm weight(Variable::u(p(i)));
    weight.add_term(Variable::u(p(j)), Rat(-1));
    return Balloon{p, p.swapped(i, j), i, j, weight};
}

// <y_a, [pq]> for the balloon with transposition (i j): the proof's
// delta-formula. The displayed case list in the source lemma contradicts
// itself, so the formula is authoritative; see line_degree_table for the
// corrected case-list path kept for cross-checking.
inline int degree_pairing(int a, const Balloon& b) {
    return (a == b.i ? 1 : 0) - (a == b.j ? 1 : 0);
}

// l_ab = <y_a - y_b, [pq]>.
inline int line_degree(int a, int bIdx, const Balloon& b) {
    return degree_pairing(a, b) - degree_pairing(bIdx, b);
}

// l_a for the L* ⊗ S_i summands; the S factor pairs to zero against a balloon.
inline int line_degree_s(int a, const Balloon& b) { return degree_pairing(a, b); }

// The two displayed case lists for l_ab with transposition (s,t), s < t, after
// repairing one swapped disjunct in each (both repairs are forced by the
// adjacent cases). Used as a cross-check oracle against line_degree.
inline int line_degree_table(int a, int bIdx, int s, int t) {
    if (a < bIdx) {
        if (s == a && t == bIdx) return 2;
        if (t == a || s == bIdx) return -1;
        if ((s == a && t != bIdx) || (t == bIdx && s != a)) return 1;
        return 0;
    }
    if (a > bIdx) {
        if (s == bIdx && t == a) return -2;
        if ((s == bIdx && t != a) || (t == a && s != bIdx)) return -1;
        if (s == a || t == bIdx) return 1;
        return 0;
    }
    return 0;
}

// d_i = δ·<S_i, [pq]> = δ·Σ_{a≤i} <y_a, [pq]>.
inline MultiDegree multidegree_of_balloon(const Balloon& b, long delta, int n) {
    if (delta < 1) throw DataError("balloon multiple must be positive");
    std::vector<long> d(n - 1, 0);
    long acc = 0;
    for (int i = 1; i <= n - 1; ++i) {
        acc += degree_pairing(i, b);
        d[i - 1] = delta * acc;
    }
    return MultiDegree(std::move(d));
}

// y_a ↦ u_{ω(a)} as a substitution map, for restricting classes to the fixed
// point ω.
inline std::map<Variable, LinearForm> restriction_map(const Perm& w) {
    std::map<Variable, LinearForm> m;
    for (int a = 1; a <= w.n(); ++a) m.emplace(Variable::y(a), LinearForm(Variable::u(w(a))));
    return m;
}

inline FactoredExpr restrict_at(const FactoredExpr& e, const Perm& w) {
    return e.substitute(restriction_map(w));
}

// Equivariant Euler class of the tangent space at ω: ∏_{i<j}(u_{ω(i)}-u_{ω(j)}).
inline FactoredExpr tangent_euler_class(const Perm& w) {
    FactoredExpr e;
    for (int i = 1; i <= w.n(); ++i)
        for (int j = i + 1; j <= w.n(); ++j) {
            LinearForm weight(Variable::u(w(i)));
            weight.add_term(Variable::u(w(j)), Rat(-1));
            e.multiply_form(weight, 1);
        }
    return e;
}

}  // namespace hypergeom
