#include <catch2/catch_amalgamated.hpp>

#include "hypergeom/mirror.hpp"

using namespace hypergeom;

namespace {

RatFn rf(const std::string& s) { return ratfn_of(parse_expr(s)); }

AlphaSeries chern_tuple(const ChernData& chern) {
    AlphaSeries s;
    for (const Perm& w : fixed_points(chern.n))
        s.at.emplace(w, LaurentInAlpha::term(0, RatFn{expand_product(restrict_at(chern.omega, w))}));
    return s;
}

// Exact synthetic coefficient family with everything at depth two or below,
// which is exactly the normal form the extraction is supposed to restore.
AlphaFamily synthetic_a(const ChernData& chern) {
    AlphaFamily a;
    a.emplace(MultiDegree{{0}}, chern_tuple(chern));
    AlphaSeries a1, a2, a3;
    for (const Perm& w : fixed_points(2)) {
        LaurentInAlpha l1 = LaurentInAlpha::term(-2, RatFn{SparsePoly(sigma_restricted(1, w))});
        l1.add_term(-3, RatFn(Rat(1)));
        a1.at.emplace(w, l1);
        a2.at.emplace(w, LaurentInAlpha::term(-2, rf("(x)")));
        a3.at.emplace(w, LaurentInAlpha::term(-4, RatFn(Rat(7))));
    }
    a.emplace(MultiDegree{{1}}, a1);
    a.emplace(MultiDegree{{2}}, a2);
    a.emplace(MultiDegree{{3}}, a3);
    return a;
}

MirrorTransformData synthetic_fg() {
    MirrorTransformData fg;
    fg.n = 2;
    fg.order = MultiDegree{{3}};
    MirrorCorrection c1{rf("(x)"), RatFn(Rat(-2)), {RatFn()}, {RatFn(Rat(1))}};
    MirrorCorrection c2{RatFn(), RatFn(Rat(1, 2)), {RatFn(Rat(-1))}, {RatFn()}};
    MirrorCorrection c3{RatFn(Rat(1)), RatFn(), {RatFn()}, {RatFn()}};
    fg.by_degree.emplace(MultiDegree{{1}}, c1);
    fg.by_degree.emplace(MultiDegree{{2}}, c2);
    fg.by_degree.emplace(MultiDegree{{3}}, c3);
    return fg;
}

}  // namespace

TEST_CASE("family exponential") {
    MultiDegree cutoff{{3}};
    AlphaFamily u;
    u.emplace(MultiDegree{{1}}, alpha_series_constant(2, RatFn(Rat(2))));
    for (auto& [d, s] : u)
        for (auto& [w, l] : s.at) l.shift(-1);

    AlphaFamily e = family_exp(u, cutoff, 2);
    REQUIRE(e.size() == 4);
    Perm id = Perm::parse("12");
    CHECK(e.at(MultiDegree{{0}}).at.at(id).coefficient(0) == RatFn(Rat(1)));
    CHECK(e.at(MultiDegree{{1}}).at.at(id).coefficient(-1) == RatFn(Rat(2)));
    CHECK(e.at(MultiDegree{{2}}).at.at(id).coefficient(-2) == RatFn(Rat(2)));
    CHECK(e.at(MultiDegree{{3}}).at.at(id).coefficient(-3) == RatFn(Rat(4, 3)));

    AlphaFamily with_const;
    with_const.emplace(MultiDegree{{0}}, alpha_series_constant(2, RatFn(Rat(1))));
    CHECK_THROWS_WITH(family_exp(with_const, cutoff, 2),
                      Catch::Matchers::ContainsSubstring("constant term"));
}

TEST_CASE("sigma profile solver") {
    SECTION("affine profile over rank two") {
        std::map<Perm, RatFn> values;
        values.emplace(Perm::parse("12"), rf("(u1+5)"));
        values.emplace(Perm::parse("21"), rf("(u2+5)"));
        auto s = detail::solve_sigma_profile(values, 2);
        REQUIRE(s.ok);
        CHECK(s.coeffs[0] == RatFn(Rat(5)));
        CHECK(s.coeffs[1] == RatFn(Rat(1)));
    }
    SECTION("quadratic profile is rejected") {
        std::map<Perm, RatFn> values;
        for (const Perm& w : fixed_points(3)) {
            RatFn u1{SparsePoly(sigma_restricted(1, w))};
            values.emplace(w, u1 * u1);
        }
        auto s = detail::solve_sigma_profile(values, 3);
        CHECK_FALSE(s.ok);
        CHECK_FALSE(s.offending.empty());
    }
}

TEST_CASE("synthetic round trip") {
    ChernData chern = build_chern(2);
    MultiDegree cutoff{{3}};
    AlphaFamily a_star = synthetic_a(chern);
    MirrorTransformData fg_star = synthetic_fg();

    AlphaFamily b_star = mirror_compose(a_star, fg_star, cutoff, 2);
    REQUIRE(b_star.size() == 4);
    CHECK_FALSE(b_star == a_star);

    MirrorResult res = mirror_transform(b_star, chern, cutoff);
    CHECK(res.data.n == 2);
    CHECK(res.data.order == cutoff);
    CHECK(res.data.by_degree == fg_star.by_degree);
    CHECK(res.a == a_star);
    for (long d = 1; d <= 3; ++d) CHECK(alpha_degree_at_most(res.a.at(MultiDegree{{d}}), -2));
}

TEST_CASE("normalized input passes through untouched") {
    ChernData chern = build_chern(2);
    MultiDegree cutoff{{3}};
    AlphaFamily a_star = synthetic_a(chern);
    MirrorResult res = mirror_transform(a_star, chern, cutoff);
    CHECK(res.data.trivial());
    CHECK(res.a == a_star);
}

TEST_CASE("positive alpha residue aborts the extraction") {
    ChernData chern = build_chern(2);
    AlphaFamily bad = synthetic_a(chern);
    for (auto& [w, l] : bad.at(MultiDegree{{1}}).at) l.add_term(1, RatFn(Rat(1)));
    CHECK_THROWS_AS(mirror_transform(bad, chern, MultiDegree{{3}}), NonNormalizableError);
    CHECK_THROWS_WITH(mirror_transform(bad, chern, MultiDegree{{3}}),
                      Catch::Matchers::ContainsSubstring("residual alpha level 1"));
}

TEST_CASE("assembled fixture family normalizes") {
    IngestedSeries I = ingest_I_file(HYPERGEOM_DATA_DIR "/I_n2.json");
    ChernData chern = build_chern(2);
    SeriesFamily B = assemble_B(2, I, MultiDegree{{3}});
    AlphaFamily bf = alpha_family_of(B);

    MirrorResult res = mirror_transform(bf, chern, MultiDegree{{3}});
    const MirrorCorrection& c1 = res.data.by_degree.at(MultiDegree{{1}});
    CHECK(c1.f_alpha == RatFn(Rat(-1)));
    CHECK(c1.f_const == rf("2*(x)"));
    CHECK(c1.g_alpha[0].is_zero());
    CHECK(c1.g_const[0].is_zero());
    for (long d = 1; d <= 3; ++d) CHECK(alpha_degree_at_most(res.a.at(MultiDegree{{d}}), -2));

    MirrorResult again = mirror_transform(res.a, chern, MultiDegree{{3}});
    CHECK(again.data.trivial());
    CHECK(again.a == res.a);
}
