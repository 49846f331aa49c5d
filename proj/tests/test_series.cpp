#include <catch2/catch_amalgamated.hpp>

#include "hypergeom/series.hpp"

using namespace hypergeom;
using nlohmann::json;

namespace {

json minimal_doc() {
    return json::parse(R"({
      "n": 2,
      "entries": [
        {"d": [0], "provenance": "unit", "restrictions": {"12": "1", "21": "1"}},
        {"d": [1], "provenance": "closed form",
         "restrictions": {"12": "-1*(a)^-1*(u1-u2-a)^-1",
                           "21": "-1*(a)^-1*(-u1+u2-a)^-1"}}
      ]
    })");
}

const char* kFixturePath = HYPERGEOM_DATA_DIR "/I_n2.json";

}  // namespace

TEST_CASE("ingest accepts the shipped fixture") {
    IngestedSeries I = ingest_I_file(kFixturePath);
    CHECK(I.n == 2);
    CHECK(I.coeff.size() == 5);
    for (long d = 0; d <= 4; ++d) {
        MultiDegree md{{d}};
        REQUIRE(I.coeff.count(md) == 1);
        CHECK_FALSE(I.provenance.at(md).empty());
        for (const Perm& w : fixed_points(2)) {
            const auto& terms = I.coeff.at(md).at(w);
            REQUIRE(terms.size() == 1);
            CHECK(terms[0].alpha_degree() == -2 * d);
        }
    }
}

TEST_CASE("ingest validation rejects malformed data") {
    SECTION("missing fixed point") {
        json doc = minimal_doc();
        doc["entries"][1]["restrictions"].erase("21");
        CHECK_THROWS_WITH(ingest_I(doc), Catch::Matchers::ContainsSubstring("missing fixed point 21"));
    }
    SECTION("missing provenance") {
        json doc = minimal_doc();
        doc["entries"][1].erase("provenance");
        CHECK_THROWS_WITH(ingest_I(doc), Catch::Matchers::ContainsSubstring("provenance"));
    }
    SECTION("alpha degree above the bound") {
        json doc = minimal_doc();
        doc["entries"][1]["restrictions"]["12"] = "-1*(a)^-1";
        doc["entries"][1]["restrictions"]["21"] = "-1*(a)^-1";
        CHECK_THROWS_WITH(ingest_I(doc), Catch::Matchers::ContainsSubstring("alpha degree -1"));
    }
    SECTION("nonunit degree zero") {
        json doc = minimal_doc();
        doc["entries"][0]["restrictions"]["12"] = "2";
        CHECK_THROWS_WITH(ingest_I(doc), Catch::Matchers::ContainsSubstring("constant 1"));
    }
    SECTION("edge condition when declared") {
        json doc = minimal_doc();
        doc["entries"][1]["gkm_checked"] = true;
        CHECK_NOTHROW(ingest_I(doc));
        doc["entries"][1]["restrictions"]["21"] = "-1*(a)^-1*(-u1+u2-2a)^-1";
        CHECK_THROWS_WITH(ingest_I(doc), Catch::Matchers::ContainsSubstring("edge condition"));
    }
    SECTION("unknown fixed point key") {
        json doc = minimal_doc();
        doc["entries"][1]["restrictions"]["123"] = "1";
        CHECK_THROWS_WITH(ingest_I(doc), Catch::Matchers::ContainsSubstring("unknown fixed point"));
    }
    SECTION("duplicate degree") {
        json doc = minimal_doc();
        doc["entries"].push_back(doc["entries"][1]);
        CHECK_THROWS_WITH(ingest_I(doc), Catch::Matchers::ContainsSubstring("duplicate"));
    }
    SECTION("bad expression cites the fixed point") {
        json doc = minimal_doc();
        doc["entries"][1]["restrictions"]["12"] = "(u1-";
        CHECK_THROWS_WITH(ingest_I(doc), Catch::Matchers::ContainsSubstring("restriction 12"));
    }
}

TEST_CASE("assembled series starts from the chern tuple") {
    IngestedSeries I = ingest_I_file(kFixturePath);
    ChernData chern = build_chern(2);
    SeriesFamily B = assemble_B(2, I, MultiDegree{{2}});
    REQUIRE(B.coeff.size() == 3);

    const GkmClass& b0 = B.coeff.at(MultiDegree{{0}});
    for (const Perm& w : fixed_points(2)) {
        REQUIRE(b0.at(w).size() == 1);
        CHECK(equals_exact(b0.at(w)[0], restrict_at(chern.omega, w)));
    }

    const GkmClass& b1 = B.coeff.at(MultiDegree{{1}});
    Perm id = Perm::parse("12");
    FactoredExpr expected =
        parse_expr("-1*(x+u1-u2)*(x-a)*(x+u1-u2-a)*(a)^-1*(u1-u2-a)^-1");
    CHECK(equals_exact(b1.at(id)[0], expected));

    CHECK_THROWS_WITH(assemble_B(2, I, MultiDegree{{9}}),
                      Catch::Matchers::ContainsSubstring("no ingested coefficient"));
}

TEST_CASE("euler series condition holds for the fixture") {
    IngestedSeries I = ingest_I_file(kFixturePath);
    ChernData chern = build_chern(2);
    SeriesFamily B = assemble_B(2, I, MultiDegree{{3}});
    for (long d = 0; d <= 3; ++d) {
        EulerSeriesReport rep = euler_series_check(B, chern, MultiDegree{{d}}, 2);
        INFO("d = " << d);
        CHECK(rep.pass);
        CHECK(rep.cases.size() == 3);
        for (const auto& c : rep.cases) {
            INFO("monomial order " << c.monomial[0] << " residual " << c.residual);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("perturbed series fails with an alpha pole") {
    IngestedSeries I = ingest_I_file(kFixturePath);
    ChernData chern = build_chern(2);
    SeriesFamily B = assemble_B(2, I, MultiDegree{{2}});
    B.coeff.at(MultiDegree{{1}}).add_term(Perm::parse("12"), FactoredExpr::one());

    // At d=(1) the perturbation only ever meets the alpha-free degree-zero
    // coefficient, so the sum fails without an alpha denominator.
    EulerSeriesReport shallow = euler_series_check(B, chern, MultiDegree{{1}}, 1);
    CHECK_FALSE(shallow.pass);

    // At d=(2) it multiplies a genuine coefficient and the poles survive.
    EulerSeriesReport rep = euler_series_check(B, chern, MultiDegree{{2}}, 1);
    CHECK_FALSE(rep.pass);
    bool saw_alpha_pole = false;
    for (const auto& c : rep.cases)
        if (!c.pass && c.alpha_pole) saw_alpha_pole = true;
    CHECK(saw_alpha_pole);
}
