#pragma once

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "link.hpp"
#include "mirror.hpp"
#include "parallel.hpp"

namespace hypergeom {

// One batch invocation. `max_degree` stays textual here because its shape
// (scalar bound vs component list) is only fixed once n is known.
struct RunConfig {
    std::string command;
    int n = 0;
    std::string max_degree;
    long delta_max = 2;
    int zeta_order = 2;
    int jobs = 0;  // 0: HYPERGEOM_JOBS, then hardware
    std::string input_path;
    std::string report_path;
    std::string format = "json";
};

struct RunOutcome {
    int exit_code = 0;
    nlohmann::json report;
};

namespace detail {

inline nlohmann::json degree_json(const MultiDegree& d) { return nlohmann::json(d.entries()); }

inline MultiDegree degree_bound(const std::string& text, int n) {
    if (text.empty()) throw DataError("--max-degree is required for this command");
    if (text.find(',') != std::string::npos) {
        MultiDegree d = MultiDegree::parse(text);
        if (d.length() != n - 1)
            throw DataError("degree bound has " + std::to_string(d.length()) +
                            " components, expected " + std::to_string(n - 1));
        return d;
    }
    long k = 0;
    try {
        std::size_t used = 0;
        k = std::stol(text, &used);
        if (used != text.size()) throw DataError("trailing junk in degree bound: " + text);
    } catch (const std::exception&) {
        throw DataError("bad degree bound: " + text);
    }
    if (k < 0) throw DataError("degree bound must be nonnegative");
    return MultiDegree(std::vector<long>(static_cast<std::size_t>(n - 1), k));
}

inline int resolve_jobs(const RunConfig& cfg) {
    if (cfg.jobs > 0) return cfg.jobs;
    if (const char* env = std::getenv("HYPERGEOM_JOBS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<int>(v);
    }
    return default_jobs();
}

inline void require_rank(int n) {
    if (n < 2) throw DataError("--n must be at least 2");
    check_rank(n);
}

inline RunOutcome run_euler_data(const RunConfig& cfg, int jobs) {
    require_rank(cfg.n);
    MultiDegree bound = degree_bound(cfg.max_degree, cfg.n);
    ChernData chern = build_chern(cfg.n);

    std::vector<std::pair<MultiDegree, MultiDegree>> items;
    for (const MultiDegree& d : degree_interval(bound))
        for (const MultiDegree& r : degree_interval(d)) items.emplace_back(d, r);
    std::vector<std::optional<EulerCase>> results(items.size());
    run_indexed(items.size(), jobs, [&](std::size_t i) {
        results[i] = verify_euler_case(chern, items[i].first, items[i].second);
    });

    nlohmann::json cases = nlohmann::json::array();
    long failed = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const EulerCase& r = *results[i];
        nlohmann::json c{{"d", degree_json(items[i].first)},
                         {"r", degree_json(r.r)},
                         {"status", r.pass ? "pass" : "fail"}};
        if (!r.pass) {
            c["mismatch"] = r.mismatch;
            ++failed;
        }
        cases.push_back(std::move(c));
    }
    nlohmann::json rep{{"check", "euler-data"},   {"n", cfg.n},
                       {"max_degree", degree_json(bound)}, {"cases", std::move(cases)},
                       {"failed", failed},        {"status", failed == 0 ? "pass" : "fail"}};
    return {failed == 0 ? 0 : 1, std::move(rep)};
}

inline RunOutcome run_check_link(const RunConfig& cfg, int jobs) {
    require_rank(cfg.n);
    if (cfg.delta_max < 1) throw DataError("--delta-max must be at least 1");

    std::vector<std::pair<Balloon, long>> items;
    for (const Balloon& b : balloons(cfg.n))
        for (long delta = 1; delta <= cfg.delta_max; ++delta) items.emplace_back(b, delta);
    std::vector<std::optional<LinkCase>> results(items.size());
    run_indexed(items.size(), jobs, [&](std::size_t i) {
        results[i] = verify_link(items[i].first, items[i].second, cfg.n);
    });

    nlohmann::json cases = nlohmann::json::array();
    long failed = 0;
    for (const std::optional<LinkCase>& slot : results) {
        const LinkCase& r = *slot;
        nlohmann::json c{{"balloon", r.balloon.str()},
                         {"delta", r.delta},
                         {"status", r.pass ? "pass" : "fail"}};
        if (!r.pass) {
            c["detail"] = r.detail;
            ++failed;
        }
        cases.push_back(std::move(c));
    }
    nlohmann::json rep{
        {"check", "link"},     {"n", cfg.n},
        {"delta_max", cfg.delta_max}, {"cases", std::move(cases)},
        {"failed", failed},    {"status", failed == 0 ? "pass" : "fail"},
        {"notes", {"S-summand degrees use l_a = <y_a,[pq]>; the S factor itself pairs to zero"}}};
    return {failed == 0 ? 0 : 1, std::move(rep)};
}

inline RunOutcome run_degree_audit(const RunConfig& cfg, int jobs) {
    require_rank(cfg.n);
    MultiDegree bound = degree_bound(cfg.max_degree, cfg.n);

    std::vector<MultiDegree> items = degree_interval(bound);
    std::vector<DegreeAuditRow> rows(items.size());
    run_indexed(items.size(), jobs,
                [&](std::size_t i) { rows[i] = degree_audit_row(cfg.n, items[i]); });

    nlohmann::json cases = nlohmann::json::array();
    long failed = 0;
    for (const DegreeAuditRow& r : rows) {
        bool ok = r.bound_holds && r.slack_ok;
        if (!ok) ++failed;
        cases.push_back({{"d", degree_json(r.d)},
                         {"deg_alpha", r.exact_deg},
                         {"stated_bound", r.stated_bound},
                         {"bound_holds", r.bound_holds},
                         {"c1", r.c1},
                         {"slack", r.slack},
                         {"slack_ok", r.slack_ok},
                         {"status", ok ? "pass" : "fail"}});
    }
    nlohmann::json rep{
        {"check", "degree-audit"}, {"n", cfg.n},
        {"max_degree", degree_json(bound)}, {"cases", std::move(cases)},
        {"failed", failed},        {"status", failed == 0 ? "pass" : "fail"},
        {"notes",
         {"stated bound is n*d_{n-1} - sum_{a<=i}(d_ia + 1) with every denominator weight keeping "
          "its u_i term",
          "deg_alpha is exact after cancellation; slack = <c1,d> - deg_alpha"}}};
    return {failed == 0 ? 0 : 1, std::move(rep)};
}

inline IngestedSeries load_input(const RunConfig& cfg) {
    if (cfg.input_path.empty()) throw DataError("--input is required for this command");
    IngestedSeries I = ingest_I_file(cfg.input_path);
    if (cfg.n != 0 && cfg.n != I.n)
        throw DataError("--n " + std::to_string(cfg.n) + " does not match input rank " +
                        std::to_string(I.n));
    return I;
}

inline RunOutcome run_assemble(const RunConfig& cfg, int) {
    IngestedSeries I = load_input(cfg);
    MultiDegree bound = degree_bound(cfg.max_degree, I.n);
    SeriesFamily B = assemble_B(I.n, I, bound);

    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [d, cls] : B.coeff) {
        nlohmann::json restrictions = nlohmann::json::object();
        for (const auto& [w, terms] : cls.restrictions()) {
            nlohmann::json parts = nlohmann::json::array();
            for (const FactoredExpr& t : terms) parts.push_back(render_expr(t));
            restrictions[w.str()] = std::move(parts);
        }
        coeffs.push_back({{"d", degree_json(d)},
                          {"provenance", I.provenance.at(d)},
                          {"restrictions", std::move(restrictions)}});
    }
    nlohmann::json rep{{"check", "assemble-series"},
                       {"n", I.n},
                       {"max_degree", degree_json(bound)},
                       {"coefficients", std::move(coeffs)},
                       {"status", "pass"}};
    return {0, std::move(rep)};
}

inline RunOutcome run_euler_series(const RunConfig& cfg, int jobs) {
    if (cfg.zeta_order < 0) throw DataError("--zeta-order must be nonnegative");
    IngestedSeries I = load_input(cfg);
    MultiDegree bound = degree_bound(cfg.max_degree, I.n);
    ChernData chern = build_chern(I.n);
    SeriesFamily B = assemble_B(I.n, I, bound);

    std::vector<MultiDegree> items = degree_interval(bound);
    std::vector<EulerSeriesReport> reports(items.size());
    run_indexed(items.size(), jobs, [&](std::size_t i) {
        reports[i] = euler_series_check(B, chern, items[i], cfg.zeta_order);
    });

    nlohmann::json cases = nlohmann::json::array();
    long failed = 0;
    for (const EulerSeriesReport& r : reports)
        for (const ZetaCaseResult& z : r.cases) {
            nlohmann::json c{{"d", degree_json(r.d)},
                             {"zeta", z.monomial},
                             {"status", z.pass ? "pass" : "fail"}};
            if (!z.pass) {
                c["alpha_pole"] = z.alpha_pole;
                c["residual_denominator"] = z.residual;
                ++failed;
            }
            cases.push_back(std::move(c));
        }
    nlohmann::json rep{{"check", "euler-series"}, {"n", I.n},
                       {"max_degree", degree_json(bound)}, {"zeta_order", cfg.zeta_order},
                       {"cases", std::move(cases)}, {"failed", failed},
                       {"status", failed == 0 ? "pass" : "fail"}};
    return {failed == 0 ? 0 : 1, std::move(rep)};
}

inline RunOutcome run_mirror(const RunConfig& cfg, int) {
    IngestedSeries I = load_input(cfg);
    MultiDegree bound = degree_bound(cfg.max_degree, I.n);
    ChernData chern = build_chern(I.n);
    AlphaFamily bf = alpha_family_of(assemble_B(I.n, I, bound));

    nlohmann::json rep{{"check", "mirror-transform"},
                       {"n", I.n},
                       {"cutoff", degree_json(bound)}};
    MirrorResult res;
    try {
        res = mirror_transform(bf, chern, bound);
    } catch (const NonNormalizableError& e) {
        rep["status"] = "fail";
        rep["error"] = e.what();
        return {1, std::move(rep)};
    }

    nlohmann::json corrections = nlohmann::json::array();
    for (const auto& [d, c] : res.data.by_degree) {
        nlohmann::json gc = nlohmann::json::array(), ga = nlohmann::json::array();
        for (const RatFn& v : c.g_const) gc.push_back(v.to_string());
        for (const RatFn& v : c.g_alpha) ga.push_back(v.to_string());
        corrections.push_back({{"d", degree_json(d)},
                               {"f_const", c.f_const.to_string()},
                               {"f_alpha", c.f_alpha.to_string()},
                               {"g_const", std::move(gc)},
                               {"g_alpha", std::move(ga)}});
    }
    nlohmann::json a_out = nlohmann::json::array();
    bool degrees_ok = true;
    for (const auto& [d, s] : res.a) {
        nlohmann::json restrictions = nlohmann::json::object();
        for (const auto& [w, l] : s.at) restrictions[w.str()] = l.to_string();
        bool ok = d.is_zero() || alpha_degree_at_most(s, -2);
        degrees_ok = degrees_ok && ok;
        a_out.push_back({{"d", degree_json(d)},
                         {"alpha_degree_ok", ok},
                         {"restrictions", std::move(restrictions)}});
    }
    rep["corrections"] = std::move(corrections);
    rep["a"] = std::move(a_out);
    rep["trivial"] = res.data.trivial();
    rep["status"] = degrees_ok ? "pass" : "fail";
    return {degrees_ok ? 0 : 1, std::move(rep)};
}

// Deterministic expression sampler for the parser round-trip checks. Stays on
// the parseable alphabet (x, a, u/H/k/y with small indices).
inline FactoredExpr sample_expr(std::mt19937& rng) {
    auto pick = [&rng](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
    };
    auto nonzero = [&](int lo, int hi) {
        int v = 0;
        while (v == 0) v = pick(lo, hi);
        return v;
    };
    auto variable = [&]() {
        switch (pick(0, 5)) {
            case 0: return Variable::x();
            case 1: return Variable::alpha();
            case 2: return Variable::u(pick(1, 4));
            case 3: return Variable::y(pick(1, 3));
            case 4: return Variable::H(pick(1, 3));
            default: return Variable::kappa(pick(1, 3));
        }
    };
    Rat scalar(nonzero(-9, 9), pick(1, 9));
    scalar.canonicalize();
    FactoredExpr e = FactoredExpr::from_scalar(scalar);
    int nfactors = pick(1, 4);
    for (int f = 0; f < nfactors; ++f) {
        LinearForm form;
        int nterms = pick(1, 3);
        for (int t = 0; t < nterms; ++t) form.add_term(variable(), Rat(nonzero(-5, 5)));
        if (pick(0, 2) == 0) form.add_constant(Rat(nonzero(-7, 7)));
        if (form.is_zero()) continue;
        e.multiply_form(form, nonzero(-3, 3));
    }
    return e;
}

inline bool parser_round_trip(std::size_t count, unsigned seed, std::string& detail) {
    std::mt19937 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        FactoredExpr e = sample_expr(rng);
        std::string text = render_expr(e);
        FactoredExpr back;
        try {
            back = parse_expr(text);
        } catch (const ParseError& pe) {
            detail = "rejected own rendering '" + text + "': " + pe.what();
            return false;
        }
        if (!equals_exact(e, back) || render_expr(back) != text) {
            detail = "round trip changed '" + text + "' into '" + render_expr(back) + "'";
            return false;
        }
    }
    return true;
}

inline RunOutcome run_selftest(const RunConfig&, int) {
    nlohmann::json cases = nlohmann::json::array();
    long failed = 0;
    auto record = [&](const std::string& name, bool pass, const std::string& detail) {
        nlohmann::json c{{"name", name}, {"status", pass ? "pass" : "fail"}};
        if (!pass) {
            c["detail"] = detail;
            ++failed;
        }
        cases.push_back(std::move(c));
    };
    auto guarded = [&](const std::string& name, auto&& body) {
        std::string detail;
        bool pass = false;
        try {
            pass = body(detail);
        } catch (const Error& e) {
            detail = e.what();
        }
        record(name, pass, detail);
    };

    guarded("chern-oracle", [](std::string&) {
        build_chern(2);
        build_chern(3);
        return true;
    });
    guarded("euler-data", [](std::string& detail) {
        const std::pair<int, MultiDegree> sweeps[] = {{2, MultiDegree{{2}}},
                                                      {3, MultiDegree{{1, 1}}}};
        for (const auto& [n, d] : sweeps) {
            EulerDataReport r = verify_euler_data(n, d);
            if (!r.pass) {
                detail = "identity fails at n=" + std::to_string(n) + " d=" + d.str();
                return false;
            }
        }
        return true;
    });
    guarded("linking", [](std::string& detail) {
        for (int n : {2, 3})
            for (const Balloon& b : balloons(n))
                for (long delta = 1; delta <= (n == 2 ? 2 : 1); ++delta) {
                    LinkCase c = verify_link(b, delta, n);
                    if (!c.pass) {
                        detail = "balloon " + b.str() + " delta " + std::to_string(delta);
                        return false;
                    }
                }
        return true;
    });
    guarded("pairing-tables", [](std::string& detail) {
        for (int n = 2; n <= 4; ++n)
            for (const Balloon& b : balloons(n))
                for (int a = 1; a <= n - 1; ++a)
                    for (int c = 1; c <= n - 1; ++c) {
                        if (a == c) continue;
                        if (line_degree(a, c, b) != line_degree_table(a, c, b.i, b.j)) {
                            detail = "mismatch at n=" + std::to_string(n) + " balloon " + b.str();
                            return false;
                        }
                    }
        return true;
    });
    guarded("localization", [](std::string& detail) {
        for (int n = 2; n <= 4; ++n) {
            LocalizationSum unit = integrate_localization(GkmClass::constant(n, FactoredExpr::one()));
            if (!unit.is_polynomial() || !unit.numerator.is_zero()) {
                detail = "integral of 1 is nonzero at n=" + std::to_string(n);
                return false;
            }
            GkmClass et = GkmClass::zero(n);
            long expect = 1;
            for (int i = 2; i <= n; ++i) expect *= i;
            for (const Perm& w : fixed_points(n)) et.add_term(w, tangent_euler_class(w));
            LocalizationSum top = integrate_localization(et);
            if (!top.is_polynomial() || !(top.numerator == SparsePoly(Rat(expect)))) {
                detail = "integral of the euler class is not n! at n=" + std::to_string(n);
                return false;
            }
        }
        return true;
    });
    guarded("euler-series-degree-zero", [](std::string& detail) {
        ChernData chern = build_chern(2);
        SeriesFamily B;
        B.n = 2;
        GkmClass b0 = GkmClass::zero(2);
        for (const Perm& w : fixed_points(2)) b0.add_term(w, restrict_at(chern.omega, w));
        B.coeff.emplace(MultiDegree::zero(1), b0);
        EulerSeriesReport r = euler_series_check(B, chern, MultiDegree::zero(1), 2);
        if (!r.pass) detail = "degree-zero series condition fails";
        return r.pass;
    });
    guarded("mirror-round-trip", [](std::string& detail) {
        ChernData chern = build_chern(2);
        MultiDegree cutoff{{2}};
        AlphaFamily a;
        AlphaSeries a0;
        for (const Perm& w : fixed_points(2))
            a0.at.emplace(w, LaurentInAlpha::term(
                                 0, RatFn{expand_product(restrict_at(chern.omega, w))}));
        a.emplace(MultiDegree::zero(1), a0);
        for (long d = 1; d <= 2; ++d) {
            AlphaSeries s = alpha_series_constant(2, RatFn(Rat(d)));
            for (auto& [w, l] : s.at) l.shift(-2);
            a.emplace(MultiDegree{{d}}, std::move(s));
        }
        MirrorTransformData fg;
        fg.n = 2;
        fg.order = cutoff;
        fg.by_degree.emplace(MultiDegree{{1}},
                             MirrorCorrection{RatFn(Rat(3)), RatFn(Rat(-1)),
                                              {RatFn(Rat(2))}, {RatFn()}});
        fg.by_degree.emplace(MultiDegree{{2}},
                             MirrorCorrection{RatFn(), RatFn(Rat(1)), {RatFn()}, {RatFn(Rat(1))}});
        MirrorResult res = mirror_transform(mirror_compose(a, fg, cutoff, 2), chern, cutoff);
        if (!(res.data.by_degree == fg.by_degree) || !(res.a == a)) {
            detail = "extraction does not invert composition";
            return false;
        }
        return true;
    });
    guarded("parser-round-trip",
            [](std::string& detail) { return parser_round_trip(500, 911u, detail); });

    nlohmann::json rep{{"check", "selftest"},
                       {"cases", std::move(cases)},
                       {"failed", failed},
                       {"status", failed == 0 ? "pass" : "fail"}};
    return {failed == 0 ? 0 : 1, std::move(rep)};
}

inline std::string render_text(const nlohmann::json& rep) {
    std::ostringstream os;
    for (const auto& [k, v] : rep.items())
        if (!v.is_structured()) os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    for (const auto& [k, v] : rep.items()) {
        if (!v.is_structured()) continue;
        os << k << ":\n";
        for (const auto& el : v) os << "  " << el.dump() << "\n";
    }
    return os.str();
}

inline std::string summary_line(const nlohmann::json& rep, const std::string& path) {
    std::string s = rep.value("check", std::string("?"));
    s += ": " + rep.value("status", std::string("?"));
    if (rep.contains("cases"))
        s += " (" + std::to_string(rep["cases"].size()) + " cases, " +
             std::to_string(rep.value("failed", 0L)) + " failed)";
    s += " -> " + path;
    return s;
}

}  // namespace detail

inline RunOutcome run_command(const RunConfig& cfg) {
    int jobs = detail::resolve_jobs(cfg);
    if (cfg.command == "verify-euler-data") return detail::run_euler_data(cfg, jobs);
    if (cfg.command == "check-link") return detail::run_check_link(cfg, jobs);
    if (cfg.command == "degree-audit") return detail::run_degree_audit(cfg, jobs);
    if (cfg.command == "assemble-series") return detail::run_assemble(cfg, jobs);
    if (cfg.command == "euler-series-check") return detail::run_euler_series(cfg, jobs);
    if (cfg.command == "mirror-transform") return detail::run_mirror(cfg, jobs);
    if (cfg.command == "selftest") return detail::run_selftest(cfg, jobs);
    throw DataError("unknown command: " + cfg.command);
}

// Full batch entry point: run, stamp timing, write the report file, print a
// one-line summary. Config and input problems yield exit 2 with an error
// report; check failures yield exit 1; the report is written in every case.
inline int run_and_report(const RunConfig& cfg, std::ostream& console) {
    auto t0 = std::chrono::steady_clock::now();
    RunOutcome out;
    try {
        out = run_command(cfg);
    } catch (const Error& e) {
        out.exit_code = 2;
        out.report = {{"check", cfg.command.empty() ? "none" : cfg.command},
                      {"status", "error"},
                      {"error", e.what()}};
    } catch (const nlohmann::json::exception& e) {
        out.exit_code = 2;
        out.report = {{"check", cfg.command}, {"status", "error"}, {"error", e.what()}};
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    out.report["elapsed_ms"] = ms;

    std::string path = cfg.report_path;
    if (path.empty()) path = cfg.format == "text" ? "report.txt" : "report.json";
    std::ofstream f(path);
    if (cfg.format == "text")
        f << detail::render_text(out.report);
    else
        f << out.report.dump(2) << "\n";
    if (!f) {
        console << "cannot write report to " << path << "\n";
        return 2;
    }
    console << detail::summary_line(out.report, path) << "\n";
    return out.exit_code;
}

}  // namespace hypergeom
