#include <iostream>

#include <CLI11.hpp>

#include "hypergeom/driver.hpp"

// Batch front end. Option validation that depends on semantics (rank range,
// degree shape, input contents) lives in the driver so that every config
// problem exits with code 2; CLI11 handles only the surface syntax.
int main(int argc, char** argv) {
    CLI::App app{"Exact verification toolkit for equivariant flag-manifold series data"};
    app.require_subcommand(1);

    hypergeom::RunConfig cfg;

    auto common = [&cfg](CLI::App* sub) {
        sub->add_option("--jobs", cfg.jobs,
                        "Worker threads (default: HYPERGEOM_JOBS, then hardware)");
        sub->add_option("--report", cfg.report_path,
                        "Report path (default report.json or report.txt)");
        sub->add_option("--format", cfg.format, "Report format")
            ->check(CLI::IsMember({"json", "text"}));
        sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
    };
    auto rank = [&cfg](CLI::App* sub, bool required) {
        auto* o = sub->add_option("--n", cfg.n, "Flag manifold rank");
        if (required) o->required();
    };
    auto degree = [&cfg](CLI::App* sub, const char* help) {
        sub->add_option("--max-degree", cfg.max_degree, help)->required();
    };
    auto input = [&cfg](CLI::App* sub) {
        sub->add_option("--input", cfg.input_path, "Restriction data file (JSON)")->required();
    };

    CLI::App* euler = app.add_subcommand(
        "verify-euler-data", "Check the defining identity for every r below the degree bound");
    rank(euler, true);
    degree(euler, "Degree bound: scalar or comma-separated components");
    common(euler);

    CLI::App* link = app.add_subcommand(
        "check-link", "Check the balloon values of the degree-zero pullbacks");
    rank(link, true);
    link->add_option("--delta-max", cfg.delta_max, "Largest balloon multiple");
    common(link);

    CLI::App* audit = app.add_subcommand(
        "degree-audit", "Tabulate exact alpha degrees against the stated bound");
    rank(audit, true);
    degree(audit, "Degree bound: scalar or comma-separated components");
    common(audit);

    CLI::App* assemble = app.add_subcommand(
        "assemble-series", "Assemble series coefficients from a restriction data file");
    rank(assemble, false);
    degree(assemble, "Assembly cutoff: scalar or comma-separated components");
    input(assemble);
    common(assemble);

    CLI::App* eseries = app.add_subcommand(
        "euler-series-check", "Check the quadratic series condition on assembled coefficients");
    rank(eseries, false);
    degree(eseries, "Degree sweep bound: scalar or comma-separated components");
    eseries->add_option("--zeta-order", cfg.zeta_order, "Total order of formal monomials");
    input(eseries);
    common(eseries);

    CLI::App* mirror = app.add_subcommand(
        "mirror-transform", "Extract normalizing corrections and the transformed series");
    rank(mirror, false);
    degree(mirror, "Transform cutoff: scalar or comma-separated components");
    input(mirror);
    common(mirror);

    CLI::App* self = app.add_subcommand("selftest", "Run the built-in sanity battery");
    common(self);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return hypergeom::run_and_report(cfg, std::cout);
}
