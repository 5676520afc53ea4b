#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "rslab/io.hpp"
#include "rslab/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"verification lab for weighted curvature and isoperimetric inequalities on "
                 "rotationally symmetric spaces"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = "out";
    unsigned seed = 42;
    double tol_scale = 1.0;
    auto* run = app.add_subcommand("run", "run the checks of a scenario file");
    run->add_option("scenario", scenario_path, "scenario file (dotted key = value)")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--seed", seed, "seed for randomized audits");
    run->add_option("--tol-scale", tol_scale, "multiply every default tolerance");

    std::string family_path;
    int budget = 16;
    auto* explore = app.add_subcommand("explore", "parameter search for certified spaces");
    explore->add_option("family", family_path, "family file (family.alpha/beta/q lists)")
        ->required();
    explore->add_option("--budget", budget, "max evaluations")->required();
    explore->add_option("--out", out_dir, "output directory");

    auto* presets = app.add_subcommand("presets", "list radial profile presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const rslab::Scenario sc = rslab::parse_scenario_file(scenario_path);
            rslab::RunOptions opt;
            opt.out_dir = out_dir;
            opt.seed = seed;
            opt.tol_scale = tol_scale;
            const int code = rslab::run_scenario(sc, opt);
            std::cout << (code == 0 ? "pass" : code == 1 ? "violation" : "error")
                      << " (report: " << out_dir << "/report.json)\n";
            return code;
        }
        if (*explore) {
            const rslab::Scenario family = rslab::parse_scenario_file(family_path);
            const auto rows = rslab::explore_family(family, budget);
            const std::string table = rslab::explore_table_json(rows);
            rslab::write_file(out_dir + "/explore.json", table + "\n");
            std::printf("%-4s %-7s %-7s %-7s %-14s %-10s %s\n", "m", "alpha", "beta", "q",
                        "cd_margin", "certified", "avr");
            for (const auto& r : rows)
                std::printf("%-4d %-7g %-7g %-7g %-14.3e %-10s %.6e (+-%.1e)\n", r.m, r.alpha,
                            r.beta, r.q, r.cd_margin, r.certified ? "yes" : "no", r.avr,
                            r.avr_error);
            return 0;
        }
        if (*presets) {
            for (const auto& name : rslab::profile_preset_names()) std::cout << name << "\n";
            return 0;
        }
    } catch (const rslab::ScenarioError& e) {
        std::cerr << "scenario error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
