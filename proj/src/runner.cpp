#include "rslab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <nlohmann/json.hpp>

#include "rslab/comparison.hpp"
#include "rslab/curvature.hpp"
#include "rslab/io.hpp"
#include "rslab/transport.hpp"

namespace rslab {

namespace {

using nlohmann::ordered_json;

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g;
    g.reserve(n);
    for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
    return g;
}

struct CheckContext {
    const Scenario& sc;
    const RunOptions& opt;
    RotSymSpace space;
    CdReport cd;
    ordered_json checks = ordered_json::array();
    bool violation = false;

    void emit_series(const std::string& name, const ComparisonSeries& s,
                     const std::string& title) {
        write_file(opt.out_dir + "/series/" + name + ".csv", s.to_csv());
        if (opt.plots) {
            std::vector<CsvColumn> cols;
            if (!s.normalized.empty()) cols.push_back({"normalized", &s.normalized});
            else cols.push_back({"value", &s.values});
            if (!s.bound.empty()) cols.push_back({"bound", &s.bound});
            write_file(opt.out_dir + "/plots/" + name + ".svg", to_svg(s.radii, cols, title));
        }
    }

    ordered_json violation_json(const ComparisonSeries& s) {
        if (!s.monotone_violation) return nullptr;
        return ordered_json{{"index", s.monotone_violation->index},
                            {"t", s.monotone_violation->t},
                            {"magnitude", s.monotone_violation->magnitude}};
    }

    // a violated series fails the run only under a certified hypothesis
    void assess(ordered_json& check, const ComparisonSeries& s, const std::string& label) {
        check[label] = violation_json(s);
        if (s.monotone_violation) {
            if (cd.certified()) {
                violation = true;
                check["status"] = "violation";
            } else {
                check["status"] = "hypothesis violated, monotonicity not required";
            }
        }
    }
};

void run_cd_scan(CheckContext& ctx) {
    ordered_json check;
    check["name"] = "cd-scan";
    check["status"] = "pass";
    check["verdict"] = to_string(ctx.cd.verdict);
    check["min_eig"] = ctx.cd.min_eig;
    check["argmin_r"] = ctx.cd.argmin_r;
    check["tolerance"] = ctx.cd.tolerance;
    check["grid"] = {{"points", ctx.cd.grid.size()}, {"lo", ctx.cd.grid.front()},
                     {"hi", ctx.cd.grid.back()}};
    write_file(ctx.opt.out_dir + "/series/cd_scan.csv", ctx.cd.to_csv());
    ctx.checks.push_back(check);
}

void run_bishop_gromov(CheckContext& ctx) {
    const double tol = 1e-9 * ctx.opt.tol_scale;
    const auto radii = log_grid(ctx.space.r_max() * 1e-2, ctx.space.r_max(),
                                (int)ctx.sc.get_integer("bishop_gromov.points", 64));
    ordered_json check;
    check["name"] = "bishop-gromov";
    check["status"] = "pass";
    check["tolerance"] = tol;
    check["grid"] = {{"points", radii.size()}, {"lo", radii.front()}, {"hi", radii.back()}};

    const auto ball = bishop_gromov(ctx.space, radii, BishopGromovMode::Ball, tol);
    const auto sphere = bishop_gromov(ctx.space, radii, BishopGromovMode::Sphere, tol);
    const auto mc = mean_curvature_comparison(ctx.space, radii, tol);
    const auto mcd = mean_curvature_differential(ctx.space, radii, tol);
    ctx.emit_series("bishop_gromov_ball", ball, "normalized weighted ball volume");
    ctx.emit_series("bishop_gromov_sphere", sphere, "normalized weighted sphere area");
    ctx.emit_series("mean_curvature", mc, "weighted mean curvature vs (m-1+a)/t");
    ctx.emit_series("mean_curvature_differential", mcd, "mean curvature Riccati bound");
    ctx.assess(check, ball, "ball_violation");
    ctx.assess(check, sphere, "sphere_violation");
    ctx.assess(check, mc, "mean_curvature_violation");
    ctx.assess(check, mcd, "mean_curvature_differential_violation");
    ctx.checks.push_back(check);
}

void run_avr(CheckContext& ctx) {
    const AvrEstimate avr =
        avr_estimate(ctx.space, (int)ctx.sc.get_integer("avr.dyadic_levels", 8));
    ordered_json check;
    check["name"] = "avr";
    check["status"] = avr.settled ? "pass" : "inconclusive";
    check["estimate"] = avr.estimate;
    check["extrapolation_error"] = avr.extrapolation_error;
    check["upper_bound"] = avr.upper_bound;
    check["settled"] = avr.settled;
    check["r_max"] = ctx.space.r_max();
    ctx.checks.push_back(check);
}

NeumannSolution solve_from_scenario(CheckContext& ctx) {
    const BallDomain K{ctx.sc.get_number("domain.R", 1.0)};
    const RadialProfile f0 = ctx.sc.make_f_profile(ctx.space.r_max());
    return solve_neumann_radial(ctx.space, K, f0, 1e-8 * ctx.opt.tol_scale,
                                (int)ctx.sc.get_integer("neumann.grid_points", 2049));
}

void run_neumann(CheckContext& ctx) {
    const NeumannSolution sol = solve_from_scenario(ctx);
    ordered_json check;
    check["name"] = "neumann";
    check["lambda"] = sol.lambda;
    check["pde_residual_max"] = sol.pde_residual_max;
    check["boundary_defect"] = sol.boundary_defect;
    check["grid_points"] = sol.grid.size();
    check["tolerance"] = 1e-8 * ctx.opt.tol_scale;
    ordered_json intervals = ordered_json::array();
    for (auto [a, b] : sol.U_set) intervals.push_back({a, b});
    check["U_set"] = intervals;
    check["status"] = sol.pde_residual_max <= 1e-8 * ctx.opt.tol_scale ? "pass" : "violation";
    if (check["status"] == "violation") ctx.violation = true;
    write_file(ctx.opt.out_dir + "/series/neumann.csv",
               to_csv({{"r", &sol.grid}, {"u", &sol.u}, {"uprime", &sol.uprime},
                       {"usecond", &sol.usecond}}));
    ctx.checks.push_back(check);
}

void run_lemma1(CheckContext& ctx) {
    const NeumannSolution sol = solve_from_scenario(ctx);
    const Lemma1Check lem = verify_lemma1(ctx.space, sol);
    const double tol = 1e-8 * ctx.opt.tol_scale;
    ordered_json check;
    check["name"] = "lemma1";
    check["max_defect"] = lem.max_defect;
    check["argmax_r"] = lem.argmax_r;
    check["tolerance"] = tol;
    check["status"] = lem.max_defect <= tol ? "pass" : "violation";
    if (check["status"] == "violation") ctx.violation = true;
    ctx.checks.push_back(check);
}

void run_riccati(CheckContext& ctx) {
    const NeumannSolution sol = solve_from_scenario(ctx);
    const double s_bar = ctx.sc.get_number("transport.s_bar", sol.domain.R / 2.0);
    const double T = ctx.sc.get_number("transport.r", 2.0);
    const double step = ctx.sc.get_number("jacobi.step", 1e-3);
    const Jet3 phi = ctx.space.warp().eval(s_bar);
    const auto prop = jacobi_propagate(
        ctx.space, s_bar, sol.uprime_at(s_bar),
        {sol.usecond_at(s_bar), sol.uprime_at(s_bar) * phi.d1 / phi.f}, T, step);
    const RiccatiCheck rc = riccati_check(prop);
    const double tol = 1e-6 * ctx.opt.tol_scale;
    ordered_json check;
    check["name"] = "riccati";
    check["max_residual"] = rc.max_residual;
    check["max_symmetry_defect"] = rc.max_symmetry_defect;
    check["max_trace_logdet_defect"] = rc.max_trace_logdet_defect;
    check["step"] = step;
    check["tolerance"] = tol;
    check["status"] =
        (rc.max_residual <= tol && rc.max_trace_logdet_defect <= tol) ? "pass" : "violation";
    if (check["status"] == "violation") ctx.violation = true;
    ctx.checks.push_back(check);
}

void run_transport(CheckContext& ctx) {
    const NeumannSolution sol = solve_from_scenario(ctx);
    const double s_bar = ctx.sc.get_number("transport.s_bar", sol.domain.R / 2.0);
    const double r = ctx.sc.get_number("transport.r", 2.0);
    const TransportAudit audit = transport(ctx.space, sol, s_bar, r, /*certify_ar=*/true);
    ordered_json check;
    check["name"] = "transport";
    check["status"] = "pass";
    check["base"] = audit.base;
    check["r"] = audit.r;
    check["image"] = audit.image;
    check["in_U"] = audit.in_U;
    check["detJ"] = audit.detJ;
    check["w_image_detJ"] = audit.w_image_detJ;
    check["corollary_bound"] = audit.corollary_bound;
    check["jacobian_bound_ok"] = audit.jacobian_bound_ok;
    check["conjugate_time"] =
        audit.conjugate_time ? ordered_json(*audit.conjugate_time) : ordered_json(nullptr);
    if (audit.ar) {
        check["in_Ar"] = audit.ar->in_Ar;
        check["ar_worst_margin"] = audit.ar->worst_margin;
        check["ar_grid"] = {{"radial", audit.ar->spec.radial_points},
                            {"angular", audit.ar->spec.angular_points},
                            {"tol", audit.ar->spec.tol}};
    }
    ctx.emit_series("volume_expansion", audit.monotonicity, "normalized transported volume");
    ctx.assess(check, audit.monotonicity, "monotonicity_violation");
    if (ctx.cd.certified() && audit.ar && audit.ar->in_Ar && !audit.jacobian_bound_ok) {
        check["status"] = "violation";
        ctx.violation = true;
    }
    ctx.checks.push_back(check);
}

void run_inclusion(CheckContext& ctx) {
    const NeumannSolution sol = solve_from_scenario(ctx);
    const auto r_list = ctx.sc.get_numbers("inclusion.r", {5.0, 10.0, 50.0});
    const int targets = (int)ctx.sc.get_integer("inclusion.targets", 64);
    ordered_json check;
    check["name"] = "inclusion";
    check["status"] = "pass";
    check["targets"] = targets;
    ordered_json per_r = ordered_json::array();
    for (double r : r_list) {
        const InclusionReport rep = inclusion_audit(ctx.space, sol, r, targets);
        per_r.push_back({{"r", r},
                         {"vacuous", rep.vacuous},
                         {"coverage_fraction", rep.coverage_fraction}});
        if (!rep.vacuous && rep.coverage_fraction < 1.0 && ctx.cd.certified()) {
            check["status"] = "violation";
            ctx.violation = true;
        }
    }
    check["runs"] = per_r;
    ctx.checks.push_back(check);
}

void run_sobolev(CheckContext& ctx, bool isoperimetric) {
    const BallDomain K{ctx.sc.get_number("domain.R", 1.0)};
    const auto r_list = ctx.sc.get_numbers("sobolev.r_list", {10.0, 100.0, 1000.0});
    const SobolevReport rep =
        isoperimetric ? isoperimetric_check(ctx.space, K, r_list)
                      : sobolev_audit(ctx.space, K, ctx.sc.make_f_profile(ctx.space.r_max()),
                                      r_list);
    ordered_json check = ordered_json::parse(rep.to_json());
    check["name"] = isoperimetric ? "isoperimetric" : "sobolev";
    const bool ok = rep.theorem_ok && rep.limit_ok && rep.lemma1_max <= 1e-8 * ctx.opt.tol_scale;
    if (!ok && rep.hypothesis_certified) {
        check["status"] = "violation";
        ctx.violation = true;
    } else if (!rep.hypothesis_certified) {
        check["status"] = "hypothesis-violated";
    } else {
        check["status"] = "pass";
    }
    ctx.checks.push_back(check);
}

}  // namespace

int run_scenario(const Scenario& scenario, const RunOptions& options) {
    ordered_json report;
    try {
        CheckContext ctx{scenario, options, scenario.make_space(), {}};
        ctx.cd = cd_scan(ctx.space);

        auto checks = scenario.get_strings("checks");
        if (checks.empty()) checks = {"cd-scan"};
        for (const auto& name : checks) {
            if (name == "cd-scan") run_cd_scan(ctx);
            else if (name == "bishop-gromov") run_bishop_gromov(ctx);
            else if (name == "avr") run_avr(ctx);
            else if (name == "neumann") run_neumann(ctx);
            else if (name == "lemma1") run_lemma1(ctx);
            else if (name == "riccati") run_riccati(ctx);
            else if (name == "transport") run_transport(ctx);
            else if (name == "inclusion") run_inclusion(ctx);
            else if (name == "sobolev") run_sobolev(ctx, false);
            else if (name == "isoperimetric") run_sobolev(ctx, true);
            else throw ScenarioError("unknown check '" + name + "'", 0, "checks");
        }

        report["verdict"] = ctx.violation ? "violation" : "pass";
        report["hypothesis"] = to_string(ctx.cd.verdict);
        report["seed"] = options.seed;
        report["tol_scale"] = options.tol_scale;
        report["checks"] = ctx.checks;
        write_file(options.out_dir + "/report.json", report.dump(2) + "\n");

        ordered_json meta;
        meta["timestamp_utc"] =
            std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count();
        ordered_json echo;
        for (const auto& [k, v] : scenario.raw) echo[k] = v;
        meta["scenario"] = echo;
        write_file(options.out_dir + "/meta.json", meta.dump(2) + "\n");
        return ctx.violation ? 1 : 0;
    } catch (const ScenarioError& e) {
        report["verdict"] = "configuration-error";
        report["error"] = e.what();
        write_file(options.out_dir + "/report.json", report.dump(2) + "\n");
        return 2;
    } catch (const std::exception& e) {
        report["verdict"] = "numerical-error";
        report["error"] = e.what();
        write_file(options.out_dir + "/report.json", report.dump(2) + "\n");
        return 2;
    }
}

std::vector<ExploreRow> explore_family(const Scenario& family, int budget) {
    if (budget < 1) throw ScenarioError("explore: budget >= 1 required", 0, "budget");
    const int m = (int)family.get_integer("family.m", 2);
    const double r_max = family.get_number("family.r_max", 256.0);
    const auto alphas = family.get_numbers("family.alpha", {1.0});
    const auto betas = family.get_numbers("family.beta", {1.0});
    const auto qs = family.get_numbers("family.q", {0.0});

    std::vector<ExploreRow> rows;
    for (double alpha : alphas) {
        for (double beta : betas) {
            for (double q : qs) {
                if ((int)rows.size() >= budget) break;
                ExploreRow row{m, alpha, beta, q};
                try {
                    RadialProfile warp = beta >= 1.0
                                             ? make_profile("euclidean", {}, r_max)
                                             : make_profile("capped_power", {beta}, r_max);
                    RadialProfile density = q == 0.0
                                                ? make_profile("const", {1.0}, r_max)
                                                : make_profile("power_density", {q}, r_max);
                    RotSymSpace space(m, alpha, std::move(warp), std::move(density));
                    const CdReport cd = cd_scan(space);
                    row.cd_margin = cd.min_eig;
                    row.certified = cd.certified();
                    const AvrEstimate avr = avr_estimate(space);
                    row.avr = avr.estimate;
                    row.avr_error = avr.extrapolation_error;
                    row.avr_settled = avr.settled;
                } catch (const std::exception&) {
                    row.cd_margin = -1e300;
                }
                rows.push_back(row);
            }
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ExploreRow& a, const ExploreRow& b) {
        if (a.certified != b.certified) return a.certified;
        if (a.certified && a.avr != b.avr) return a.avr > b.avr;
        return a.cd_margin > b.cd_margin;
    });
    return rows;
}

std::string explore_table_json(const std::vector<ExploreRow>& rows) {
    ordered_json j = ordered_json::array();
    for (const auto& r : rows) {
        j.push_back({{"m", r.m},
                     {"alpha", r.alpha},
                     {"beta", r.beta},
                     {"q", r.q},
                     {"cd_margin", r.cd_margin},
                     {"certified", r.certified},
                     {"avr", r.avr},
                     {"avr_error", r.avr_error},
                     {"avr_settled", r.avr_settled}});
    }
    return j.dump(2);
}

}  // namespace rslab
