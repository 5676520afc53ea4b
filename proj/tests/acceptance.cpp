// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] is the lab executable, argv[2] the scenario directory.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "rslab/curvature.hpp"
#include "rslab/geodesic.hpp"
#include "rslab/transport.hpp"

using namespace rslab;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int n, bool ok, const std::string& what) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << what << std::endl;
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RotSymSpace flat(int m = 2, double alpha = 1.0, double r_max = 1000.0) {
    return RotSymSpace(m, alpha, make_profile("euclidean", {}, r_max),
                       make_profile("const", {1.0}, r_max));
}

RadialProfile unit_f(double r_max = 1000.0) { return make_profile("const", {1.0}, r_max); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---- criteria -------------------------------------------------------------

void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    const double R = 1.0;
    for (int m : {2, 3, 4}) {
        for (double alpha : {0.5, 1.0, 2.0}) {
            const RotSymSpace sp = flat(m, alpha);
            const NeumannSolution sol = solve_neumann_radial(sp, {R}, unit_f());
            const double lam_exact = std::pow(m / ((m + alpha) * R), m + alpha - 1.0);
            ok = ok && std::abs(sol.lambda - lam_exact) <= 1e-12 * lam_exact;
            double sup_u = 0.0;
            for (std::size_t i = 0; i < sol.grid.size(); ++i) {
                const double s = sol.grid[i];
                sup_u = std::max(sup_u, std::abs(sol.u[i] - s * s / (2.0 * R)));
            }
            ok = ok && sup_u <= 1e-8;
            ok = ok && std::abs(verify_lemma1(sp, sol).max_defect) <= 1e-8;
        }
    }
    const double dt = seconds_since(t0);
    report(1, ok && dt < 5.0,
           "flat equality benchmark (lambda 1e-12, u 1e-8, divergence equality 1e-8, " +
               std::to_string(dt) + "s < 5s)");
}

void criterion2() {
    const RotSymSpace sp = flat();
    const JacobiPropagation prop = jacobi_propagate(sp, 0.5, 0.5, {1.0, 1.0}, 2.0, 1e-3);
    const ComparisonSeries s = volume_expansion_series(sp, prop, 4.0 / 9.0);
    bool ok = !s.normalized.empty() && !s.monotone_violation.has_value();
    auto at = [&](double t) {
        for (std::size_t i = 0; i < s.radii.size(); ++i)
            if (std::abs(s.radii[i] - t) < 1e-9) return s.normalized[i];
        return -1.0;
    };
    ok = ok && std::abs(at(0.0) - 1.0) <= 1e-8;
    ok = ok && std::abs(at(1.0) - 0.864) <= 1e-8;
    ok = ok && std::abs(at(2.0) - 243.0 / 343.0) <= 1e-8;
    for (std::size_t i = 1; i < s.normalized.size() && ok; ++i)
        ok = s.normalized[i] <= s.normalized[i - 1] + 1e-9;
    report(2, ok, "normalized transported volume: 1, 0.864, 243/343 at t = 0, 1, 2; nonincreasing");
}

void criterion3() {
    struct Preset {
        const char* warp;
        const char* density;
        std::vector<double> wp, dp;
        double r_max;
    };
    const Preset presets[] = {
        {"euclidean", "const", {}, {1.0}, 50.0},
        {"hyperbolic_like", "const", {}, {1.0}, 20.0},
        {"capped_power", "const", {0.5}, {1.0}, 50.0},
        {"euclidean", "gaussian_density", {}, {}, 12.0},
        {"euclidean", "power_density", {}, {2.0}, 50.0},
    };
    bool ok = true;
    for (const Preset& p : presets) {
        const RotSymSpace sp(2, 1.0, make_profile(p.warp, p.wp, p.r_max),
                             make_profile(p.density, p.dp, p.r_max));
        const RiccatiCheck coarse =
            riccati_check(jacobi_propagate(sp, 0.5, 0.5, {0.8, 0.7}, 2.0, 1e-3));
        const RiccatiCheck fine =
            riccati_check(jacobi_propagate(sp, 0.5, 0.5, {0.8, 0.7}, 2.0, 5e-4));
        ok = ok && coarse.max_trace_logdet_defect <= 1e-6 && coarse.max_residual <= 1e-6;
        ok = ok && fine.max_residual <= coarse.max_residual / 3.0 + 1e-14;
    }
    report(3, ok, "Riccati/log-det consistency <= 1e-6 at step 1e-3; halving reduces >= 3x");
}

void criterion4() {
    bool ok = true;
    // conservation along non-radial launches
    for (const RotSymSpace& sp :
         {flat(2, 1.0, 100.0), RotSymSpace(2, 1.0, make_profile("hyperbolic_like", {}, 12.0),
                                           make_profile("const", {1.0}, 12.0))}) {
        const GeodesicPath path = integrate_geodesic(
            sp, {1.0, 0.2}, std::cos(1.1), std::sin(1.1) / sp.warp().value(1.0), 5.0, 1e-3);
        const double c0 = path.samples.front().clairaut, e0 = path.samples.front().energy;
        for (const auto& s : path.samples) {
            ok = ok && std::abs(s.clairaut - c0) <= 1e-8 * (1.0 + s.t);
            ok = ok && std::abs(s.energy - e0) <= 1e-8 * (1.0 + s.t);
        }
    }
    // 20x20 grid against the planar law of cosines
    const RotSymSpace sp = flat(2, 1.0, 100.0);
    double worst = 0.0;
    for (int i = 1; i <= 20; ++i)
        for (int j = 1; j <= 20; ++j) {
            const double r1 = 0.25 * i, r2 = 0.35 * j, th = 2.9 * j / 20.0;
            const double exact = std::sqrt(r1 * r1 + r2 * r2 - 2 * r1 * r2 * std::cos(th));
            worst = std::max(worst, std::abs(distance(sp, {r1, 0.0}, {r2, th}) - exact));
        }
    ok = ok && worst <= 1e-6;
    // symmetry over 100 random pairs
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> rad(0.01, 5.0), ang(0.0, 2.0 * M_PI);
    double asym = 0.0;
    for (int k = 0; k < 100; ++k) {
        const SlicePoint p{rad(rng), ang(rng)}, q{rad(rng), ang(rng)};
        asym = std::max(asym, std::abs(distance(sp, p, q) - distance(sp, q, p)));
    }
    ok = ok && asym <= 1e-6;
    report(4, ok, "geodesics: invariant drift <= 1e-8/unit time, flat distances and symmetry 1e-6");
}

void criterion5() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    // flat normalized ball series is pi/r and nonincreasing
    std::vector<double> radii;
    for (double r = 0.5; r <= 100.0; r *= 1.3) radii.push_back(r);
    const ComparisonSeries ball = bishop_gromov(flat(), radii, BishopGromovMode::Ball);
    ok = ok && !ball.monotone_violation.has_value();
    for (std::size_t i = 0; i < radii.size(); ++i)
        ok = ok && std::abs(ball.normalized[i] - M_PI / radii[i]) <= 1e-6;
    // weighted mean curvature bound on [0.01, 50] for flat and power density
    std::vector<double> tg;
    for (double t = 0.01; t <= 50.0; t *= 1.1) tg.push_back(t);
    const RotSymSpace pd(2, 2.0, make_profile("euclidean", {}, 60.0),
                         make_profile("power_density", {2.0}, 60.0));
    for (const RotSymSpace& sp : {flat(2, 1.0, 60.0), pd}) {
        const double c = sp.m() - 1 + sp.alpha();
        const ComparisonSeries mc = mean_curvature_comparison(sp, tg);
        ok = ok && !mc.monotone_violation.has_value();
        for (std::size_t i = 0; i < tg.size(); ++i)
            ok = ok && mc.values[i] * tg[i] <= c + 1e-9;
    }
    // the hyperbolic warp must trigger a detected violation
    const RotSymSpace hy(2, 1.0, make_profile("hyperbolic_like", {}, 12.0),
                         make_profile("const", {1.0}, 12.0));
    std::vector<double> ht;
    for (double t = 0.5; t <= 10.0; t += 0.5) ht.push_back(t);
    ok = ok && mean_curvature_comparison(hy, ht).monotone_violation.has_value();
    const double dt = seconds_since(t0);
    report(5, ok && dt < 30.0,
           "volume/mean-curvature comparisons with hyperbolic counterexample (" +
               std::to_string(dt) + "s < 30s)");
}

void criterion6() {
    const RotSymSpace sp(2, 1.0, make_profile("euclidean", {}, 12.0),
                         make_profile("gaussian_density", {}, 12.0));
    const CdReport rep = cd_scan(sp);
    bool ok = rep.verdict == CdVerdict::Violated;
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        const double r = rep.grid[i];
        ok = ok && std::abs(rep.radial_eig[i] - (1.0 - r * r)) <= 1e-8;
    }
    // bisect the sign change of the radial eigenvalue to locate the crossing
    double lo = 0.5, hi = 2.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (bakry_emery_eigs(sp, mid).first > 0.0 ? lo : hi) = mid;
    }
    ok = ok && std::abs(0.5 * (lo + hi) - 1.0) <= 1e-4;
    report(6, ok, "gaussian-density scan: radial eigenvalue 1 - r^2, crossing at r = 1, violated");
}

void criterion7() {
    const AvrEstimate a = avr_estimate(flat(2, 1.0, 1000.0));
    const bool ok = a.estimate <= 1e-3 && a.estimate - a.extrapolation_error <= 0.0 &&
                    a.estimate + a.extrapolation_error >= 0.0;
    report(7, ok, "flat asymptotic volume ratio <= 1e-3 at r_max = 1e3 with error bar covering 0");
}

void criterion8() {
    const auto t0 = std::chrono::steady_clock::now();
    const RotSymSpace sp = flat();
    const NeumannSolution sol = solve_neumann_radial(sp, {1.0}, unit_f());
    bool ok = true;
    for (double r : {5.0, 10.0, 50.0}) {
        const InclusionReport rep = inclusion_audit(sp, sol, r, 64);
        ok = ok && !rep.vacuous && rep.coverage_fraction == 1.0;
    }
    const double dt = seconds_since(t0);
    report(8, ok && dt < 60.0,
           "far-set inclusion coverage 1.0 at r = 5, 10, 50 (" + std::to_string(dt) + "s < 60s)");
}

void criterion9() {
    const SobolevReport rep = sobolev_audit(flat(), {1.0}, unit_f(), {10.0, 100.0, 1000.0});
    bool ok = rep.trivial_rhs && rep.theorem_ok && rep.limit_ok;
    ok = ok && std::abs(rep.lhs - 8.0 * M_PI / 9.0) <= 1e-8;
    ok = ok && rep.chain.size() == 3 && rep.chain.back().r == 1000.0;
    for (const ChainLink& link : rep.chain) ok = ok && link.limit_link_ok;
    const double divided = rep.chain.back().divided_far;
    ok = ok && std::abs(divided - M_PI * 999.0 * 999.0 / 1e9) <= 1e-8;
    report(9, ok, "flat functional inequality: trivial rhs, lhs = 8 pi / 9, limit-form chain");
}

void criterion10(const std::string& lab, const std::string& scenario_dir, double elapsed_before) {
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path base = fs::temp_directory_path() / "rslab_acceptance";
    fs::remove_all(base);
    fs::create_directories(base);
    bool ok = true;
    // every bundled scenario must complete without a hard failure (exit 0)
    for (const char* name : {"flat", "gaussian_density", "hyperbolic", "power_density"}) {
        const std::string cmd = "\"" + lab + "\" run \"" + scenario_dir + "/" + name +
                                ".scn\" --seed 7 --out \"" + (base / name).string() +
                                "\" > /dev/null 2>&1";
        ok = ok && std::system(cmd.c_str()) == 0;
    }
    // byte-determinism of the report under a fixed seed
    const std::string rerun = "\"" + lab + "\" run \"" + scenario_dir +
                              "/flat.scn\" --seed 7 --out \"" + (base / "flat_again").string() +
                              "\" > /dev/null 2>&1";
    ok = ok && std::system(rerun.c_str()) == 0;
    const std::string a = slurp(base / "flat" / "report.json");
    const std::string b = slurp(base / "flat_again" / "report.json");
    ok = ok && !a.empty() && a == b;
    fs::remove_all(base);
    const double total = elapsed_before + seconds_since(t0);
    report(10, ok && total < 300.0,
           "full suite byte-deterministic under seed 7 (" + std::to_string(total) + "s < 300s)");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <lab-binary> <scenario-dir>" << std::endl;
        return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    try {
        criterion1();
        criterion2();
        criterion3();
        criterion4();
        criterion5();
        criterion6();
        criterion7();
        criterion8();
        criterion9();
        criterion10(argv[1], argv[2], seconds_since(t0));
    } catch (const std::exception& e) {
        std::cout << "FAIL: unexpected exception: " << e.what() << std::endl;
        return 1;
    }
    return g_failures == 0 ? 0 : 1;
}
