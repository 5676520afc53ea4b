#include "rslab/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "rslab/io.hpp"

namespace rslab {

std::pair<double, double> bakry_emery_eigs(const RotSymSpace& space, double r) {
    space.require_radius(r);
    const auto [ric_rr, ric_tt] = ricci_radial_tangential(space, r);
    const Jet3 w = space.density().eval(r);
    const double lw1 = w.d1 / w.f;
    const double lw2 = w.d2 / w.f - lw1 * lw1;
    const double radial = ric_rr - lw2 - lw1 * lw1 / space.alpha();
    const Jet3 phi = space.warp().eval(r);
    // tangential Hessian of log w is (log w)' phi'/phi; Dlogw (x) Dlogw is
    // rank-one radial, so it does not enter here
    const double tangential = ric_tt - lw1 * phi.d1 / phi.f;
    return {radial, tangential};
}

std::string to_string(CdVerdict v) {
    switch (v) {
        case CdVerdict::CertifiedNonnegative: return "certified-nonnegative";
        case CdVerdict::Violated: return "violated";
        default: return "inconclusive-near-zero";
    }
}

CdReport cd_scan(const RotSymSpace& space, const CdGridSpec& spec) {
    CdReport rep;
    const double r_hi = space.r_max();
    const double r_lo = r_hi * spec.r_lo_factor;
    rep.grid.reserve(spec.points);
    for (int i = 0; i < spec.points; ++i) {
        const double u = double(i) / (spec.points - 1);
        rep.grid.push_back(r_lo * std::pow(r_hi / r_lo, u));
    }
    rep.min_eig = 1e300;
    for (double r : rep.grid) {
        const auto [er, et] = bakry_emery_eigs(space, r);
        rep.radial_eig.push_back(er);
        rep.tangential_eig.push_back(et);
        if (std::min(er, et) < rep.min_eig) {
            rep.min_eig = std::min(er, et);
            rep.argmin_r = r;
        }
    }
    // local refinement around the coarse minimizer
    double lo = rep.argmin_r, hi = rep.argmin_r;
    for (std::size_t i = 0; i + 1 < rep.grid.size(); ++i) {
        if (rep.grid[i + 1] >= rep.argmin_r && rep.grid[i] <= rep.argmin_r) {
            lo = i > 0 ? rep.grid[i - 1] : rep.grid[i];
            hi = i + 2 < rep.grid.size() ? rep.grid[i + 2] : rep.grid[i + 1];
            break;
        }
    }
    for (int round = 0; round < spec.refine_rounds; ++round) {
        double best_r = rep.argmin_r;
        for (int i = 0; i <= spec.refine_points; ++i) {
            const double r = lo + (hi - lo) * double(i) / spec.refine_points;
            if (r <= 0.0 || r > r_hi) continue;
            const auto [er, et] = bakry_emery_eigs(space, r);
            if (std::min(er, et) < rep.min_eig) {
                rep.min_eig = std::min(er, et);
                best_r = r;
            }
        }
        const double span = (hi - lo) / spec.refine_points;
        rep.argmin_r = best_r;
        lo = std::max(r_lo * 1e-3, best_r - span);
        hi = std::min(r_hi, best_r + span);
    }
    if (rep.min_eig < -rep.tolerance)
        rep.verdict = CdVerdict::Violated;
    else if (rep.min_eig >= -1e-15)
        rep.verdict = CdVerdict::CertifiedNonnegative;
    else
        rep.verdict = CdVerdict::InconclusiveNearZero;
    return rep;
}

std::string CdReport::to_json() const {
    nlohmann::ordered_json j;
    j["verdict"] = rslab::to_string(verdict);
    j["min_eig"] = min_eig;
    j["argmin_r"] = argmin_r;
    j["tolerance"] = tolerance;
    j["grid"] = grid;
    j["radial_eig"] = radial_eig;
    j["tangential_eig"] = tangential_eig;
    return j.dump(2);
}

std::string CdReport::to_csv() const {
    std::vector<double> mins(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        mins[i] = std::min(radial_eig[i], tangential_eig[i]);
    return rslab::to_csv({{"r", &grid}, {"min_eig", &mins}});
}

double fd_crosscheck(const RotSymSpace& space, double r, double h) {
    if (!(h > 0.0) || r - 2 * h <= 0.0 || r + 2 * h > space.r_max())
        throw std::domain_error("fd_crosscheck: need r +- 2h inside (0, r_max)");
    auto logw = [&](double s) { return std::log(space.density().value(s)); };
    const double lw2_fd = (logw(r + h) - 2.0 * logw(r) + logw(r - h)) / (h * h);
    const double lw2 = space.d2logw_signed(r);
    double disc = std::abs(lw2_fd - lw2);

    // transverse Jacobi field along a radial geodesic is phi itself, so the
    // sectional curvature must reproduce -phi''/phi measured by differences
    auto phi = [&](double s) { return space.warp().value(s); };
    const double phi2_fd = (phi(r + h) - 2.0 * phi(r) + phi(r - h)) / (h * h);
    const double k_rad = sectional_curvatures(space, r).first;
    disc = std::max(disc, std::abs(phi2_fd + k_rad * phi(r)));
    return disc;
}

}  // namespace rslab
