#include "rslab/transport.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <nlohmann/json.hpp>

#include "rslab/curvature.hpp"

namespace rslab {

namespace {

double wrap_angle(double d) {
    d = std::fmod(std::abs(d), 2.0 * M_PI);
    return d > M_PI ? 2.0 * M_PI - d : d;
}

}  // namespace

ArCertificate ar_membership(const RotSymSpace& space, const NeumannSolution& sol, double s_bar,
                            double r, const ArSampleSpec& spec) {
    if (!(s_bar > 0.0) || s_bar >= sol.domain.R)
        throw std::domain_error("ar_membership: s_bar in (0, R) required");
    if (!sol.in_U(s_bar)) return {false, 0.0, {s_bar, 0.0}, spec};

    const double up = sol.uprime_at(s_bar);
    const double image = s_bar + r * up;
    const double rho_img = std::abs(image);
    const double theta_img = image >= 0.0 ? 0.0 : M_PI;
    const double rhs = r * sol.u_at(s_bar) + 0.5 * r * r * up * up;

    ArCertificate cert;
    cert.spec = spec;
    cert.worst_margin = 1e300;

    auto scan = [&](double s_lo, double s_hi, int ns, double th_lo, double th_hi, int nt) {
        for (int i = 0; i < ns; ++i) {
            const double s = ns == 1 ? s_lo : s_lo + (s_hi - s_lo) * double(i) / (ns - 1);
            RadialPairDistance pair(space, s, rho_img);
            const double ru = r * sol.u_at(s);
            for (int j = 0; j < nt; ++j) {
                const double th = nt == 1 ? th_lo : th_lo + (th_hi - th_lo) * double(j) / (nt - 1);
                const double d = pair.dist(wrap_angle(th - theta_img));
                const double margin = ru + 0.5 * d * d - rhs;
                if (margin < cert.worst_margin) {
                    cert.worst_margin = margin;
                    cert.worst_x = {s, th};
                }
            }
        }
    };

    scan(0.0, sol.domain.R, spec.radial_points, 0.0, M_PI, spec.angular_points);
    double ds = sol.domain.R / std::max(1, spec.radial_points - 1);
    double dt = M_PI / std::max(1, spec.angular_points - 1);
    for (int round = 0; round < spec.refine_rounds; ++round) {
        const SlicePoint w = cert.worst_x;
        scan(std::max(0.0, w.s - ds), std::min(sol.domain.R, w.s + ds), 5,
             std::max(0.0, w.theta - dt), std::min(M_PI, w.theta + dt), 5);
        ds *= 0.5;
        dt *= 0.5;
    }
    cert.in_Ar = cert.worst_margin >= -spec.tol;
    return cert;
}

TransportAudit transport(const RotSymSpace& space, const NeumannSolution& sol, double s_bar,
                         double r, bool certify_ar, const ArSampleSpec& spec,
                         double jacobi_step) {
    if (!(s_bar > 0.0) || s_bar >= sol.domain.R)
        throw std::domain_error("transport: s_bar in (0, R) required");
    if (r < 0.0) throw std::domain_error("transport: r >= 0 required");

    TransportAudit audit;
    audit.base = s_bar;
    audit.r = r;
    audit.in_U = sol.in_U(s_bar);

    const double speed = sol.uprime_at(s_bar);
    audit.image = s_bar + r * speed;
    if (std::abs(audit.image) > space.r_max())
        throw std::domain_error("transport: image leaves the chart, raise r_max");

    const double d2u_rad = sol.usecond_at(s_bar);
    const Jet3 phi = space.warp().eval(s_bar);
    const double d2u_tan = sol.uprime_at(s_bar) * phi.d1 / phi.f;

    const JacobiPropagation prop =
        jacobi_propagate(space, s_bar, speed, {d2u_rad, d2u_tan}, r, jacobi_step);
    audit.detJ = std::abs(prop.states.back().detP);
    audit.conjugate_time = conjugate_scan(prop);

    const double f_val = sol.f_at(s_bar);
    const double ma = space.m() + space.alpha();
    audit.corollary_bound = std::pow(1.0 + r * std::pow(f_val, 1.0 / (ma - 1.0)), ma) *
                            space.density().value(s_bar);
    audit.w_image_detJ = space.density_signed(audit.image).f * audit.detJ;
    audit.jacobian_bound_ok = audit.w_image_detJ <= audit.corollary_bound + 1e-9;
    if (r > 0.0) audit.monotonicity = volume_expansion_series(space, prop, f_val);

    if (certify_ar && audit.in_U) {
        audit.ar = ar_membership(space, sol, s_bar, r, spec);
        if (audit.ar->in_Ar && audit.conjugate_time && *audit.conjugate_time < r)
            throw std::runtime_error(
                "transport: conjugate point before r at a certified contact point (Jacobi-field "
                "vanishing contradiction)");
    }
    return audit;
}

InclusionReport inclusion_audit(const RotSymSpace& space, const NeumannSolution& sol, double r,
                                int target_count, const ArSampleSpec& spec) {
    InclusionReport rep;
    rep.r = r;
    const double R = sol.domain.R;
    if (r <= R) {
        rep.vacuous = true;
        return rep;
    }
    auto image_radius = [&](double s) { return s + r * sol.uprime_at(s); };
    int covered = 0;
    for (int k = 0; k < target_count; ++k) {
        InclusionTarget tgt;
        tgt.rho = (r - R) * double(k) / target_count;  // [0, r - R)
        // image radius is 0 at the pole and R + r at the boundary; bisect
        double lo = 0.0, hi = R;
        if (image_radius(hi) < tgt.rho) {
            rep.targets.push_back(tgt);
            continue;
        }
        for (int it = 0; it < 200 && hi - lo > 1e-14 * R; ++it) {
            const double mid = 0.5 * (lo + hi);
            (image_radius(mid) < tgt.rho ? lo : hi) = mid;
        }
        tgt.preimage = 0.5 * (lo + hi);
        if (tgt.preimage <= 0.0) tgt.preimage = std::min(1e-9 * R, R / 2);
        const ArCertificate cert = ar_membership(space, sol, tgt.preimage, r, spec);
        tgt.margin = cert.worst_margin;
        tgt.certified = cert.in_Ar;
        if (tgt.certified) ++covered;
        rep.targets.push_back(tgt);
    }
    rep.coverage_fraction = double(covered) / target_count;
    return rep;
}

namespace {

double integral_over_U(const RotSymSpace& space, const NeumannSolution& sol,
                       const std::function<double(double)>& h) {
    const int m = space.m();
    double acc = 0.0;
    for (const auto& [a, b] : sol.U_set) {
        acc += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double s) {
                return h(s) * space.density().value(s) * std::pow(space.warp().value(s), m - 1);
            },
            a, b, 12, 1e-12);
    }
    return unit_sphere_area(m) * acc;
}

}  // namespace

SobolevReport sobolev_audit(const RotSymSpace& space, const BallDomain& K,
                            const RadialProfile& f0, const std::vector<double>& r_list,
                            double tol) {
    SobolevReport rep;
    const int m = space.m();
    const double ma = m + space.alpha();
    const double p = ma / (ma - 1.0);
    const double sigma = unit_sphere_area(m);

    const NeumannSolution sol = solve_neumann_radial(space, K, f0);
    rep.lambda = sol.lambda;
    rep.pde_residual = sol.pde_residual_max;
    rep.lemma1_max = verify_lemma1(space, sol).max_defect;

    auto measure = [&](double s) {
        return space.density().value(s) * std::pow(space.warp().value(s), m - 1);
    };
    rep.lhs = sigma * (boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                           [&](double s) { return std::abs(sol.fprime_at(s)) * measure(s); }, 0.0,
                           K.R, 12, 1e-13) +
                       sol.f_at(K.R) * measure(K.R));
    rep.integral_fp = sigma * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                                  [&](double s) { return std::pow(sol.f_at(s), p) * measure(s); },
                                  0.0, K.R, 12, 1e-13);
    rep.U_integral_fp =
        integral_over_U(space, sol, [&](double s) { return std::pow(sol.f_at(s), p); });

    const AvrEstimate avr = avr_estimate(space);
    rep.avr = avr.estimate;
    rep.avr_error = avr.extrapolation_error;
    rep.avr_settled = avr.settled;
    rep.trivial_rhs = rep.avr - rep.avr_error <= 0.0 && rep.avr <= 1e-9;

    rep.rhs = ma * std::pow(rep.avr, 1.0 / ma) * std::pow(rep.integral_fp, (ma - 1.0) / ma);
    rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
    rep.theorem_ok = rep.trivial_rhs || rep.lhs >= rep.rhs * (1.0 - tol);

    bool divided_tail_ok = true;
    for (double r : r_list) {
        ChainLink link;
        link.r = r;
        link.far_volume = r > K.R ? weighted_ball_volume(space, r - K.R) : 0.0;
        link.rhs_integral = integral_over_U(space, sol, [&](double s) {
            return std::pow(1.0 + r * std::pow(sol.f_at(s), 1.0 / (ma - 1.0)), ma);
        });
        const double rp = std::pow(r, ma);
        link.divided_far = link.far_volume / rp;
        link.divided_rhs = link.rhs_integral / rp;
        link.finite_link_ok = link.far_volume <= link.rhs_integral * (1.0 + tol);
        link.limit_link_ok = link.divided_far <= rep.U_integral_fp * (1.0 + tol) + tol;
        rep.chain.push_back(link);
        if (r == *std::max_element(r_list.begin(), r_list.end()))
            divided_tail_ok = link.limit_link_ok;
    }
    rep.limit_ok = (rep.avr <= rep.U_integral_fp * (1.0 + tol) + tol) &&
                   (r_list.empty() || divided_tail_ok);

    rep.hypothesis_certified = cd_scan(space).certified();
    return rep;
}

SobolevReport isoperimetric_check(const RotSymSpace& space, const BallDomain& K,
                                  const std::vector<double>& r_list, double tol) {
    const RadialProfile one = make_profile("const", {1.0}, space.r_max());
    return sobolev_audit(space, K, one, r_list, tol);
}

std::string SobolevReport::to_json() const {
    nlohmann::ordered_json j;
    j["lambda"] = lambda;
    j["hypothesis_certified"] = hypothesis_certified;
    j["lhs"] = lhs;
    j["integral_fp"] = integral_fp;
    j["U_integral_fp"] = U_integral_fp;
    j["avr"] = {{"estimate", avr}, {"error", avr_error}, {"settled", avr_settled}};
    j["rhs"] = rhs;
    j["trivial_rhs"] = trivial_rhs;
    j["ratio"] = ratio;
    j["theorem_ok"] = theorem_ok;
    j["limit_ok"] = limit_ok;
    j["lemma1_max"] = lemma1_max;
    j["pde_residual"] = pde_residual;
    j["chain"] = nlohmann::ordered_json::array();
    for (const auto& c : chain) {
        j["chain"].push_back({{"r", c.r},
                              {"far_volume", c.far_volume},
                              {"rhs_integral", c.rhs_integral},
                              {"divided_far", c.divided_far},
                              {"divided_rhs", c.divided_rhs},
                              {"finite_link_ok", c.finite_link_ok},
                              {"limit_link_ok", c.limit_link_ok}});
    }
    return j.dump(2);
}

}  // namespace rslab
