#include "rslab/space.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

namespace rslab {

namespace {
constexpr double kPoleEps = 1e-7;
}

double unit_sphere_area(int m) {
    if (m < 1) throw std::domain_error("unit_sphere_area: m >= 1 required");
    return 2.0 * std::pow(M_PI, 0.5 * m) / std::tgamma(0.5 * m);
}

RotSymSpace::RotSymSpace(int m, double alpha, RadialProfile warp, RadialProfile density)
    : m_(m), alpha_(alpha), r_max_(std::min(warp.r_max(), density.r_max())),
      warp_(std::move(warp)), density_(std::move(density)) {
    if (m_ < 2) throw std::domain_error("RotSymSpace: m >= 2 required");
    if (alpha_ <= 0.0) throw std::domain_error("RotSymSpace: alpha > 0 required");
    warp_.validate_as_warp();
    density_.validate_as_density();
}

void RotSymSpace::require_radius(double r) const {
    if (!(r > 0.0) || r > r_max_ * (1.0 + 1e-12))
        throw std::domain_error("radius outside (0, r_max]");
}

Jet3 RotSymSpace::warp_signed(double s) const {
    if (s >= 0.0) return warp_.eval(s);
    Jet3 j = warp_.eval(-s);
    // odd extension: phi(-s) = -phi(s)
    return {-j.f, j.d1, -j.d2, j.d3};
}

Jet3 RotSymSpace::density_signed(double s) const {
    if (s >= 0.0) return density_.eval(s);
    Jet3 j = density_.eval(-s);
    // even extension
    return {j.f, -j.d1, j.d2, -j.d3};
}

double RotSymSpace::dlogw_signed(double s) const {
    const Jet3 w = density_signed(s);
    return w.d1 / w.f;
}

double RotSymSpace::d2logw_signed(double s) const {
    const Jet3 w = density_signed(s);
    return w.d2 / w.f - (w.d1 / w.f) * (w.d1 / w.f);
}

std::pair<double, double> sectional_curvatures(const RotSymSpace& space, double r) {
    space.require_radius(r);
    const Jet3 phi = space.warp().eval(r);
    if (r < kPoleEps) {
        // phi ~ r + c r^3: both curvatures tend to -phi'''(0)
        const double k0 = -space.warp().eval(0.0).d3;
        return {k0, k0};
    }
    const double k_rad = -phi.d2 / phi.f;
    const double k_tan = (1.0 - phi.d1 * phi.d1) / (phi.f * phi.f);
    return {k_rad, k_tan};
}

std::pair<double, double> ricci_radial_tangential(const RotSymSpace& space, double r) {
    const auto [k_rad, k_tan] = sectional_curvatures(space, r);
    const int m = space.m();
    return {(m - 1) * k_rad, k_rad + (m - 2) * k_tan};
}

std::pair<double, double> hessian_radial(const RotSymSpace& space, const RadialProfile& u,
                                         double r) {
    if (r < 0.0) throw std::domain_error("hessian_radial: r >= 0 required");
    const Jet3 uj = u.eval(r);
    if (r < kPoleEps) return {uj.d2, uj.d2};  // smoothness at the pole
    const Jet3 phi = space.warp().eval(r);
    return {uj.d2, uj.d1 * phi.d1 / phi.f};
}

double weighted_sphere_area(const RotSymSpace& space, double t) {
    space.require_radius(t);
    const double phi = space.warp().value(t);
    return unit_sphere_area(space.m()) * space.density().value(t) *
           std::pow(phi, space.m() - 1);
}

double weighted_ball_volume(const RotSymSpace& space, double R) {
    space.require_radius(R);
    const int m = space.m();
    auto integrand = [&](double s) {
        return space.density().value(s) * std::pow(space.warp().value(s), m - 1);
    };
    double err = 0.0;
    const double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 0.0, R, 12, 1e-12, &err);
    const double result = unit_sphere_area(m) * q;
    if (err > 1e-8 * std::max(1.0, std::abs(q)))
        throw std::runtime_error("weighted_ball_volume: quadrature did not converge, error " +
                                 std::to_string(err));
    return result;
}

}  // namespace rslab
