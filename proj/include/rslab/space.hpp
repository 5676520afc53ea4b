#pragma once

#include <utility>

#include "rslab/profile.hpp"

namespace rslab {

/// Surface area of the unit (m-1)-sphere in R^m.
double unit_sphere_area(int m);

/// Rotationally symmetric manifold-with-density: metric dr^2 + phi(r)^2 times
/// the round (m-1)-sphere, density w(r), Bakry-Emery parameter alpha. The
/// weighted volume form is sigma_{m-1} w phi^{m-1} dr.
/// Immutable after construction; safe to share across threads.
class RotSymSpace {
public:
    RotSymSpace(int m, double alpha, RadialProfile warp, RadialProfile density);

    int m() const { return m_; }
    double alpha() const { return alpha_; }
    double r_max() const { return r_max_; }
    const RadialProfile& warp() const { return warp_; }
    const RadialProfile& density() const { return density_; }

    /// phi jet at a signed radius (odd extension through the pole).
    Jet3 warp_signed(double s) const;
    /// w jet at a signed radius (even extension).
    Jet3 density_signed(double s) const;
    /// d/ds [log w(|s|)] and d^2/ds^2 at a signed radius.
    double dlogw_signed(double s) const;
    double d2logw_signed(double s) const;

    void require_radius(double r) const;  // throws std::domain_error outside (0, r_max]

private:
    int m_;
    double alpha_;
    double r_max_;
    RadialProfile warp_;
    RadialProfile density_;
};

/// Sectional curvatures of the radial plane (-phi''/phi) and of a tangential
/// plane ((1 - phi'^2)/phi^2). Continuous limit -phi'''(0) is used at the pole.
std::pair<double, double> sectional_curvatures(const RotSymSpace& space, double r);

/// Ricci curvature in the unit radial and unit tangential directions.
std::pair<double, double> ricci_radial_tangential(const RotSymSpace& space, double r);

/// Hessian eigenvalues (radial u'', tangential u' phi'/phi) of a radial
/// function; both collapse to u''(0) at the pole.
std::pair<double, double> hessian_radial(const RotSymSpace& space, const RadialProfile& u,
                                         double r);

/// Weighted volume of the geodesic ball of radius R about the pole,
/// sigma_{m-1} * integral_0^R w phi^{m-1}.
double weighted_ball_volume(const RotSymSpace& space, double R);

/// Weighted area of the geodesic sphere at radius t, sigma_{m-1} w(t) phi(t)^{m-1}.
double weighted_sphere_area(const RotSymSpace& space, double t);

}  // namespace rslab
