#pragma once

#include <stdexcept>
#include <vector>

#include "rslab/space.hpp"

namespace rslab {

/// Point of the totally geodesic 2D slice in signed radial coordinates:
/// (s, theta) with s < 0 meaning the point (-s, theta + pi). By rotational
/// symmetry every pair of points lies in a common slice, so distances on the
/// slice cover all pairs.
struct SlicePoint {
    double s = 0.0;
    double theta = 0.0;
};

struct GeodesicSample {
    double t, s, vs, theta, vtheta;
    double speed() const;       // filled in by the integrator
    double clairaut = 0.0;      // phi(s)^2 * theta'
    double energy = 0.0;        // |gamma'|^2
};

struct GeodesicPath {
    std::vector<GeodesicSample> samples;
    bool truncated = false;  // left [-r_max, r_max] before time T
};

/// Integrate s'' = phi phi' theta'^2, theta'' = -2 (phi'/phi) s' theta' in the
/// slice with classical RK4 at fixed step. Clairaut invariant and energy are
/// recorded per sample as free accuracy monitors.
GeodesicPath integrate_geodesic(const RotSymSpace& space, const SlicePoint& start, double vs,
                                double vtheta, double T, double step);

struct ShootingError : std::runtime_error {
    double psi_lo, psi_hi;        // best bracket of the launch angle
    double dtheta_lo, dtheta_hi;  // terminal angles attained at the bracket
    ShootingError(double lo, double hi, double flo, double fhi);
};

/// Geodesic distance between two slice points, by shooting over the launch
/// angle at the inner radius. Terminal-angle tolerance defaults to 1e-8.
double distance(const RotSymSpace& space, const SlicePoint& p, const SlicePoint& q,
                double angle_tol = 1e-8);

/// Distances from many angular offsets to a fixed pair of radii. Caches the
/// angle-vs-launch-angle samples, so sweeps over a theta grid against one
/// target point are much cheaper than independent distance() calls.
class RadialPairDistance {
public:
    RadialPairDistance(const RotSymSpace& space, double rho1, double rho2,
                       double angle_tol = 1e-8);

    /// dtheta in [0, pi]
    double dist(double dtheta);

    struct Shot {
        double dtheta = 0.0, length = 0.0;
    };
    /// terminal angle and arc length of a single launch at angle psi; the
    /// length integral is skipped (left 0) when with_length is false
    Shot shoot(double psi, bool with_length = true) const;

private:
    struct Knot {
        double psi, dtheta;
    };

    const RotSymSpace& space_;
    double rho1_, rho2_;  // rho1 <= rho2
    double angle_tol_;
    std::vector<Knot> knots_;  // sorted by psi; dtheta nondecreasing
};

}  // namespace rslab
