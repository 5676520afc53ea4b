#include "rslab/geodesic.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace rslab {

namespace {

struct State {
    double s, vs, theta, vtheta;
};

State derivative(const RotSymSpace& space, const State& y) {
    const Jet3 phi = space.warp_signed(y.s);
    State d;
    d.s = y.vs;
    d.theta = y.vtheta;
    if (std::abs(y.vtheta) < 1e-300) {
        d.vs = 0.0;
        d.vtheta = 0.0;
    } else {
        d.vs = phi.f * phi.d1 * y.vtheta * y.vtheta;
        d.vtheta = -2.0 * (phi.d1 / phi.f) * y.vs * y.vtheta;
    }
    return d;
}

State axpy(const State& a, double h, const State& b) {
    return {a.s + h * b.s, a.vs + h * b.vs, a.theta + h * b.theta, a.vtheta + h * b.vtheta};
}

GeodesicSample to_sample(const RotSymSpace& space, double t, const State& y) {
    const double phi = space.warp_signed(y.s).f;
    GeodesicSample g{t, y.s, y.vs, y.theta, y.vtheta};
    g.clairaut = phi * phi * y.vtheta;
    g.energy = y.vs * y.vs + phi * phi * y.vtheta * y.vtheta;
    return g;
}

}  // namespace

double GeodesicSample::speed() const { return std::sqrt(energy); }

GeodesicPath integrate_geodesic(const RotSymSpace& space, const SlicePoint& start, double vs,
                                double vtheta, double T, double step) {
    if (step <= 0.0) throw std::domain_error("integrate_geodesic: step > 0 required");
    if (std::abs(start.s) > space.r_max())
        throw std::domain_error("integrate_geodesic: start outside chart");
    const int n = std::max(1, static_cast<int>(std::ceil(T / step)));
    const double h = T / n;
    State y{start.s, vs, start.theta, vtheta};
    GeodesicPath path;
    path.samples.reserve(n + 1);
    path.samples.push_back(to_sample(space, 0.0, y));
    for (int i = 0; i < n; ++i) {
        State next;
        try {
            const State k1 = derivative(space, y);
            const State k2 = derivative(space, axpy(y, 0.5 * h, k1));
            const State k3 = derivative(space, axpy(y, 0.5 * h, k2));
            const State k4 = derivative(space, axpy(y, h, k3));
            next = {y.s + h / 6.0 * (k1.s + 2 * k2.s + 2 * k3.s + k4.s),
                    y.vs + h / 6.0 * (k1.vs + 2 * k2.vs + 2 * k3.vs + k4.vs),
                    y.theta + h / 6.0 * (k1.theta + 2 * k2.theta + 2 * k3.theta + k4.theta),
                    y.vtheta + h / 6.0 * (k1.vtheta + 2 * k2.vtheta + 2 * k3.vtheta + k4.vtheta)};
        } catch (const std::domain_error&) {
            // an RK stage left the chart: stop at the last in-chart sample
            path.truncated = true;
            break;
        }
        y = next;
        if (std::abs(y.s) > space.r_max()) {
            path.truncated = true;
            break;
        }
        path.samples.push_back(to_sample(space, (i + 1) * h, y));
    }
    return path;
}

ShootingError::ShootingError(double lo, double hi, double flo, double fhi)
    : std::runtime_error("distance shooting failed to bracket the terminal angle"),
      psi_lo(lo), psi_hi(hi), dtheta_lo(flo), dtheta_hi(fhi) {}

namespace {

constexpr double kTinyRadius = 1e-12;

// invert the warp: radius in [0, rho_hi] with phi(rho) = y. Shooting assumes
// a strictly increasing warp, which holds for every built-in preset; the
// bisection safeguard keeps Newton inside the bracket
double warp_inverse(const RotSymSpace& space, double y, double rho_hi) {
    double lo = 0.0, hi = rho_hi;
    double rho = std::min(y, rho_hi);  // exact for the flat warp
    for (int i = 0; i < 60; ++i) {
        const Jet3 phi = space.warp().eval(rho);
        (phi.f > y ? hi : lo) = rho;
        double next = phi.d1 > 0.0 ? rho - (phi.f - y) / phi.d1 : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - rho) <= 4e-16 * (std::abs(rho) + 1e-300)) return next;
        rho = next;
    }
    return rho;
}

// one monotone-radius leg with Clairaut constant c, parameterized by the
// inclination beta = arccos(c / phi): d(theta) = d(beta)/phi' and
// d(length) = d(rho) + c d(beta)/(phi' (1 + sin beta)), both integrands
// smooth through the turning point beta = 0
RadialPairDistance::Shot leg_integrals(const RotSymSpace& space, double c, double beta_a,
                                       double beta_b, double rho_a, double rho_b,
                                       bool with_length) {
    RadialPairDistance::Shot out;
    if (rho_b <= rho_a || beta_b <= beta_a) return out;
    if (space.warp().kind() == "euclidean") {
        // linear warp: phi' = 1, both leg integrals are elementary
        out.dtheta = beta_b - beta_a;
        if (with_length) {
            auto anti = [](double b) { return -2.0 / (1.0 + std::tan(0.5 * b)); };
            out.length = (rho_b - rho_a) + c * (anti(beta_b) - anti(beta_a));
        }
        return out;
    }
    using gk = boost::math::quadrature::gauss_kronrod<double, 31>;
    const double phi_b = space.warp().value(rho_b);
    auto slope_inv = [&](double beta) {
        const double y = std::min(c / std::cos(beta), phi_b);
        const double rho = warp_inverse(space, y, rho_b);
        return 1.0 / space.warp().eval(rho).d1;
    };
    // integrate on the unit interval: the adaptive error floor is absolute,
    // so a narrow beta range under a relative tolerance would never converge
    const double width = beta_b - beta_a;
    auto unit = [&](auto g) {
        return width *
               gk::integrate([&](double u) { return g(beta_a + width * u); }, 0.0, 1.0, 8, 1e-11);
    };
    out.dtheta = unit(slope_inv);
    if (with_length)
        out.length = (rho_b - rho_a) +
                     c * unit([&](double b) { return slope_inv(b) / (1.0 + std::sin(b)); });
    return out;
}

struct PolarPoint {
    double rho, ang;
};

PolarPoint canonical(const SlicePoint& p) {
    if (p.s >= 0.0) return {p.s, p.theta};
    return {-p.s, p.theta + M_PI};
}

double angular_gap(const SlicePoint& p, const SlicePoint& q) {
    const double d = std::fmod(std::abs(canonical(p).ang - canonical(q).ang), 2.0 * M_PI);
    return d > M_PI ? 2.0 * M_PI - d : d;
}

}  // namespace

RadialPairDistance::RadialPairDistance(const RotSymSpace& space, double rho1, double rho2,
                                       double angle_tol)
    : space_(space), rho1_(std::min(rho1, rho2)), rho2_(std::max(rho1, rho2)),
      angle_tol_(angle_tol) {
    if (rho1_ < 0.0 || rho2_ > space.r_max())
        throw std::domain_error("RadialPairDistance: radii outside chart");
}

RadialPairDistance::Shot RadialPairDistance::shoot(double psi, bool with_length) const {
    const double phi1 = space_.warp().value(rho1_);
    const double phi2 = space_.warp().value(rho2_);
    const double c = std::min(phi1 * std::sin(psi), phi1 * (1.0 - 1e-16));
    const double beta2 = std::acos(std::min(1.0, c / phi2));
    if (psi <= 0.5 * M_PI) {
        // outward launch: the inclination at rho1 is pi/2 - psi exactly
        return leg_integrals(space_, c, 0.5 * M_PI - psi, beta2, rho1_, rho2_, with_length);
    }
    // past-vertical launch descends to the turning radius phi = c first
    const double rho_t = warp_inverse(space_, c, rho1_);
    const Shot back = leg_integrals(space_, c, 0.0, psi - 0.5 * M_PI, rho_t, rho1_, with_length);
    const Shot out = leg_integrals(space_, c, 0.0, beta2, rho_t, rho2_, with_length);
    return {back.dtheta + out.dtheta, back.length + out.length};
}

double RadialPairDistance::dist(double dtheta) {
    if (dtheta < 0.0 || dtheta > M_PI + 1e-12)
        throw std::domain_error("RadialPairDistance: dtheta in [0, pi] required");
    if (rho1_ < kTinyRadius) return rho2_;
    if (dtheta < 1e-12) return rho2_ - rho1_;
    if (dtheta > M_PI - 1e-12) return rho1_ + rho2_;  // radial path through the pole

    if (knots_.empty()) {
        const double lo = 1e-9, hi = M_PI - 1e-9;
        knots_.push_back({lo, shoot(lo, false).dtheta});
        knots_.push_back({hi, shoot(hi, false).dtheta});
    }
    // bracket among cached knots (terminal angle nondecreasing in launch angle)
    std::size_t i = 0;
    while (i + 2 < knots_.size() && knots_[i + 1].dtheta < dtheta) ++i;
    double lo = knots_[i].psi, flo = knots_[i].dtheta - dtheta;
    double hi = knots_[i + 1].psi, fhi = knots_[i + 1].dtheta - dtheta;
    while (i + 2 < knots_.size() && fhi < 0.0) {
        ++i;
        lo = knots_[i].psi;
        flo = knots_[i].dtheta - dtheta;
        hi = knots_[i + 1].psi;
        fhi = knots_[i + 1].dtheta - dtheta;
    }
    if (flo > angle_tol_ || fhi < -angle_tol_)
        throw ShootingError(lo, hi, flo + dtheta, fhi + dtheta);

    double psi = 0.5 * (lo + hi), f = 0.0;
    int side = 0;
    for (int iter = 0; iter < 200; ++iter) {
        // Illinois-damped regula falsi; fall back to bisection on degenerate slopes
        psi = (std::abs(fhi - flo) > 1e-300) ? (lo * fhi - hi * flo) / (fhi - flo)
                                             : 0.5 * (lo + hi);
        if (!(psi > lo && psi < hi)) psi = 0.5 * (lo + hi);
        f = shoot(psi, false).dtheta - dtheta;
        if (std::abs(f) <= angle_tol_ || hi - lo < 1e-14) break;
        if (f < 0.0) {
            lo = psi;
            flo = f;
            if (side == -1) fhi *= 0.5;
            side = -1;
        } else {
            hi = psi;
            fhi = f;
            if (side == +1) flo *= 0.5;
            side = +1;
        }
    }
    // cache the solved knot if it keeps the table ordered
    Knot k{psi, f + dtheta};
    auto pos = std::lower_bound(knots_.begin(), knots_.end(), k,
                                [](const Knot& a, const Knot& b) { return a.psi < b.psi; });
    if (knots_.size() < 256 &&
        (pos == knots_.end() || pos->dtheta >= k.dtheta) &&
        (pos == knots_.begin() || std::prev(pos)->dtheta <= k.dtheta))
        knots_.insert(pos, k);
    return shoot(psi).length;
}

double distance(const RotSymSpace& space, const SlicePoint& p, const SlicePoint& q,
                double angle_tol) {
    if (std::abs(p.s) > space.r_max() || std::abs(q.s) > space.r_max())
        throw std::domain_error("distance: point outside chart");
    RadialPairDistance pair(space, std::abs(p.s), std::abs(q.s), angle_tol);
    return pair.dist(angular_gap(p, q));
}

}  // namespace rslab
