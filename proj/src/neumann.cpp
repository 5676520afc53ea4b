#include "rslab/neumann.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

namespace rslab {

namespace {

// 7-point Gauss-Legendre on [-1, 1]
constexpr double kGLx[7] = {0.0,
                            -0.4058451513773972, 0.4058451513773972,
                            -0.7415311855993945, 0.7415311855993945,
                            -0.9491079123427585, 0.9491079123427585};
constexpr double kGLw[7] = {0.4179591836734694,
                            0.3818300505051189, 0.3818300505051189,
                            0.2797053914892766, 0.2797053914892766,
                            0.1294849661688697, 0.1294849661688697};

template <typename F>
double gl7(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 7; ++i) acc += kGLw[i] * f(mid + half * kGLx[i]);
    return acc * half;
}

}  // namespace

RadialProfile scaled(const RadialProfile& p, double c) {
    if (c <= 0.0) throw std::domain_error("scaled: positive factor required");
    RadialProfile copy = p;
    return RadialProfile(p.kind(), p.params(), p.r_max(),
                         [copy, c](const Jet3& r) {
                             Jet3 j = copy.eval(r.f);
                             return c * j;
                         },
                         p.exact_derivatives());
}

NormalizationResult normalize_f(const RotSymSpace& space, const BallDomain& K,
                                const RadialProfile& f0) {
    if (!(K.R > 0.0) || K.R >= space.r_max())
        throw std::domain_error("normalize_f: need 0 < R < r_max");
    const int m = space.m();
    const double ma = m + space.alpha();
    const double p = ma / (ma - 1.0);
    for (int i = 0; i <= 64; ++i)
        if (f0.value(K.R * i / 64.0) <= 0.0)
            throw std::domain_error("normalize_f: f0 must be positive on [0, R]");

    const double sigma = unit_sphere_area(m);
    auto measure = [&](double s) {
        return space.density().value(s) * std::pow(space.warp().value(s), m - 1);
    };
    const double grad_term = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double s) { return std::abs(f0.deriv1(s)) * measure(s); }, 0.0, K.R, 12, 1e-13);
    const double boundary_term = f0.value(K.R) * measure(K.R);
    const double L = sigma * (grad_term + boundary_term);
    const double I = sigma * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                                 [&](double s) { return std::pow(f0.value(s), p) * measure(s); },
                                 0.0, K.R, 12, 1e-13);
    NormalizationResult out;
    out.lambda = std::pow(L / (ma * I), ma - 1.0);
    // re-evaluate both sides at f = lambda f0: L scales by lambda, I by lambda^p
    out.lhs = out.lambda * L;
    out.rhs = ma * std::pow(out.lambda, p) * I;
    return out;
}

double NeumannSolution::flux_at(double s) const {
    const auto& g = grid;
    std::size_t k = std::upper_bound(g.begin(), g.end(), s) - g.begin();
    if (k > 0) --k;
    if (k >= g.size() - 1) k = g.size() - 2;
    const RotSymSpace& sp = *space_;
    const int m = sp.m();
    const double ma = m + sp.alpha();
    const double p = ma / (ma - 1.0);
    auto integrand = [&](double x) {
        const double w = sp.density().value(x);
        const Jet3 f = f_.eval(x);
        return (ma * w * std::pow(f.f, p) - w * std::abs(f.d1)) *
               std::pow(sp.warp().value(x), m - 1);
    };
    return flux_[k] + gl7(integrand, g[k], s);
}

double NeumannSolution::uprime_at(double s) const {
    const double r = std::abs(s);
    const double sign = s < 0.0 ? -1.0 : 1.0;
    if (r < 1e-9 * domain.R) return sign * usecond_pole_ * r;
    const RotSymSpace& sp = *space_;
    const double denom = sp.density().value(r) * f_.value(r) *
                         std::pow(sp.warp().value(r), sp.m() - 1);
    return sign * flux_at(r) / denom;
}

double NeumannSolution::u_at(double s) const {
    const double r = std::abs(s);
    const auto& g = grid;
    std::size_t k = std::upper_bound(g.begin(), g.end(), r) - g.begin();
    if (k > 0) --k;
    if (k >= g.size() - 1) k = g.size() - 2;
    return u[k] + gl7([&](double x) { return uprime_at(x); }, g[k], r);
}

double NeumannSolution::usecond_at(double s) const {
    const double r = std::abs(s);
    if (r < 1e-9 * domain.R) return usecond_pole_;
    const RotSymSpace& sp = *space_;
    const int m = sp.m();
    const double ma = m + sp.alpha();
    const double p = ma / (ma - 1.0);
    const Jet3 w = sp.density().eval(r);
    const Jet3 f = f_.eval(r);
    const Jet3 phi = sp.warp().eval(r);
    const double phim = std::pow(phi.f, m - 1);
    const double G = (ma * w.f * std::pow(f.f, p) - w.f * std::abs(f.d1)) * phim;
    const double denom = w.f * f.f * phim;
    const double ddenom = (w.d1 * f.f + w.f * f.d1) * phim +
                          w.f * f.f * (m - 1) * std::pow(phi.f, m - 2) * phi.d1;
    const double up = uprime_at(r);
    return G / denom - up * ddenom / denom;
}

double NeumannSolution::f_at(double s) const { return f_.value(std::abs(s)); }

double NeumannSolution::fprime_at(double s) const {
    const double sign = s < 0.0 ? -1.0 : 1.0;
    return sign * f_.deriv1(std::abs(s));
}

bool NeumannSolution::in_U(double s) const {
    const double r = std::abs(s);
    if (r >= domain.R) return false;
    return std::abs(uprime_at(r)) < 1.0;
}

NeumannSolution solve_neumann_radial(const RotSymSpace& space, const BallDomain& K,
                                     const RadialProfile& f0, double tol, int grid_points) {
    const NormalizationResult norm = normalize_f(space, K, f0);
    NeumannSolution sol;
    sol.domain = K;
    sol.lambda = norm.lambda;
    sol.space_ = std::make_shared<RotSymSpace>(space);
    sol.f_ = scaled(f0, norm.lambda);

    const int n = grid_points;
    const int m = space.m();
    const double ma = m + space.alpha();
    const double p = ma / (ma - 1.0);
    sol.grid.resize(n);
    for (int i = 0; i < n; ++i) sol.grid[i] = K.R * double(i) / (n - 1);

    auto integrand = [&](double x) {
        const double w = space.density().value(x);
        const Jet3 f = sol.f_.eval(x);
        return (ma * w * std::pow(f.f, p) - w * std::abs(f.d1)) *
               std::pow(space.warp().value(x), m - 1);
    };
    sol.flux_.assign(n, 0.0);
    for (int i = 1; i < n; ++i)
        sol.flux_[i] = sol.flux_[i - 1] + gl7(integrand, sol.grid[i - 1], sol.grid[i]);

    sol.usecond_pole_ = ma * std::pow(sol.f_.value(0.0), p - 1.0) / m;

    sol.uprime.resize(n);
    sol.usecond.resize(n);
    for (int i = 0; i < n; ++i) {
        sol.uprime[i] = sol.uprime_at(sol.grid[i]);
        sol.usecond[i] = sol.usecond_at(sol.grid[i]);
    }
    sol.u.assign(n, 0.0);
    for (int i = 1; i < n; ++i)
        sol.u[i] = sol.u[i - 1] + gl7([&](double x) { return sol.uprime_at(x); },
                                      sol.grid[i - 1], sol.grid[i]);

    sol.boundary_defect = std::abs(sol.uprime.back() - 1.0);
    if (sol.boundary_defect > tol)
        throw std::runtime_error("solve_neumann_radial: boundary condition defect " +
                                 std::to_string(sol.boundary_defect) +
                                 " exceeds tolerance (normalization mismatch)");

    // PDE residual recomputed from the stored derivative values
    for (int i = 0; i < n; ++i) {
        const double s = sol.grid[i];
        const Jet3 w = space.density().eval(s);
        const Jet3 f = sol.f_.eval(s);
        const double lap_term =
            s < 1e-9 * K.R
                ? m * sol.usecond_pole_
                : sol.usecond[i] +
                      (m - 1) * space.warp().eval(s).d1 / space.warp().value(s) * sol.uprime[i];
        const double lhs = w.f * f.f * lap_term + (w.d1 * f.f + w.f * f.d1) * sol.uprime[i];
        const double rhs = ma * w.f * std::pow(f.f, p) - w.f * std::abs(f.d1);
        sol.pde_residual_max = std::max(sol.pde_residual_max, std::abs(lhs - rhs));
    }

    // maximal subintervals of strict |u'| < 1
    bool open = false;
    double start = 0.0;
    for (int i = 0; i < n; ++i) {
        const bool inside = std::abs(sol.uprime[i]) < 1.0 && sol.grid[i] < K.R;
        if (inside && !open) {
            open = true;
            start = sol.grid[i];
        } else if (!inside && open) {
            open = false;
            sol.U_set.emplace_back(start, sol.grid[i - 1]);
        }
    }
    if (open) sol.U_set.emplace_back(start, sol.grid[n - 2]);
    return sol;
}

Lemma1Check verify_lemma1(const RotSymSpace& space, const NeumannSolution& sol) {
    Lemma1Check out;
    const int m = space.m();
    const double ma = m + space.alpha();
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        const double s = sol.grid[i];
        if (!sol.in_U(s) && s > 0.0) continue;
        const Jet3 w = space.density().eval(s);
        const double lap =
            s < 1e-9 * sol.domain.R
                ? m * sol.usecond[0]
                : sol.usecond[i] +
                      (m - 1) * space.warp().eval(s).d1 / space.warp().value(s) * sol.uprime[i];
        const double defect = w.f * lap + w.d1 * sol.uprime[i] -
                              ma * w.f * std::pow(sol.f_at(s), 1.0 / (ma - 1.0));
        if (defect > out.max_defect) {
            out.max_defect = defect;
            out.argmax_r = s;
        }
    }
    return out;
}

}  // namespace rslab
