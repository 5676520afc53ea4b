#include "rslab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rslab {

RadialProfile::RadialProfile(std::string kind, std::vector<double> params, double r_max,
                             std::function<Jet3(const Jet3&)> eval, bool exact)
    : kind_(std::move(kind)), params_(std::move(params)), r_max_(r_max), eval_(std::move(eval)),
      exact_(exact) {
    if (r_max_ <= 0.0) throw std::domain_error("RadialProfile: r_max must be positive");
}

Jet3 RadialProfile::eval(double r) const {
    if (!eval_) throw std::logic_error("RadialProfile: uninitialized");
    if (r < 0.0 || r > r_max_ * (1.0 + 1e-12))
        throw std::domain_error("RadialProfile: radius " + std::to_string(r) +
                                " outside [0, " + std::to_string(r_max_) + "]");
    return eval_(Jet3::variable(r));
}

void RadialProfile::validate_as_warp() const {
    const Jet3 at0 = eval(0.0);
    if (std::abs(at0.f) > 1e-12 || std::abs(at0.d1 - 1.0) > 1e-12 || std::abs(at0.d2) > 1e-10)
        throw std::domain_error("warp profile must satisfy phi(0)=0, phi'(0)=1, phi''(0)=0");
    const int n = 64;
    for (int i = 1; i <= n; ++i) {
        const double r = r_max_ * double(i) / n;
        if (value(r) <= 0.0) throw std::domain_error("warp profile must be positive on (0, r_max]");
    }
}

void RadialProfile::validate_as_density() const {
    const Jet3 at0 = eval(0.0);
    if (std::abs(at0.d1) > 1e-10)
        throw std::domain_error("density profile must satisfy w'(0)=0");
    const int n = 64;
    for (int i = 0; i <= n; ++i) {
        const double r = r_max_ * double(i) / n;
        if (value(r) <= 0.0) throw std::domain_error("density profile must be positive on [0, r_max]");
    }
}

RadialProfile make_profile(const std::string& preset, const std::vector<double>& params,
                           double r_max) {
    auto need = [&](std::size_t k) {
        if (params.size() < k)
            throw std::domain_error("profile preset '" + preset + "' needs " + std::to_string(k) +
                                    " parameter(s)");
    };
    if (preset == "euclidean") {
        return RadialProfile(preset, {}, r_max, [](const Jet3& r) { return r; });
    }
    if (preset == "hyperbolic_like") {
        return RadialProfile(preset, {}, r_max, [](const Jet3& r) { return sinh(r); });
    }
    if (preset == "capped_power") {
        // phi = r (1+r^2)^{-(1-beta)/2}: smooth at the pole, ~ r^beta at infinity
        need(1);
        const double beta = params[0];
        if (beta <= 0.0 || beta > 1.0)
            throw std::domain_error("capped_power: beta must lie in (0, 1]");
        const double c = -(1.0 - beta) / 2.0;
        return RadialProfile(preset, {beta}, r_max,
                             [c](const Jet3& r) { return r * pow(1.0 + r * r, c); });
    }
    if (preset == "const") {
        const double v = params.empty() ? 1.0 : params[0];
        if (v <= 0.0) throw std::domain_error("const profile: value must be positive");
        return RadialProfile(preset, {v}, r_max,
                             [v](const Jet3&) { return Jet3::constant(v); });
    }
    if (preset == "gaussian_density") {
        return RadialProfile(preset, {}, r_max,
                             [](const Jet3& r) { return exp(-0.5 * (r * r)); });
    }
    if (preset == "power_density") {
        need(1);
        const double q = params[0];
        return RadialProfile(preset, {q}, r_max,
                             [q](const Jet3& r) { return pow(1.0 + r * r, q / 2.0); });
    }
    if (preset == "polynomial") {
        need(1);
        auto coeffs = params;
        return RadialProfile(preset, params, r_max, [coeffs](const Jet3& r) {
            Jet3 acc = Jet3::constant(0.0);
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * r + *it;
            return acc;
        });
    }
    throw std::domain_error("unknown profile preset '" + preset + "'");
}

std::vector<std::string> profile_preset_names() {
    return {"euclidean", "hyperbolic_like", "capped_power", "const", "gaussian_density",
            "power_density", "polynomial", "spline"};
}

namespace {

struct SplineData {
    std::vector<double> x, y, m;  // m = second derivatives at knots
};

// natural cubic spline second derivatives (tridiagonal solve)
SplineData build_spline(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    SplineData s{x, y, std::vector<double>(n, 0.0)};
    if (n < 3) return s;
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
    b[0] = 1.0;
    b[n - 1] = 1.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
        a[i] = h0 / 6.0;
        b[i] = (h0 + h1) / 3.0;
        c[i] = h1 / 6.0;
        d[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
    }
    // Thomas algorithm
    for (std::size_t i = 1; i < n; ++i) {
        const double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        d[i] -= w * d[i - 1];
    }
    s.m[n - 1] = d[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) s.m[i] = (d[i] - c[i] * s.m[i + 1]) / b[i];
    return s;
}

Jet3 eval_spline(const SplineData& s, const Jet3& rj) {
    const double r = rj.f;
    const auto& x = s.x;
    std::size_t i = std::upper_bound(x.begin(), x.end(), r) - x.begin();
    if (i == 0) i = 1;
    if (i >= x.size()) i = x.size() - 1;
    const double h = x[i] - x[i - 1];
    const double A = (x[i] - r) / h, B = (r - x[i - 1]) / h;
    const double f = A * s.y[i - 1] + B * s.y[i] +
                     ((A * A * A - A) * s.m[i - 1] + (B * B * B - B) * s.m[i]) * h * h / 6.0;
    const double d1 = (s.y[i] - s.y[i - 1]) / h -
                      (3.0 * A * A - 1.0) * h / 6.0 * s.m[i - 1] +
                      (3.0 * B * B - 1.0) * h / 6.0 * s.m[i];
    const double d2 = A * s.m[i - 1] + B * s.m[i];
    const double d3 = (s.m[i] - s.m[i - 1]) / h;
    return compose(f, d1, d2, d3, rj);
}

}  // namespace

RadialProfile make_spline_profile(const std::vector<double>& r, const std::vector<double>& v,
                                  double r_max) {
    if (r.size() != v.size() || r.size() < 2)
        throw std::domain_error("spline profile: need >= 2 matching (r, value) samples");
    if (!std::is_sorted(r.begin(), r.end()))
        throw std::domain_error("spline profile: radii must be increasing");
    auto data = std::make_shared<SplineData>(build_spline(r, v));
    return RadialProfile("spline", {}, r_max,
                         [data](const Jet3& rj) { return eval_spline(*data, rj); },
                         /*exact=*/false);
}

RadialProfile load_spline_profile_csv(const std::string& path, double r_max) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spline CSV: " + path);
    std::vector<double> r, v;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double a, b;
        if (ss >> a >> b) {
            r.push_back(a);
            v.push_back(b);
        }
    }
    return make_spline_profile(r, v, r_max);
}

}  // namespace rslab
