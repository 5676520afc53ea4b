#include "rslab/comparison.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <nlohmann/json.hpp>
#include <random>

#include "rslab/io.hpp"

namespace rslab {

namespace {

double k_rad_signed(const RotSymSpace& space, double s) {
    const double r = std::abs(s);
    if (r < 1e-7) return -space.warp().eval(0.0).d3;
    const Jet3 phi = space.warp().eval(std::min(r, space.r_max()));
    return -phi.d2 / phi.f;
}

Eigen::MatrixXd curvature_matrix(const RotSymSpace& space, const JacobiPropagation& p, double t) {
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(p.m, p.m);
    const double k = k_rad_signed(space, p.radius_at(t)) * p.speed * p.speed;
    for (int i = 1; i < p.m; ++i) S(i, i) = k;  // zero eigenvalue along gamma'
    return S;
}

void detect_increase(ComparisonSeries& s, double step_tol) {
    for (std::size_t i = 0; i + 1 < s.normalized.size(); ++i) {
        const double scale = std::max({std::abs(s.normalized[i]), std::abs(s.normalized[i + 1]),
                                       1e-300});
        const double rise = s.normalized[i + 1] - s.normalized[i];
        if (rise > step_tol * scale) {
            if (!s.monotone_violation || rise > s.monotone_violation->magnitude)
                s.monotone_violation = {i + 1, s.radii[i + 1], rise};
        }
    }
}

}  // namespace

JacobiPropagation jacobi_propagate(const RotSymSpace& space, double s0, double speed,
                                   std::pair<double, double> d2u, double T, double step) {
    if (step <= 0.0 || T < 0.0) throw std::domain_error("jacobi_propagate: bad T or step");
    JacobiPropagation prop;
    prop.s0 = s0;
    prop.speed = speed;
    prop.m = space.m();
    const int n = std::max(1, static_cast<int>(std::ceil(T / step)));
    const double h = T / n;
    prop.step = h;

    const int m = prop.m;
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(m, m);
    Eigen::MatrixXd Pd = Eigen::MatrixXd::Zero(m, m);
    Pd(0, 0) = d2u.first;
    for (int i = 1; i < m; ++i) Pd(i, i) = d2u.second;

    auto record = [&](double t, const Eigen::MatrixXd& Pc, const Eigen::MatrixXd& Pdc) {
        JacobiState st;
        st.t = t;
        st.P = Pc;
        st.Pdot = Pdc;
        st.S = curvature_matrix(space, prop, t);
        st.detP = Pc.determinant();
        st.logdetP = std::log(std::max(std::abs(st.detP), 1e-300));
        st.Q = (std::abs(st.detP) > 1e-13) ? Eigen::MatrixXd(Pc.inverse() * Pdc)
                                           : Eigen::MatrixXd::Constant(m, m,
                                                 std::numeric_limits<double>::quiet_NaN());
        prop.states.push_back(std::move(st));
    };

    record(0.0, P, Pd);
    for (int i = 0; i < n; ++i) {
        const double t = i * h;
        auto acc = [&](double tt, const Eigen::MatrixXd& Pc) {
            return Eigen::MatrixXd(-Pc * curvature_matrix(space, prop, tt));
        };
        const Eigen::MatrixXd k1p = Pd, k1v = acc(t, P);
        const Eigen::MatrixXd k2p = Pd + 0.5 * h * k1v, k2v = acc(t + 0.5 * h, P + 0.5 * h * k1p);
        const Eigen::MatrixXd k3p = Pd + 0.5 * h * k2v, k3v = acc(t + 0.5 * h, P + 0.5 * h * k2p);
        const Eigen::MatrixXd k4p = Pd + h * k3v, k4v = acc(t + h, P + h * k3p);
        P += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
        Pd += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        record((i + 1) * h, P, Pd);
    }
    return prop;
}

RiccatiCheck riccati_check(const JacobiPropagation& prop) {
    RiccatiCheck out;
    const double h = prop.step;
    for (std::size_t k = 1; k + 1 < prop.states.size(); ++k) {
        const auto& s = prop.states[k];
        if (!s.Q.allFinite() || !prop.states[k - 1].Q.allFinite() ||
            !prop.states[k + 1].Q.allFinite())
            continue;
        const Eigen::MatrixXd qdot = (prop.states[k + 1].Q - prop.states[k - 1].Q) / (2.0 * h);
        const Eigen::MatrixXd res = qdot + s.S + s.Q * s.Q;
        out.max_residual = std::max(out.max_residual, res.cwiseAbs().maxCoeff());
        out.max_symmetry_defect =
            std::max(out.max_symmetry_defect,
                     Eigen::MatrixXd(s.Q - s.Q.transpose()).cwiseAbs().maxCoeff());
        const double dlogdet =
            (prop.states[k + 1].logdetP - prop.states[k - 1].logdetP) / (2.0 * h);
        out.max_trace_logdet_defect =
            std::max(out.max_trace_logdet_defect, std::abs(s.Q.trace() - dlogdet));
    }
    return out;
}

std::string ComparisonSeries::to_csv() const {
    std::vector<CsvColumn> cols{{"t", &radii}, {"value", &values}};
    if (!normalized.empty()) cols.push_back({"normalized", &normalized});
    if (!bound.empty()) cols.push_back({"bound", &bound});
    return rslab::to_csv(cols);
}

std::string ComparisonSeries::to_json() const {
    nlohmann::ordered_json j;
    j["radii"] = radii;
    j["values"] = values;
    if (!normalized.empty()) j["normalized"] = normalized;
    if (!bound.empty()) j["bound"] = bound;
    if (monotone_violation) {
        j["violation"] = {{"index", monotone_violation->index},
                          {"t", monotone_violation->t},
                          {"magnitude", monotone_violation->magnitude}};
    } else {
        j["violation"] = nullptr;
    }
    return j.dump(2);
}

ComparisonSeries weighted_trace_bound(const RotSymSpace& space, const JacobiPropagation& prop,
                                      double f_value, double step_tol) {
    if (f_value <= 0.0) throw std::domain_error("weighted_trace_bound: f_value > 0 required");
    const double ma = space.m() + space.alpha();
    const double F = std::pow(f_value, 1.0 / (ma - 1.0));
    ComparisonSeries s;
    for (const auto& st : prop.states) {
        if (!st.Q.allFinite()) break;
        const double lhs =
            st.Q.trace() + space.dlogw_signed(prop.radius_at(st.t)) * prop.speed;
        s.radii.push_back(st.t);
        s.values.push_back(lhs);
        s.bound.push_back(ma * F / (1.0 + st.t * F));
    }
    if (!s.values.empty() && s.values.front() > s.bound.front() + 1e-6)
        throw std::domain_error("weighted_trace_bound: initial trace exceeds divergence bound");
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        const double exceed = s.values[i] - s.bound[i];
        if (exceed > step_tol * std::max(1.0, std::abs(s.bound[i]))) {
            if (!s.monotone_violation || exceed > s.monotone_violation->magnitude)
                s.monotone_violation = {i, s.radii[i], exceed};
        }
    }
    return s;
}

ComparisonSeries volume_expansion_series(const RotSymSpace& space, const JacobiPropagation& prop,
                                         double f_value, double step_tol) {
    if (f_value <= 0.0) throw std::domain_error("volume_expansion_series: f_value > 0 required");
    const double ma = space.m() + space.alpha();
    const double F = std::pow(f_value, 1.0 / (ma - 1.0));
    const double w0 = space.density_signed(prop.s0).f;
    ComparisonSeries s;
    for (const auto& st : prop.states) {
        const double w = space.density_signed(prop.radius_at(st.t)).f;
        s.radii.push_back(st.t);
        s.values.push_back(w * st.detP);
        s.normalized.push_back(std::pow(1.0 + st.t * F, -ma) * w * st.detP / w0);
    }
    detect_increase(s, step_tol);
    return s;
}

double index_form_check(const RotSymSpace& space, const JacobiPropagation& prop,
                        const IndexFormSpec& spec) {
    const double T = prop.states.back().t;
    if (T <= 0.0) return 0.0;
    const double d2u_rad = prop.states.front().Pdot(0, 0);
    const double d2u_tan = prop.m > 1 ? prop.states.front().Pdot(1, 1) : d2u_rad;

    struct Taper {
        std::function<double(double)> z, zdot;
    };
    std::vector<Taper> tapers;
    tapers.push_back({[T](double t) { return 1.0 - t / T; }, [T](double) { return -1.0 / T; }});
    tapers.push_back({[T](double t) { return std::cos(M_PI * t / (2.0 * T)); },
                      [T](double t) { return -M_PI / (2.0 * T) * std::sin(M_PI * t / (2.0 * T)); }});
    tapers.push_back({[T](double t) { return (1.0 - t / T) * (1.0 - t / T); },
                      [T](double t) { return -2.0 / T * (1.0 - t / T); }});
    std::mt19937 rng(spec.seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (int k = 0; k < spec.random_tapers; ++k) {
        const double a0 = coeff(rng), a1 = coeff(rng), a2 = coeff(rng);
        tapers.push_back(
            {[=](double t) {
                 const double u = t / T;
                 return (1.0 - u) * (a0 + a1 * u + a2 * u * u);
             },
             [=](double t) {
                 const double u = t / T;
                 return (-(a0 + a1 * u + a2 * u * u) + (1.0 - u) * (a1 + 2.0 * a2 * u)) / T;
             }});
    }

    double min_value = 1e300;
    for (const auto& tp : tapers) {
        for (int dir = 0; dir < 2; ++dir) {
            auto integrand = [&](double t) {
                const double zd = tp.zdot(t), z = tp.z(t);
                const double rm = dir == 0 ? 0.0
                                           : k_rad_signed(space, prop.radius_at(t)) *
                                                 prop.speed * prop.speed;
                return zd * zd - rm * z * z;
            };
            const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                integrand, 0.0, T, 10, 1e-10);
            const double z0 = tp.z(0.0);
            const double value = (dir == 0 ? d2u_rad : d2u_tan) * z0 * z0 + integral;
            min_value = std::min(min_value, value);
        }
    }
    return min_value;
}

std::optional<double> conjugate_scan(const JacobiPropagation& prop) {
    for (std::size_t i = 0; i + 1 < prop.states.size(); ++i) {
        const double d0 = prop.states[i].detP, d1 = prop.states[i + 1].detP;
        if (d1 == 0.0) return prop.states[i + 1].t;
        if (d0 > 0.0 && d1 < 0.0) {
            const double frac = d0 / (d0 - d1);
            return prop.states[i].t + frac * (prop.states[i + 1].t - prop.states[i].t);
        }
    }
    return std::nullopt;
}

namespace {

double mean_curvature_lhs(const RotSymSpace& space, double t) {
    const Jet3 phi = space.warp().eval(t);
    return (space.m() - 1) * phi.d1 / phi.f + space.dlogw_signed(t);
}

double mean_curvature_lhs_derivative(const RotSymSpace& space, double t) {
    const Jet3 phi = space.warp().eval(t);
    const double q = phi.d1 / phi.f;
    return (space.m() - 1) * (phi.d2 / phi.f - q * q) + space.d2logw_signed(t);
}

}  // namespace

ComparisonSeries mean_curvature_comparison(const RotSymSpace& space,
                                           const std::vector<double>& t_grid, double tol) {
    ComparisonSeries s;
    const double c = space.m() - 1 + space.alpha();
    for (double t : t_grid) {
        space.require_radius(t);
        s.radii.push_back(t);
        s.values.push_back(mean_curvature_lhs(space, t));
        s.bound.push_back(c / t);
    }
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        const double exceed = s.values[i] - s.bound[i];
        if (exceed > tol * std::max(1.0, std::abs(s.bound[i]))) {
            if (!s.monotone_violation || exceed > s.monotone_violation->magnitude)
                s.monotone_violation = {i, s.radii[i], exceed};
        }
    }
    return s;
}

ComparisonSeries mean_curvature_differential(const RotSymSpace& space,
                                             const std::vector<double>& t_grid, double tol) {
    ComparisonSeries s;
    const double c = space.m() - 1 + space.alpha();
    for (double t : t_grid) {
        space.require_radius(t);
        const double lhs = mean_curvature_lhs(space, t);
        s.radii.push_back(t);
        s.values.push_back(mean_curvature_lhs_derivative(space, t));
        s.bound.push_back(-lhs * lhs / c);
    }
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        const double exceed = s.values[i] - s.bound[i];
        if (exceed > tol * std::max(1.0, std::abs(s.bound[i]))) {
            if (!s.monotone_violation || exceed > s.monotone_violation->magnitude)
                s.monotone_violation = {i, s.radii[i], exceed};
        }
    }
    return s;
}

ComparisonSeries bishop_gromov(const RotSymSpace& space, const std::vector<double>& radii,
                               BishopGromovMode mode, double step_tol) {
    ComparisonSeries s;
    const double power = mode == BishopGromovMode::Ball ? space.m() + space.alpha()
                                                        : space.m() - 1 + space.alpha();
    double prev = -1e300;
    for (double r : radii) {
        if (r <= prev) throw std::domain_error("bishop_gromov: radii must be increasing");
        prev = r;
        const double v = mode == BishopGromovMode::Ball ? weighted_ball_volume(space, r)
                                                        : weighted_sphere_area(space, r);
        s.radii.push_back(r);
        s.values.push_back(v);
        s.normalized.push_back(v / std::pow(r, power));
    }
    detect_increase(s, step_tol);
    return s;
}

AvrEstimate avr_estimate(const RotSymSpace& space, int dyadic_levels) {
    if (dyadic_levels < 3) throw std::domain_error("avr_estimate: need >= 3 dyadic levels");
    std::vector<double> radii;
    for (int k = dyadic_levels - 1; k >= 0; --k)
        radii.push_back(space.r_max() / std::pow(2.0, k));
    const ComparisonSeries series = bishop_gromov(space, radii, BishopGromovMode::Ball);
    const auto& v = series.normalized;
    // one Richardson step assuming a leading 1/r correction: with r doubling,
    // L_k = 2 v_{k+1} - v_k removes it
    std::vector<double> extrap;
    for (std::size_t k = 0; k + 1 < v.size(); ++k) extrap.push_back(2.0 * v[k + 1] - v[k]);
    AvrEstimate out;
    out.upper_bound = v.back();
    const double L_last = extrap.back();
    const double L_prev = extrap[extrap.size() - 2];
    out.extrapolation_error = std::abs(L_last - L_prev);
    out.estimate = std::clamp(L_last, 0.0, out.upper_bound);
    out.settled = out.extrapolation_error <= std::max(1e-8, 1e-3 * std::abs(out.upper_bound));
    return out;
}

double trace_square_decomposition_residual(double a, double b, double n, double alpha) {
    const double lhs = -a * a / n - b * b / alpha;
    const double cross = alpha * a / n - b;
    const double rhs = -(a + b) * (a + b) / (n + alpha) - n / (alpha * (n + alpha)) * cross * cross;
    return std::abs(lhs - rhs);
}

}  // namespace rslab
