#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "rslab/jet.hpp"

namespace rslab {

/// Smooth function of the radius with derivatives up to order 3, valid on
/// [0, r_max]. Used for warps, densities and test functions. Presets carry
/// exact derivatives through jet arithmetic; spline profiles interpolate
/// tabulated data and are flagged lower-trust in reports.
class RadialProfile {
public:
    RadialProfile() = default;
    RadialProfile(std::string kind, std::vector<double> params, double r_max,
                  std::function<Jet3(const Jet3&)> eval, bool exact = true);

    Jet3 eval(double r) const;

    double value(double r) const { return eval(r).f; }
    double deriv1(double r) const { return eval(r).d1; }
    double deriv2(double r) const { return eval(r).d2; }
    double deriv3(double r) const { return eval(r).d3; }

    const std::string& kind() const { return kind_; }
    const std::vector<double>& params() const { return params_; }
    double r_max() const { return r_max_; }
    /// false for spline-interpolated profiles
    bool exact_derivatives() const { return exact_; }

    /// warp invariants: phi(0)=0, phi'(0)=1, phi''(0)=0, phi>0 on (0, r_max]
    void validate_as_warp() const;
    /// density/test-function invariants: positive on [0, r_max], w'(0)=0
    void validate_as_density() const;

private:
    std::string kind_ = "unset";
    std::vector<double> params_;
    double r_max_ = 0.0;
    std::function<Jet3(const Jet3&)> eval_;
    bool exact_ = true;
};

/// Named presets, see make_profile():
///   warps:     euclidean, hyperbolic_like, capped_power (beta)
///   densities: const (value), gaussian_density, power_density (q)
///   generic:   polynomial (c0, c1, ...)
RadialProfile make_profile(const std::string& preset, const std::vector<double>& params,
                           double r_max);

/// Natural cubic spline through (r, value) samples; C^2, third derivative
/// piecewise constant.
RadialProfile make_spline_profile(const std::vector<double>& r, const std::vector<double>& v,
                                  double r_max);

/// Load (r, value) columns from a two-column CSV file.
RadialProfile load_spline_profile_csv(const std::string& path, double r_max);

std::vector<std::string> profile_preset_names();

}  // namespace rslab
