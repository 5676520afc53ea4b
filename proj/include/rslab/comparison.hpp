#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "rslab/space.hpp"

namespace rslab {

/// Matrix Jacobi data along a radial transport geodesic at parameter t.
/// Q = P^{-1} P' and d/dt log det P = trace Q hold to integrator tolerance
/// wherever P is invertible; S and Q are symmetric.
struct JacobiState {
    double t = 0.0;
    Eigen::MatrixXd P, Pdot, S, Q;
    double detP = 1.0;
    double logdetP = 0.0;  // log |det P|
};

/// States of P'' = -P S propagated from P(0) = I, P'(0) = D^2 u along the
/// radial geodesic s(t) = s0 + speed*t, plus the data needed to evaluate the
/// density and curvature along it.
struct JacobiPropagation {
    double s0 = 0.0;
    double speed = 0.0;
    double step = 1e-3;
    int m = 2;
    std::vector<JacobiState> states;

    double radius_at(double t) const { return s0 + speed * t; }  // signed
};

JacobiPropagation jacobi_propagate(const RotSymSpace& space, double s0, double speed,
                                   std::pair<double, double> d2u, double T, double step = 1e-3);

struct RiccatiCheck {
    double max_residual = 0.0;        // of Q' + S + Q^2, Q' by central differences
    double max_symmetry_defect = 0.0;
    double max_trace_logdet_defect = 0.0;  // |trace Q - d/dt log det P|
};

RiccatiCheck riccati_check(const JacobiPropagation& prop);

struct MonotoneViolation {
    std::size_t index = 0;
    double t = 0.0;
    double magnitude = 0.0;
};

/// Radius-indexed series with an optional normalization and an inequality or
/// monotonicity violation record. values/bound carry the audited quantities;
/// normalized carries the power-of-radius scaled form where one applies.
struct ComparisonSeries {
    std::vector<double> radii;
    std::vector<double> values;
    std::vector<double> normalized;
    std::vector<double> bound;
    std::optional<MonotoneViolation> monotone_violation;

    std::string to_csv() const;
    std::string to_json() const;
};

/// Audits the upper bound on trace Q + <D log w, gamma'> along the transport
/// geodesic against (m+alpha) F / (1 + t F), F = f_value^{1/(m+alpha-1)}.
/// The initial value must satisfy the divergence bound (within 1e-6).
ComparisonSeries weighted_trace_bound(const RotSymSpace& space, const JacobiPropagation& prop,
                                      double f_value, double step_tol = 1e-7);

/// The transported volume element w(gamma(t)) det P(t); normalized column is
/// (1 + t F)^{-(m+alpha)} w det P / w(gamma(0)), which must be nonincreasing
/// under nonnegative Bakry-Emery curvature.
ComparisonSeries volume_expansion_series(const RotSymSpace& space, const JacobiPropagation& prop,
                                         double f_value, double step_tol = 1e-9);

struct IndexFormSpec {
    unsigned seed = 12345;
    int random_tapers = 5;  // plus 3 deterministic tapers, each in both directions
};

/// Minimum of (D^2 u)(Z(0),Z(0)) + int_0^T (|D_t Z|^2 - Rm(g',Z,Z,g')) dt over
/// the taper family; nonnegative at contact points.
double index_form_check(const RotSymSpace& space, const JacobiPropagation& prop,
                        const IndexFormSpec& spec = {});

/// First zero of det P in (0, T), by sign change with linear interpolation,
/// or nullopt when P stays nonsingular.
std::optional<double> conjugate_scan(const JacobiPropagation& prop);

/// Mean curvature comparison for geodesic spheres: values = H + (log w)',
/// bound = (m-1+alpha)/t. monotone_violation records the worst exceedance.
ComparisonSeries mean_curvature_comparison(const RotSymSpace& space,
                                           const std::vector<double>& t_grid,
                                           double tol = 1e-9);

/// The differential form of the same comparison: values = d/dt [H + (log w)'],
/// bound = -(H + (log w)')^2/(m-1+alpha). Detects curvature-condition failures
/// that the integrated bound can mask.
ComparisonSeries mean_curvature_differential(const RotSymSpace& space,
                                             const std::vector<double>& t_grid,
                                             double tol = 1e-9);

enum class BishopGromovMode { Ball, Sphere };

/// Weighted ball volumes (or sphere areas) over increasing radii with the
/// r^{-(m+alpha)} (resp. t^{-(m-1+alpha)}) normalization; nonincreasing under
/// the curvature hypothesis, and used as a violation detector otherwise.
ComparisonSeries bishop_gromov(const RotSymSpace& space, const std::vector<double>& radii,
                               BishopGromovMode mode, double step_tol = 1e-9);

struct AvrEstimate {
    double estimate = 0.0;             // clamped to [0, upper_bound]
    double extrapolation_error = 0.0;
    double upper_bound = 0.0;          // last normalized value; valid by monotonicity
    bool settled = true;
};

/// Richardson-extrapolated limit of the normalized ball series over the last
/// K dyadic radii up to r_max.
AvrEstimate avr_estimate(const RotSymSpace& space, int dyadic_levels = 8);

/// Residual of the completing-the-square identity behind both trace
/// inequalities: -a^2/n - b^2/alpha =
/// -(a+b)^2/(n+alpha) - (n/(alpha(n+alpha))) (alpha a/n - b)^2.
/// n is m in the transport estimate and m-1 in the sphere estimate.
double trace_square_decomposition_residual(double a, double b, double n, double alpha);

}  // namespace rslab
