#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rslab/comparison.hpp"
#include "rslab/geodesic.hpp"
#include "rslab/neumann.hpp"

namespace rslab {

struct ArSampleSpec {
    int radial_points = 64;
    int angular_points = 32;
    int refine_rounds = 2;   // 5x5 local refinement around the worst sample
    double tol = 1e-8;
};

/// Sampled certificate for contact-set membership: the defining inequality
/// r u(x) + d(x, Phi_r(xbar))^2/2 >= r u(xbar) + r^2 |Du(xbar)|^2/2 checked
/// over a slice grid of K with local refinement. Falsifiable at the recorded
/// resolution, never exact.
struct ArCertificate {
    bool in_Ar = false;
    double worst_margin = 0.0;
    SlicePoint worst_x;
    ArSampleSpec spec;
};

ArCertificate ar_membership(const RotSymSpace& space, const NeumannSolution& sol, double s_bar,
                            double r, const ArSampleSpec& spec = {});

/// Per-point transport record: the image radius of Phi_r, the Jacobi-based
/// Jacobian determinant, the corollary bound check and the monotone series.
struct TransportAudit {
    double base = 0.0;
    double r = 0.0;
    double image = 0.0;   // signed radius, pole pass-through by sign
    bool in_U = false;
    std::optional<ArCertificate> ar;
    double detJ = 1.0;
    double corollary_bound = 0.0;  // (1 + r f^{1/(m+a-1)})^{m+a} w(base)
    double w_image_detJ = 0.0;     // w(Phi_r) |det DPhi_r|
    bool jacobian_bound_ok = false;
    std::optional<double> conjugate_time;
    ComparisonSeries monotonicity;
};

/// certify_ar runs the sampled A_r certificate (costly); a conjugate point
/// before r at a certified contact point is a hard failure and throws.
TransportAudit transport(const RotSymSpace& space, const NeumannSolution& sol, double s_bar,
                         double r, bool certify_ar = false, const ArSampleSpec& spec = {},
                         double jacobi_step = 1e-3);

struct InclusionTarget {
    double rho = 0.0;       // far-set radius to cover
    double preimage = 0.0;  // s with s + r u'(s) = rho
    double margin = 0.0;    // worst A_r margin at the preimage
    bool certified = false;
};

struct InclusionReport {
    double r = 0.0;
    std::vector<InclusionTarget> targets;
    double coverage_fraction = 1.0;
    bool vacuous = false;  // r <= R, empty far set
};

/// Samples far-set radii in [0, r - R), finds transport preimages by
/// bisection and certifies each through ar_membership.
InclusionReport inclusion_audit(const RotSymSpace& space, const NeumannSolution& sol, double r,
                                int target_count = 64, const ArSampleSpec& spec = {});

struct ChainLink {
    double r = 0.0;
    double far_volume = 0.0;      // weighted volume of the r-far set (ball of r - R)
    double rhs_integral = 0.0;    // int_U (1 + r f^{1/(m+a-1)})^{m+a} w dmu
    double divided_far = 0.0;     // far_volume / r^{m+a}
    double divided_rhs = 0.0;     // rhs_integral / r^{m+a}
    bool finite_link_ok = false;  // undivided inequality (may fail for V_a = 0; data)
    bool limit_link_ok = false;   // divided_far <= int_U w f^p (the asserted form)
};

struct SobolevReport {
    double lambda = 1.0;
    bool hypothesis_certified = false;
    double lhs = 0.0;             // int_K w|Df| + int_{dK} w f (normalized f)
    double integral_fp = 0.0;     // int_K w f^{(m+a)/(m+a-1)}
    double U_integral_fp = 0.0;   // same integral over U only
    double avr = 0.0;
    double avr_error = 0.0;
    bool avr_settled = true;
    double rhs = 0.0;             // (m+a) V^{1/(m+a)} (int_K w f^p)^{(m+a-1)/(m+a)}
    bool trivial_rhs = false;     // V_a = 0 within its error bar
    double ratio = 0.0;           // lhs / rhs when rhs > 0
    bool theorem_ok = false;
    bool limit_ok = false;        // headline: V_a (and the divided far series at
                                  // the largest r) <= int_U w f^p
    std::vector<ChainLink> chain;
    double lemma1_max = 0.0;
    double pde_residual = 0.0;

    std::string to_json() const;
};

SobolevReport sobolev_audit(const RotSymSpace& space, const BallDomain& K,
                            const RadialProfile& f0, const std::vector<double>& r_list,
                            double tol = 1e-8);

/// f = 1 specialization of the Sobolev audit (the isoperimetric inequality).
SobolevReport isoperimetric_check(const RotSymSpace& space, const BallDomain& K,
                                  const std::vector<double>& r_list, double tol = 1e-8);

}  // namespace rslab
