#pragma once

#include <utility>
#include <vector>

#include "rslab/space.hpp"

namespace rslab {

/// Geodesic ball about the pole; the boundary sphere has outward normal
/// along the radius.
struct BallDomain {
    double R = 1.0;
};

/// Returns p scaled by a positive constant c (same kind and validity radius).
RadialProfile scaled(const RadialProfile& p, double c);

struct NormalizationResult {
    double lambda = 1.0;
    // both sides of the scaling identity re-evaluated with f = lambda f0
    double lhs = 0.0;  // int_K w|Df| + int_{dK} w f
    double rhs = 0.0;  // (m+alpha) int_K w f^{(m+alpha)/(m+alpha-1)}
};

/// lambda = (L / ((m+alpha) I))^{m+alpha-1} with L and I taken at f0, so that
/// the scaling identity holds exactly for f = lambda f0.
NormalizationResult normalize_f(const RotSymSpace& space, const BallDomain& K,
                                const RadialProfile& f0);

/// Radial solution of div(w f Du) = (m+alpha) w f^{(m+alpha)/(m+alpha-1)} - w|Df|
/// on the ball with <Du, nu> = 1 at the boundary. The radial reduction makes
/// u' explicit: u'(s) = F(s) / (w f phi^{m-1}) with F the cumulative flux.
class NeumannSolution {
public:
    BallDomain domain;
    double lambda = 1.0;
    std::vector<double> grid;      // radii in [0, R]
    std::vector<double> u;
    std::vector<double> uprime;
    std::vector<double> usecond;
    std::vector<std::pair<double, double>> U_set;  // maximal intervals of |u'| < 1
    double pde_residual_max = 0.0;
    double boundary_defect = 0.0;  // |u'(R) - 1|

    // off-grid evaluation, even/odd extensions through the pole
    double u_at(double s) const;
    double uprime_at(double s) const;
    double usecond_at(double s) const;
    double f_at(double s) const;       // normalized f = lambda f0
    double fprime_at(double s) const;
    bool in_U(double s) const;         // strict inequality |u'| < 1

    const RotSymSpace& space() const { return *space_; }

private:
    friend NeumannSolution solve_neumann_radial(const RotSymSpace&, const BallDomain&,
                                                const RadialProfile&, double, int);
    std::shared_ptr<const RotSymSpace> space_;
    RadialProfile f_;                 // normalized
    std::vector<double> flux_;        // F at grid points
    double usecond_pole_ = 0.0;
    double flux_at(double s) const;
};

/// f0 is the *unnormalized* profile; normalization is applied internally and
/// |u'(R) - 1| > tol reports a normalization mismatch.
NeumannSolution solve_neumann_radial(const RotSymSpace& space, const BallDomain& K,
                                     const RadialProfile& f0, double tol = 1e-8,
                                     int grid_points = 2049);

struct Lemma1Check {
    double max_defect = -1e300;  // max over U of w Du-divergence excess
    double argmax_r = 0.0;
};

/// max over U of [w Delta u + <Dw, Du> - (m+alpha) w f^{1/(m+alpha-1)}];
/// nonpositive always, and zero (equality) for constant f.
Lemma1Check verify_lemma1(const RotSymSpace& space, const NeumannSolution& sol);

}  // namespace rslab
