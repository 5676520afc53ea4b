#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rslab/space.hpp"

namespace rslab {

/// Eigenvalues of Ric - D^2(log w) - (1/alpha) Dlog w (x) Dlog w restricted to
/// the unit radial and unit tangential directions (the tensor is diagonal for
/// radial w on a warped metric; off-diagonal vanishing is by symmetry).
std::pair<double, double> bakry_emery_eigs(const RotSymSpace& space, double r);

enum class CdVerdict { CertifiedNonnegative, Violated, InconclusiveNearZero };

std::string to_string(CdVerdict v);

struct CdGridSpec {
    int points = 512;           // log-uniform on [r_max*1e-3, r_max]
    double r_lo_factor = 1e-3;
    int refine_points = 64;     // local refinement rounds around the minimizer
    int refine_rounds = 3;
};

struct CdReport {
    std::vector<double> grid;
    std::vector<double> radial_eig;
    std::vector<double> tangential_eig;
    double min_eig = 0.0;
    double argmin_r = 0.0;
    CdVerdict verdict = CdVerdict::InconclusiveNearZero;
    double tolerance = 1e-12;

    bool certified() const { return verdict == CdVerdict::CertifiedNonnegative; }
    std::string to_json() const;
    std::string to_csv() const;  // two columns: r, min eigenvalue at r
};

/// Scan both eigenvalues over a log-uniform grid, refine around the minimum
/// and classify. Minimum below -1e-12 is a violation; a minimum inside the
/// band [-1e-12, -1e-15) is reported as inconclusive rather than rounded up,
/// so the exactly-flat case still certifies.
CdReport cd_scan(const RotSymSpace& space, const CdGridSpec& spec = {});

/// Finite-difference validation of the closed forms at radius r:
/// second differences of log w against (log w)'' and the Jacobi relation
/// phi'' = -K_rad phi against the sectional curvature. Returns the max
/// absolute discrepancy (O(h^2)).
double fd_crosscheck(const RotSymSpace& space, double r, double h);

}  // namespace rslab
