#pragma once

#include <string>
#include <vector>

#include "rslab/scenario.hpp"

namespace rslab {

struct RunOptions {
    std::string out_dir = "out";
    unsigned seed = 42;
    double tol_scale = 1.0;
    bool plots = true;
};

/// Exit semantics: 0 all checks passed (a violated curvature hypothesis is
/// not a failure), 1 inequality/monotonicity violation on a certified space,
/// 2 configuration or numerical-convergence error.
int run_scenario(const Scenario& scenario, const RunOptions& options);

struct ExploreRow {
    int m = 2;
    double alpha = 1.0;
    double beta = 1.0;   // capped_power warp exponent (1 = euclidean)
    double q = 0.0;      // power_density exponent (0 = constant density)
    double cd_margin = 0.0;
    double avr = 0.0;
    double avr_error = 0.0;
    bool certified = false;
    bool avr_settled = false;
};

/// Grid search over the (beta, q, alpha) family for certified nonnegative
/// curvature together with positive asymptotic volume ratio. Reports the best
/// rows found; existence is never asserted.
std::vector<ExploreRow> explore_family(const Scenario& family, int budget);

std::string explore_table_json(const std::vector<ExploreRow>& rows);

}  // namespace rslab
