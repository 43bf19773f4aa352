#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "asylecon/state_space.hpp"

namespace asylecon::ssm {

struct MleOptions {
    double rel_tol = 1e-9;      // relative log-likelihood spread at convergence
    int max_evals = 2000;       // per restart
    double log_floor = -30.0;   // search bounds for log-variances
    double log_ceil = 10.0;
    double zero_cutoff = -25.0; // fitted log-variance below this reports 0
};

// Which variances the optimizer moves; the rest stay at their spec values.
struct FreeVariances {
    bool meas = true;
    std::vector<int> state;  // indices into state_var

    int count() const { return (meas ? 1 : 0) + static_cast<int>(state.size()); }
};

struct MleResult {
    StateSpaceSpec spec;  // base spec with fitted variances installed
    std::map<std::string, double> variance_estimates;  // "eps" plus state names
    double loglik_at_optimum = 0.0;
    bool converged = false;
    int n_evaluations = 0;
    int restarts_used = 0;
};

// Maximum-likelihood variances by Nelder-Mead over log sigma^2, restarted
// from {0.1, 1, 10} times the sample variance of y split across the free
// parameters. Needs at least 6 observations beyond the burn-in and 1 to 3
// free parameters. Non-convergence returns the best point found with
// converged = false rather than throwing.
//
// Reported estimates snap to exactly 0 below exp(zero_cutoff); the installed
// spec floors the measurement variance at 1e-10 so refiltering stays defined.
MleResult fit_mle(const StateSpaceSpec& base, std::span<const double> y,
                  const FreeVariances& free_vars, const MleOptions& opts = {});

}  // namespace asylecon::ssm
