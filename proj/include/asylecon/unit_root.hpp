#pragma once

#include <span>

#include "asylecon/annual_series.hpp"

namespace asylecon::econ {

struct UnitRootResult {
    double stat = 0.0;         // t-ratio on the lagged level
    double crit_1 = 0.0;       // finite-sample critical values
    double crit_5 = 0.0;
    double crit_10 = 0.0;
    int lags = 0;              // augmentation lags picked by AIC
    int nobs = 0;              // observations in the final regression
    double alpha = 0.05;
    bool reject = false;       // unit-root null rejected at alpha
};

// Augmented Dickey-Fuller test with an intercept and no trend. Augmentation
// lags run 0..floor((n-1)^(1/3)) and are chosen by AIC on a common sample.
// Critical values come from the standard response surface in 1/T. Needs at
// least 8 observations.
UnitRootResult adf_test(std::span<const double> s, double alpha = 0.05, int max_lags = -1);

// Dickey-Fuller test on GLS-demeaned data (local-to-unity coefficient
// abar = 1 - 7/n), which concentrates power near the null: the test
// regression then carries no deterministic terms and uses the
// no-deterministics critical-value surface.
UnitRootResult dfgls_test(std::span<const double> s, double alpha = 0.05, int max_lags = -1);

struct IntegrationVerdict {
    int order = 2;  // 0, 1, or 2 meaning "at least 2"
    UnitRootResult level;
    UnitRootResult difference;
};

// Order of integration by testing the level and then the first difference.
IntegrationVerdict integration_order(std::span<const double> s, bool use_dfgls,
                                     double alpha = 0.05);

}  // namespace asylecon::econ
