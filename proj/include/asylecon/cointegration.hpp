#pragma once

#include <span>

#include "asylecon/regression.hpp"
#include "asylecon/test_outcome.hpp"

namespace asylecon::econ {

struct BoundsResult {
    TestOutcome outcome;   // statistic = F; accept / reject / undecided
    double f_stat = 0.0;
    double lower = 0.0;    // I(0) bound
    double upper = 0.0;    // I(1) bound
    int lag = 0;
    int nobs = 0;
};

// Decision rule of the bounds comparison on its own: accept the
// no-level-relationship null below the lower bound, reject above the upper
// bound, undecided in between.
Decision bounds_decision(double f, double lower, double upper);

// Bounds F-test for a level relationship between y and x in a conditional
// error-correction regression of order p: the F statistic tests joint
// nullity of the lagged levels {y_{t-1}, x_{t-1}} against critical bounds
// tabulated for one regressor, intercept, no trend. y and x must be aligned
// series of equal length.
BoundsResult ardl_bounds_test(std::span<const double> y, std::span<const double> x,
                              int p = 2, double lower = 3.79, double upper = 4.85);

}  // namespace asylecon::econ
