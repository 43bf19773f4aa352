#pragma once

#include <span>

#include "asylecon/test_outcome.hpp"

namespace asylecon::econ {

// Portmanteau test of residual autocorrelation: Q = n * sum of the first m
// squared sample autocorrelations against chi-squared(m). m defaults to
// min(5, n/4). "accept" keeps the no-autocorrelation null.
TestOutcome box_pierce(std::span<const double> residuals, int m = -1, double alpha = 0.05);

// LM test for autoregressive conditional heteroskedasticity: squared
// residuals on an intercept and q of their own lags, statistic n * R^2
// against chi-squared(q). The decision label follows the convention of the
// study tables: "accept" means changing conditional variance IS present
// (statistic above the critical value), "reject" means none detected.
TestOutcome arch_lm_test(std::span<const double> residuals, int q = 1, double alpha = 0.05);

struct GroupOutcome {
    TestOutcome outcome;   // statistic = observed proportion, reference = p0
    Group group = Group::similar;
    double proportion = 0.0;
};

// Exact two-sided binomial test of `successes` in `n` trials against p0.
// A rejection labels the group higher or lower by the side of p0 the
// observed proportion falls on; otherwise the group is similar.
GroupOutcome binomial_group_test(int successes, int n, double p0 = 0.5, double alpha = 0.05);

}  // namespace asylecon::econ
