#pragma once

#include <Eigen/Dense>
#include <vector>

#include "asylecon/annual_series.hpp"

namespace asylecon::econ {

struct RegressionFit {
    Eigen::VectorXd coef;
    Eigen::VectorXd se;
    std::vector<double> residuals;
    double rss = 0.0;
    double tss = 0.0;        // centered total sum of squares
    double r_squared = 0.0;
    double sigma2 = 0.0;     // rss / (n - k)
    int n = 0;
    int k = 0;

    int df_resid() const { return n - k; }
    double t_stat(int i) const { return coef(i) / se(i); }

    // Gaussian log-likelihood at the MLE error variance, and the matching
    // Akaike criterion; used for lag-order selection.
    double loglik() const;
    double aic() const;
};

// Least squares through a column-pivoted QR factorization. Throws
// Errc::rank_deficient when X does not have full column rank and
// Errc::span_mismatch when dimensions disagree or n <= k.
RegressionFit ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

struct FTest {
    double f = 0.0;
    double f_prob = 0.0;   // P(F <= f) under the null
    double p_value = 1.0;  // upper tail
    int q = 0;             // restrictions
    int df = 0;            // residual df of the full model
};

// F-test of a nested restriction: both fits must share the observation
// count, with restricted.k < full.k.
FTest f_test_nested(const RegressionFit& full, const RegressionFit& restricted);

}  // namespace asylecon::econ
