#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "asylecon/annual_series.hpp"

namespace asylecon::ssm {

// Linear Gaussian state-space model with a scalar measurement:
//
//   y_t     = Z.row(t) * alpha_t + eps_t,        eps_t ~ N(0, meas_var)
//   alpha_t = T * alpha_{t-1} + eta_t,           eta_t ~ N(0, diag(state_var))
//   alpha_0 ~ N(init_mean, init_cov)
//
// Time is 1..n for the observations; the prior sits at time 0 and is pushed
// through the transition once before the first update. A time-varying
// regression puts the regressors in the rows of Z and an identity T.
struct StateSpaceSpec {
    int state_dim = 1;
    Eigen::MatrixXd Z;           // n x state_dim, one row per observation
    Eigen::MatrixXd T;           // state_dim x state_dim
    double meas_var = 1.0;
    Eigen::VectorXd state_var;   // diagonal process noise, length state_dim
    Eigen::VectorXd init_mean;
    Eigen::MatrixXd init_cov;
    int burn_in = 0;             // leading innovations excluded from loglik
    std::vector<std::string> state_names;  // used for reporting fitted variances

    // Random-walk states with a vague prior N(0, kappa I): the standard
    // setup when nothing is known about the initial coefficient level.
    static StateSpaceSpec diffuse_regression(Eigen::MatrixXd Z, double kappa = 1e6);

    void validate(std::size_t n_obs) const;
    std::string state_name(int i) const;
};

struct FilterRun {
    std::vector<Eigen::VectorXd> pred_mean;   // a_{t|t-1}
    std::vector<Eigen::MatrixXd> pred_cov;    // P_{t|t-1}
    std::vector<Eigen::VectorXd> filt_mean;   // a_{t|t}
    std::vector<Eigen::MatrixXd> filt_cov;    // P_{t|t}
    std::vector<Eigen::VectorXd> smooth_mean; // filled by smooth()
    std::vector<Eigen::MatrixXd> smooth_cov;
    std::vector<double> innovations;          // v_t = y_t - Z.row(t) a_{t|t-1}
    std::vector<double> innovation_vars;      // F_t
    double loglik = 0.0;                      // Gaussian prediction-error form
    bool smoothed = false;
};

// Forward pass. Throws Errc::degenerate_innovation_variance when an F_t
// falls to 1e-12 or below. loglik accumulates
//   -(1/2) * sum over t > burn_in of [log 2*pi + log F_t + v_t^2 / F_t].
FilterRun filter(const StateSpaceSpec& spec, std::span<const double> y);

// Fixed-interval backward pass; fills smooth_mean / smooth_cov. The final
// time is copied from the filtered moments, so they agree bitwise there.
void smooth(const StateSpaceSpec& spec, FilterRun& run);

// One-step-ahead measurement variances F_t, the conditional variance path
// of the observations given their past.
std::vector<double> conditional_variances(const FilterRun& run);

}  // namespace asylecon::ssm
