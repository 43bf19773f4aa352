#pragma once

#include <span>
#include <vector>

#include "asylecon/annual_series.hpp"
#include "asylecon/mle.hpp"
#include "asylecon/test_outcome.hpp"

namespace asylecon::tvp {

struct FitOptions {
    int burn_in = 2;        // innovations dropped from the likelihood and
                            // leading smoothed years dropped from reports
    int ratio_lag = 1;      // regressor lag of the ratio model (0 or 1)
    bool raw_are_normalization = false;  // see compute_diagnostics
    ssm::MleOptions mle;
};

// One-step residual quality of a fitted model. are_pct is 100 * sum|e| and
// sse_pct is 100 * sum e^2, both divided by sum|y| of the model's dependent
// variable over the same observations (the raw per-capita dependent sum
// instead when raw normalization is selected).
struct DiagnosticsBlock {
    double are_pct = 0.0;
    double sse_pct = 0.0;
    econ::TestOutcome box_pierce;
    econ::TestOutcome arch;
    int n = 0;
};

DiagnosticsBlock compute_diagnostics(std::span<const double> residuals,
                                     std::span<const double> dependent_abs_base);

// Asylum-to-GDP ratio with a drifting coefficient:
//   y_t = rho_t * x_{t-lag} + e_t,  rho_t a random walk.
// y and x are the per-capita (indexed) level series. The crude ratio
// y_t / x_t and the smoothed rho_t are reported over the same span, which
// excludes the first burn_in modeled years.
struct RatioFit {
    AnnualSeries crude;
    AnnualSeries smoothed;
    std::vector<double> smoothed_var;
    ssm::MleResult mle;              // variance keys: eps, rho
    DiagnosticsBlock diagnostics;
    int first_modeled_year = 0;      // before the burn-in trim
};

RatioFit fit_ratio_model(const AnnualSeries& asylum, const AnnualSeries& gdp,
                         const FitOptions& opts = {});

// Static log-log regression y_t = mu + omega * x_t on the common years of
// log(asylum) and log(gdp); omega is the constant elasticity benchmark.
struct LogLogFit {
    double mu = 0.0;
    double omega = 0.0;
    double mu_se = 0.0;
    double omega_se = 0.0;
    double r_squared = 0.0;
    std::vector<double> residuals;
    int n = 0;
    int first_year = 0;
};

LogLogFit fit_loglog(const AnnualSeries& asylum, const AnnualSeries& gdp);

// Time-varying elasticity on the log scale:
//   y_t = mu_t + omega_t * x_{t-1} + eps_t
// with identity transition; omega_t carries a random-walk variance and mu
// starts stochastic. When the smoothed final mu is within 1.96 standard
// deviations of zero the model is refitted with the mu variance pinned to
// zero (mu_restricted). Reported paths are smoothed and burn-in trimmed;
// mean_omega is the arithmetic mean of the reported omega path.
struct ElasticityFit {
    AnnualSeries mu_path;
    AnnualSeries omega_path;
    std::vector<double> omega_var_path;  // smoothed variance of omega_t
    double mean_omega = 0.0;
    double mu_hat = 0.0;                 // smoothed final-time mu
    ssm::MleResult mle;                  // variance keys: eps, mu, omega
    DiagnosticsBlock diagnostics;
    bool mu_restricted = false;
    bool omega_significant = false;      // |mean_omega| >= 1.96 * omega_mean_sd
    double omega_mean_sd = 0.0;          // mean smoothed sd of omega_t
    bool low_reliability = false;        // short sample or band includes zero
};

ElasticityFit fit_elasticity_model(const AnnualSeries& asylum, const AnnualSeries& gdp,
                                   const FitOptions& opts = {});

// Year-by-year paths divided by the baseline country's path over a fixed
// window. Missing years are NaN; the proportion counts years above 1 with
// ties at one half, and the average is the mean over present years.
struct YearTable {
    std::vector<int> years;
    std::vector<std::string> codes;
    std::vector<std::vector<double>> values;  // codes x years
    std::vector<double> proportion_above_1;
    std::vector<double> average;
};

YearTable relative_year_table(
    const std::vector<std::pair<std::string, const AnnualSeries*>>& paths,
    const std::string& baseline_code, int first_year, int last_year);

}  // namespace asylecon::tvp
