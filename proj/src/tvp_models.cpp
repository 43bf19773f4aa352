#include "asylecon/tvp_models.hpp"

#include <cmath>
#include <limits>

#include "asylecon/diagnostics.hpp"
#include "asylecon/regression.hpp"

namespace asylecon::tvp {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::vector<double> slice(const AnnualSeries& s, int first_year, int last_year) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(last_year - first_year + 1));
    for (int y = first_year; y <= last_year; ++y) out.push_back(s.at_year(y));
    return out;
}

// A regressor with no sample variation cannot identify a coefficient path.
void require_variation(const Eigen::MatrixXd& Z, int col, const std::string& who) {
    const double first = Z(0, col);
    for (Eigen::Index r = 1; r < Z.rows(); ++r)
        if (Z(r, col) != first) return;
    throw Error(Errc::degenerate_regressor, who + ": regressor has zero sample variance");
}

}  // namespace

DiagnosticsBlock compute_diagnostics(std::span<const double> residuals,
                                     std::span<const double> dependent_abs_base) {
    double denom = 0.0;
    for (double v : dependent_abs_base) denom += std::abs(v);
    if (!(denom > 0.0))
        throw Error(Errc::internal, "diagnostics: dependent variable sums to zero");

    double abs_sum = 0.0, sq_sum = 0.0;
    for (double e : residuals) {
        abs_sum += std::abs(e);
        sq_sum += e * e;
    }

    DiagnosticsBlock d;
    d.n = static_cast<int>(residuals.size());
    d.are_pct = 100.0 * abs_sum / denom;
    d.sse_pct = 100.0 * sq_sum / denom;
    d.box_pierce = econ::box_pierce(residuals);
    d.arch = econ::arch_lm_test(residuals);
    return d;
}

RatioFit fit_ratio_model(const AnnualSeries& asylum, const AnnualSeries& gdp,
                         const FitOptions& opts) {
    if (opts.ratio_lag < 0 || opts.ratio_lag > 1)
        throw Error(Errc::internal, "ratio_lag must be 0 or 1");

    // Modeled years need y_t, x_{t-lag} and the contemporaneous x_t for the
    // crude ratio, so both ends are capped by the GDP span.
    const int s = std::max(asylum.start_year(), gdp.start_year() + opts.ratio_lag);
    const int e = std::min(asylum.end_year(), gdp.end_year());
    const int n_obs = e - s + 1;
    if (n_obs < 8)
        throw Error(Errc::series_too_short, asylum.country() + ": ratio model needs 8 years");

    Eigen::MatrixXd Z(n_obs, 1);
    std::vector<double> y(static_cast<std::size_t>(n_obs));
    for (int t = s; t <= e; ++t) {
        Z(t - s, 0) = gdp.at_year(t - opts.ratio_lag);
        y[static_cast<std::size_t>(t - s)] = asylum.at_year(t);
    }

    require_variation(Z, 0, asylum.country());
    ssm::StateSpaceSpec spec = ssm::StateSpaceSpec::diffuse_regression(std::move(Z));
    spec.burn_in = opts.burn_in;
    spec.state_names = {"rho"};

    ssm::MleResult mle = ssm::fit_mle(spec, y, {.meas = true, .state = {0}}, opts.mle);
    ssm::FilterRun run = ssm::filter(mle.spec, y);
    ssm::smooth(mle.spec, run);

    const int rs = s + opts.burn_in;  // first reported year
    if (rs > e)
        throw Error(Errc::too_few_observations, "burn-in leaves no reported years");

    std::vector<double> crude, rho, rho_var;
    for (int t = rs; t <= e; ++t) {
        const double x_t = gdp.at_year(t);
        if (x_t == 0.0)
            throw Error(Errc::non_positive_value,
                        gdp.country() + ": zero GDP value in " + std::to_string(t));
        crude.push_back(asylum.at_year(t) / x_t);
        const std::size_t i = static_cast<std::size_t>(t - s);
        rho.push_back(run.smooth_mean[i](0));
        rho_var.push_back(std::max(run.smooth_cov[i](0, 0), 0.0));
    }

    const std::span<const double> innov(run.innovations);
    const std::vector<double> dep = slice(asylum, rs, e);
    return RatioFit{AnnualSeries(asylum.country(), rs, std::move(crude), Unit::ratio),
                    AnnualSeries(asylum.country(), rs, std::move(rho), Unit::ratio),
                    std::move(rho_var),
                    std::move(mle),
                    compute_diagnostics(innov.subspan(static_cast<std::size_t>(opts.burn_in)), dep),
                    s};
}

LogLogFit fit_loglog(const AnnualSeries& asylum, const AnnualSeries& gdp) {
    const AnnualSeries ly = log_transform(asylum);
    const AnnualSeries lx = log_transform(gdp);
    const auto [s, e] = common_years(ly, lx);
    const int n = e - s + 1;
    if (n < 4)
        throw Error(Errc::series_too_short, asylum.country() + ": log-log fit needs 4 years");

    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd y(n);
    for (int t = s; t <= e; ++t) {
        X(t - s, 0) = 1.0;
        X(t - s, 1) = lx.at_year(t);
        y(t - s) = ly.at_year(t);
    }

    econ::RegressionFit reg;
    try {
        reg = econ::ols(X, y);
    } catch (const Error& err) {
        if (err.code() == Errc::rank_deficient)
            throw Error(Errc::degenerate_regressor,
                        gdp.country() + ": GDP series has no variation on the log scale");
        throw;
    }

    LogLogFit fit;
    fit.mu = reg.coef(0);
    fit.omega = reg.coef(1);
    fit.mu_se = reg.se(0);
    fit.omega_se = reg.se(1);
    fit.r_squared = reg.r_squared;
    fit.residuals = std::move(reg.residuals);
    fit.n = n;
    fit.first_year = s;
    return fit;
}

ElasticityFit fit_elasticity_model(const AnnualSeries& asylum, const AnnualSeries& gdp,
                                   const FitOptions& opts) {
    const AnnualSeries ly = log_transform(asylum);
    const AnnualSeries lx = log_transform(gdp);

    // y_t pairs with x_{t-1}: the modeled span shifts the GDP years by one.
    const int s = std::max(ly.start_year(), lx.start_year() + 1);
    const int e = std::min(ly.end_year(), lx.end_year() + 1);
    const int n_obs = e - s + 1;
    if (n_obs < 8)
        throw Error(Errc::series_too_short,
                    asylum.country() + ": elasticity model needs 8 years");

    Eigen::MatrixXd Z(n_obs, 2);
    std::vector<double> y(static_cast<std::size_t>(n_obs));
    for (int t = s; t <= e; ++t) {
        Z(t - s, 0) = 1.0;
        Z(t - s, 1) = lx.at_year(t - 1);
        y[static_cast<std::size_t>(t - s)] = ly.at_year(t);
    }

    require_variation(Z, 1, asylum.country());
    ssm::StateSpaceSpec spec = ssm::StateSpaceSpec::diffuse_regression(std::move(Z));
    spec.burn_in = opts.burn_in;
    spec.state_names = {"mu", "omega"};

    ssm::MleResult mle = ssm::fit_mle(spec, y, {.meas = true, .state = {0, 1}}, opts.mle);
    ssm::FilterRun run = ssm::filter(mle.spec, y);
    ssm::smooth(mle.spec, run);

    // Final-time significance of the level: an insignificant mu pins its
    // variance to zero and the model is re-estimated with mu constant.
    bool mu_restricted = false;
    const double mu_T = run.smooth_mean.back()(0);
    const double mu_T_sd = std::sqrt(std::max(run.smooth_cov.back()(0, 0), 0.0));
    if (std::abs(mu_T) < 1.96 * mu_T_sd) {
        ssm::StateSpaceSpec restricted = spec;
        restricted.state_var(0) = 0.0;
        mle = ssm::fit_mle(restricted, y, {.meas = true, .state = {1}}, opts.mle);
        mle.variance_estimates["mu"] = 0.0;
        mu_restricted = true;
        run = ssm::filter(mle.spec, y);
        ssm::smooth(mle.spec, run);
    }

    const int rs = s + opts.burn_in;
    if (rs > e)
        throw Error(Errc::too_few_observations, "burn-in leaves no reported years");

    std::vector<double> mu_path, omega_path, omega_var;
    double sum = 0.0, sd_sum = 0.0;
    for (int t = rs; t <= e; ++t) {
        const std::size_t i = static_cast<std::size_t>(t - s);
        mu_path.push_back(run.smooth_mean[i](0));
        omega_path.push_back(run.smooth_mean[i](1));
        omega_var.push_back(std::max(run.smooth_cov[i](1, 1), 0.0));
        sum += omega_path.back();
        sd_sum += std::sqrt(omega_var.back());
    }
    const double n_rep = static_cast<double>(omega_path.size());
    const double mean_omega = sum / n_rep;
    const double omega_mean_sd = sd_sum / n_rep;
    const bool omega_significant = std::abs(mean_omega) >= 1.96 * omega_mean_sd;

    const std::span<const double> innov(run.innovations);
    const std::vector<double> dep = opts.raw_are_normalization
                                        ? slice(asylum, rs, e)
                                        : slice(ly, rs, e);
    return ElasticityFit{
        AnnualSeries(asylum.country(), rs, std::move(mu_path), Unit::ratio),
        AnnualSeries(asylum.country(), rs, std::move(omega_path), Unit::ratio),
        std::move(omega_var),
        mean_omega,
        run.smooth_mean.back()(0),
        std::move(mle),
        compute_diagnostics(innov.subspan(static_cast<std::size_t>(opts.burn_in)), dep),
        mu_restricted,
        omega_significant,
        omega_mean_sd,
        n_obs < 14 || !omega_significant};
}

YearTable relative_year_table(
    const std::vector<std::pair<std::string, const AnnualSeries*>>& paths,
    const std::string& baseline_code, int first_year, int last_year) {
    const AnnualSeries* base = nullptr;
    for (const auto& [code, series] : paths)
        if (code == baseline_code) base = series;
    if (!base)
        throw Error(Errc::missing_baseline, "baseline " + baseline_code + " has no path");

    YearTable table;
    for (int y = first_year; y <= last_year; ++y) table.years.push_back(y);

    for (const auto& [code, series] : paths) {
        std::vector<double> row;
        int present = 0;
        double above = 0.0, total = 0.0;
        for (int y = first_year; y <= last_year; ++y) {
            double v = kNan;
            if (series->has_year(y) && base->has_year(y) && base->at_year(y) != 0.0)
                v = series->at_year(y) / base->at_year(y);
            row.push_back(v);
            if (!std::isnan(v)) {
                ++present;
                total += v;
                if (v > 1.0)
                    above += 1.0;
                else if (v == 1.0)
                    above += 0.5;
            }
        }
        table.codes.push_back(code);
        table.values.push_back(std::move(row));
        table.proportion_above_1.push_back(present ? above / present : kNan);
        table.average.push_back(present ? total / present : kNan);
    }
    return table;
}

}  // namespace asylecon::tvp
