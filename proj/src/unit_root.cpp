#include "asylecon/unit_root.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "asylecon/regression.hpp"

namespace asylecon::econ {

namespace {

// Response-surface constants for the tau distribution, constant-no-trend
// case: cv(T) = b0 + b1/T + b2/T^2 + b3/T^3.
struct Surface {
    double b0, b1, b2, b3;
    double at(int T) const {
        const double x = 1.0 / T;
        return b0 + x * (b1 + x * (b2 + x * b3));
    }
};

constexpr Surface kAdfConst1{-3.43035, -6.5393, -16.786, -79.433};
constexpr Surface kAdfConst5{-2.86154, -2.8903, -4.234, -40.040};
constexpr Surface kAdfConst10{-2.56677, -1.5384, -2.809, 0.0};

// No-deterministics tau surface, used after GLS demeaning.
constexpr Surface kDfNone1{-2.5658, -1.960, -10.04, 0.0};
constexpr Surface kDfNone5{-1.9393, -0.398, 0.0, 0.0};
constexpr Surface kDfNone10{-1.6156, -0.181, 0.0, 0.0};

double pick_crit(double alpha, double c1, double c5, double c10) {
    if (alpha <= 0.025) return c1;
    if (alpha < 0.075) return c5;
    return c10;
}

// Dickey-Fuller regression machinery shared by both tests. `s` is the
// (possibly demeaned) series; with_intercept toggles the constant term.
UnitRootResult df_regression(std::span<const double> s, bool with_intercept,
                             double alpha, int max_lags,
                             const Surface& s1, const Surface& s5, const Surface& s10) {
    const int n = static_cast<int>(s.size());
    if (n < 8)
        throw Error(Errc::series_too_short, "unit-root test needs at least 8 observations");

    std::vector<double> d(static_cast<std::size_t>(n - 1));
    for (int t = 1; t < n; ++t) d[static_cast<std::size_t>(t - 1)] = s[t] - s[t - 1];

    int lag_cap = static_cast<int>(std::floor(std::cbrt(static_cast<double>(n - 1))));
    lag_cap = std::min(lag_cap, (n - 5) / 2);  // keep residual df positive at the cap
    if (max_lags >= 0) lag_cap = std::min(lag_cap, max_lags);
    lag_cap = std::max(lag_cap, 0);

    // Design rows for difference index t (level y_t vs y_{t-1}): response
    // d[t-1], regressors [const?, y_{t-1}, d[t-2], .., d[t-1-L]].
    auto build = [&](int L, int t_first) {
        const int rows = (n - 1) - t_first + 1;
        const int cols = (with_intercept ? 1 : 0) + 1 + L;
        Eigen::MatrixXd X(rows, cols);
        Eigen::VectorXd y(rows);
        for (int t = t_first; t <= n - 1; ++t) {
            const int r = t - t_first;
            int c = 0;
            if (with_intercept) X(r, c++) = 1.0;
            X(r, c++) = s[t - 1];
            for (int i = 1; i <= L; ++i) X(r, c++) = d[static_cast<std::size_t>(t - 1 - i)];
            y(r) = d[static_cast<std::size_t>(t - 1)];
        }
        return std::make_pair(std::move(X), std::move(y));
    };

    // AIC comparison on the sample every candidate can cover.
    const int t_common = lag_cap + 1;
    int best_lag = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    for (int L = 0; L <= lag_cap; ++L) {
        auto [X, y] = build(L, t_common);
        if (X.rows() <= X.cols()) break;
        const double aic = ols(X, y).aic();
        if (aic < best_aic) {
            best_aic = aic;
            best_lag = L;
        }
    }

    auto [X, y] = build(best_lag, best_lag + 1);
    RegressionFit fit = ols(X, y);
    const int level_col = with_intercept ? 1 : 0;

    UnitRootResult res;
    res.stat = fit.t_stat(level_col);
    res.lags = best_lag;
    res.nobs = fit.n;
    res.alpha = alpha;
    res.crit_1 = s1.at(fit.n);
    res.crit_5 = s5.at(fit.n);
    res.crit_10 = s10.at(fit.n);
    res.reject = res.stat < pick_crit(alpha, res.crit_1, res.crit_5, res.crit_10);
    return res;
}

}  // namespace

UnitRootResult adf_test(std::span<const double> s, double alpha, int max_lags) {
    return df_regression(s, true, alpha, max_lags, kAdfConst1, kAdfConst5, kAdfConst10);
}

UnitRootResult dfgls_test(std::span<const double> s, double alpha, int max_lags) {
    const int n = static_cast<int>(s.size());
    if (n < 8)
        throw Error(Errc::series_too_short, "unit-root test needs at least 8 observations");

    // Quasi-difference at abar = 1 - 7/n and fit the mean by GLS.
    const double abar = 1.0 - 7.0 / n;
    double zd = s[0], dd = 1.0;  // t = 0 terms: z_0 = y_0, d_0 = 1
    for (int t = 1; t < n; ++t) {
        const double zt = s[t] - abar * s[t - 1];
        const double dt = 1.0 - abar;
        zd += zt * dt;
        dd += dt * dt;
    }
    const double beta = zd / dd;

    std::vector<double> demeaned(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) demeaned[static_cast<std::size_t>(t)] = s[t] - beta;

    return df_regression(demeaned, false, alpha, max_lags, kDfNone1, kDfNone5, kDfNone10);
}

IntegrationVerdict integration_order(std::span<const double> s, bool use_dfgls, double alpha) {
    auto run = [&](std::span<const double> v) {
        return use_dfgls ? dfgls_test(v, alpha) : adf_test(v, alpha);
    };

    IntegrationVerdict verdict;
    verdict.level = run(s);

    std::vector<double> d(s.size() - 1);
    for (std::size_t t = 1; t < s.size(); ++t) d[t - 1] = s[t] - s[t - 1];
    verdict.difference = run(d);

    if (verdict.level.reject)
        verdict.order = 0;
    else if (verdict.difference.reject)
        verdict.order = 1;
    else
        verdict.order = 2;
    return verdict;
}

}  // namespace asylecon::econ
