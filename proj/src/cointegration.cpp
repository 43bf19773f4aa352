#include "asylecon/cointegration.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace asylecon::econ {

Decision bounds_decision(double f, double lower, double upper) {
    if (f < lower) return Decision::accept;
    if (f > upper) return Decision::reject;
    return Decision::undecided;
}

BoundsResult ardl_bounds_test(std::span<const double> y, std::span<const double> x,
                              int p, double lower, double upper) {
    const int n = static_cast<int>(y.size());
    if (x.size() != y.size())
        throw Error(Errc::span_mismatch, "bounds test needs aligned series");
    if (p < 1) throw Error(Errc::internal, "bounds test order must be >= 1");

    // Rows at level index t = p..n-1:
    //   dy_t on [1, x_{t-1}, y_{t-1}, dy_{t-1}..dy_{t-p+1}, dx_{t-1}..dx_{t-p+1}, dx_t]
    const int rows = n - p;
    const int k_full = 4 + 2 * (p - 1);
    if (rows <= k_full)
        throw Error(Errc::span_too_short, "bounds test: too few observations for order " +
                                              std::to_string(p));

    auto dy = [&](int t) { return y[t] - y[t - 1]; };
    auto dx = [&](int t) { return x[t] - x[t - 1]; };

    Eigen::MatrixXd Xf(rows, k_full), Xr(rows, k_full - 2);
    Eigen::VectorXd resp(rows);
    for (int t = p; t < n; ++t) {
        const int r = t - p;
        resp(r) = dy(t);
        int cf = 0, cr = 0;
        Xf(r, cf++) = 1.0;
        Xr(r, cr++) = 1.0;
        Xf(r, cf++) = x[t - 1];
        Xf(r, cf++) = y[t - 1];
        for (int i = 1; i <= p - 1; ++i) {
            Xf(r, cf++) = dy(t - i);
            Xr(r, cr++) = dy(t - i);
        }
        for (int i = 1; i <= p - 1; ++i) {
            Xf(r, cf++) = dx(t - i);
            Xr(r, cr++) = dx(t - i);
        }
        Xf(r, cf++) = dx(t);
        Xr(r, cr++) = dx(t);
    }

    const RegressionFit full = ols(Xf, resp);
    const RegressionFit restricted = ols(Xr, resp);
    const FTest ft = f_test_nested(full, restricted);

    BoundsResult res;
    res.f_stat = ft.f;
    res.lower = lower;
    res.upper = upper;
    res.lag = p;
    res.nobs = rows;
    res.outcome.name = "ardl_bounds";
    res.outcome.statistic = ft.f;
    res.outcome.reference = upper;
    res.outcome.p_value = std::numeric_limits<double>::quiet_NaN();  // tabulated bounds only
    res.outcome.decision = bounds_decision(ft.f, lower, upper);
    res.outcome.detail = "H0: no level relationship; F vs bounds [" +
                         std::to_string(lower) + ", " + std::to_string(upper) + "]";
    return res;
}

}  // namespace asylecon::econ
