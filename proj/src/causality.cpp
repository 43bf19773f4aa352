#include "asylecon/causality.hpp"

#include <cmath>
#include <optional>

#include "asylecon/dist.hpp"

namespace asylecon::econ {

const char* direction_name(Direction d) {
    switch (d) {
        case Direction::none: return "None";
        case Direction::gdp_to_asylum: return "GdpToAsylum";
        case Direction::asylum_to_gdp: return "AsylumToGdp";
        case Direction::bidirectional: return "Bidirectional";
    }
    return "?";
}

namespace {

struct SideModels {
    RegressionFit full;
    RegressionFit restricted;
    int ect_col = -1;
};

// Differenced causality regression for one dependent series at lag order p.
// dep and cross are level series; ect, when present, enters lagged once.
std::optional<SideModels> fit_side(std::span<const double> dep,
                                   std::span<const double> cross,
                                   const std::vector<double>* ect, int p) {
    const int n = static_cast<int>(dep.size());
    const int rows = n - 1 - p;
    const int k_full = 1 + 2 * p + (ect ? 1 : 0);
    if (rows - k_full < 3) return std::nullopt;

    auto dd = [&](int t) { return dep[t] - dep[t - 1]; };
    auto dc = [&](int t) { return cross[t] - cross[t - 1]; };

    Eigen::MatrixXd Xf(rows, k_full), Xr(rows, k_full - p);
    Eigen::VectorXd y(rows);
    int ect_col = -1;
    for (int t = p + 1; t < n; ++t) {
        const int r = t - p - 1;
        y(r) = dd(t);
        int cf = 0, cr = 0;
        Xf(r, cf++) = 1.0;
        Xr(r, cr++) = 1.0;
        for (int i = 1; i <= p; ++i) {
            Xf(r, cf++) = dd(t - i);
            Xr(r, cr++) = dd(t - i);
        }
        for (int i = 1; i <= p; ++i) Xf(r, cf++) = dc(t - i);
        if (ect) {
            ect_col = cf;
            Xf(r, cf++) = (*ect)[static_cast<std::size_t>(t - 1)];
            Xr(r, cr++) = (*ect)[static_cast<std::size_t>(t - 1)];
        }
    }

    SideModels m{ols(Xf, y), ols(Xr, y), ect_col};
    return m;
}

CausalitySide search_side(std::span<const double> dep, std::span<const double> cross,
                          const std::vector<double>* ect, const CausalityOptions& opts) {
    CausalitySide side;
    for (int p = opts.min_lag; p <= opts.max_lag; ++p) {
        auto models = fit_side(dep, cross, ect, p);
        if (!models) continue;
        const double fp = f_test_nested(models->full, models->restricted).f_prob;
        side.lags_tested.push_back(p);
        side.f_prob.push_back(fp);
        if (fp > side.max_f_prob || side.best_lag == 0) {
            side.max_f_prob = fp;
            side.best_lag = p;
        }
    }
    return side;
}

}  // namespace

CausalityResult granger_ecm(std::span<const double> y_asylum,
                            std::span<const double> x_gdp,
                            const CausalityOptions& opts) {
    if (y_asylum.size() != x_gdp.size())
        throw Error(Errc::span_mismatch, "causality test needs aligned series");
    if (opts.min_lag < 1 || opts.max_lag < opts.min_lag)
        throw Error(Errc::internal, "causality lag range is invalid");

    const int n = static_cast<int>(y_asylum.size());

    // Long-run residuals from the static level regression, for the
    // error-correction term of the asylum equation.
    std::vector<double> ect;
    if (opts.include_ect) {
        Eigen::MatrixXd X(n, 2);
        Eigen::VectorXd y(n);
        for (int t = 0; t < n; ++t) {
            X(t, 0) = 1.0;
            X(t, 1) = x_gdp[t];
            y(t) = y_asylum[t];
        }
        ect = ols(X, y).residuals;
    }
    const std::vector<double>* ect_ptr = opts.include_ect ? &ect : nullptr;

    CausalityResult res;
    res.gdp_to_asylum = search_side(y_asylum, x_gdp, ect_ptr, opts);
    res.asylum_to_gdp = search_side(x_gdp, y_asylum, nullptr, opts);
    if (res.gdp_to_asylum.lags_tested.empty() || res.asylum_to_gdp.lags_tested.empty())
        throw Error(Errc::span_too_short, "causality test: no feasible lag order");

    const auto n_lags = static_cast<double>(res.gdp_to_asylum.lags_tested.size());
    res.per_lag_cutoff = std::pow(opts.threshold, 1.0 / n_lags);
    res.gdp_to_asylum.significant = res.gdp_to_asylum.max_f_prob >= res.per_lag_cutoff;
    res.asylum_to_gdp.significant = res.asylum_to_gdp.max_f_prob >= res.per_lag_cutoff;

    if (res.gdp_to_asylum.significant && res.asylum_to_gdp.significant)
        res.direction = Direction::bidirectional;
    else if (res.gdp_to_asylum.significant)
        res.direction = Direction::gdp_to_asylum;
    else if (res.asylum_to_gdp.significant)
        res.direction = Direction::asylum_to_gdp;

    if (opts.include_ect) {
        auto models = fit_side(y_asylum, x_gdp, ect_ptr, res.gdp_to_asylum.best_lag);
        if (models && models->ect_col >= 0) {
            res.ect_included = true;
            res.ect_coef = models->full.coef(models->ect_col);
            const double t = models->full.t_stat(models->ect_col);
            res.ect_p_value = 2.0 * (1.0 - dist::t_cdf(std::abs(t), models->full.df_resid()));
            res.ect_significant = res.ect_p_value <= opts.ect_alpha;
        }
    }
    return res;
}

}  // namespace asylecon::econ
