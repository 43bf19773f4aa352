#include "asylecon/mle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace asylecon::ssm {

namespace {

constexpr double kPenalty = 1e100;
constexpr double kMeasVarRefilterFloor = 1e-10;

struct SimplexOutcome {
    std::vector<double> best_x;
    double best_f = kPenalty;
    int evals = 0;
    bool converged = false;
};

// Standard Nelder-Mead (reflection 1, expansion 2, contraction 0.5,
// shrink 0.5). f is minimized; convergence is a relative spread test on the
// simplex values, matching a relative tolerance on the log-likelihood.
SimplexOutcome nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                           std::vector<double> x0, double step, double rel_tol,
                           int max_evals) {
    const std::size_t d = x0.size();
    std::vector<std::vector<double>> xs(d + 1, x0);
    for (std::size_t i = 0; i < d; ++i) xs[i + 1][i] += step;

    SimplexOutcome out;
    std::vector<double> fs(d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
        fs[i] = f(xs[i]);
        ++out.evals;
    }

    auto record_best = [&] {
        auto it = std::min_element(fs.begin(), fs.end());
        if (*it < out.best_f) {
            out.best_f = *it;
            out.best_x = xs[static_cast<std::size_t>(it - fs.begin())];
        }
    };
    record_best();

    std::vector<std::size_t> order(d + 1);
    while (out.evals < max_evals) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return fs[a] < fs[b]; });
        const std::size_t lo = order.front(), hi = order.back(), nh = order[d - 1];

        if (std::abs(fs[hi] - fs[lo]) <= rel_tol * (std::abs(fs[lo]) + rel_tol)) {
            out.converged = true;
            break;
        }

        std::vector<double> centroid(d, 0.0);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t i = 0; i <= d; ++i)
                if (i != hi) centroid[k] += xs[i][k] / static_cast<double>(d);

        auto blend = [&](double coef) {
            std::vector<double> x(d);
            for (std::size_t k = 0; k < d; ++k)
                x[k] = centroid[k] + coef * (centroid[k] - xs[hi][k]);
            return x;
        };

        auto reflected = blend(1.0);
        double fr = f(reflected);
        ++out.evals;

        if (fr < fs[lo]) {
            auto expanded = blend(2.0);
            double fe = f(expanded);
            ++out.evals;
            if (fe < fr) {
                xs[hi] = std::move(expanded);
                fs[hi] = fe;
            } else {
                xs[hi] = std::move(reflected);
                fs[hi] = fr;
            }
        } else if (fr < fs[nh]) {
            xs[hi] = std::move(reflected);
            fs[hi] = fr;
        } else {
            auto contracted = blend(fr < fs[hi] ? 0.5 : -0.5);
            double fc = f(contracted);
            ++out.evals;
            if (fc < std::min(fr, fs[hi])) {
                xs[hi] = std::move(contracted);
                fs[hi] = fc;
            } else {
                for (std::size_t i = 0; i <= d; ++i) {
                    if (i == lo) continue;
                    for (std::size_t k = 0; k < d; ++k)
                        xs[i][k] = xs[lo][k] + 0.5 * (xs[i][k] - xs[lo][k]);
                    fs[i] = f(xs[i]);
                    ++out.evals;
                }
            }
        }
        record_best();
    }
    record_best();
    return out;
}

}  // namespace

MleResult fit_mle(const StateSpaceSpec& base, std::span<const double> y,
                  const FreeVariances& free_vars, const MleOptions& opts) {
    base.validate(y.size());
    const int d = free_vars.count();
    if (d < 1 || d > 3)
        throw Error(Errc::internal, "fit_mle supports 1 to 3 free variances");
    for (int idx : free_vars.state)
        if (idx < 0 || idx >= base.state_dim)
            throw Error(Errc::internal, "free state variance index out of range");
    if (static_cast<int>(y.size()) - base.burn_in < 6)
        throw Error(Errc::too_few_observations,
                    "need at least 6 observations beyond the burn-in");

    auto install = [&](const std::vector<double>& logv) {
        StateSpaceSpec s = base;
        std::size_t k = 0;
        if (free_vars.meas) s.meas_var = std::exp(logv[k++]);
        for (int idx : free_vars.state) s.state_var[idx] = std::exp(logv[k++]);
        return s;
    };

    auto objective = [&](const std::vector<double>& logv) -> double {
        double outside = 0.0;
        for (double v : logv) {
            if (v < opts.log_floor) outside += opts.log_floor - v;
            if (v > opts.log_ceil) outside += v - opts.log_ceil;
        }
        if (outside > 0.0) return kPenalty * (1.0 + outside);
        try {
            return -filter(install(logv), y).loglik;
        } catch (const Error&) {
            return kPenalty;  // degenerate innovation variance along the path
        }
    };

    const double n = static_cast<double>(y.size());
    double mean = 0.0;
    for (double v : y) mean += v / n;
    double var_y = 0.0;
    for (double v : y) var_y += (v - mean) * (v - mean) / n;
    var_y = std::max(var_y, 1e-8);

    MleResult result;
    result.loglik_at_optimum = -std::numeric_limits<double>::infinity();
    std::vector<double> best_x;

    const double factors[] = {0.1, 1.0, 10.0};
    for (double factor : factors) {
        const double start = std::log(factor * var_y / d);
        std::vector<double> x0(static_cast<std::size_t>(d),
                               std::clamp(start, opts.log_floor, opts.log_ceil));
        auto run = nelder_mead(objective, std::move(x0), 1.0, opts.rel_tol, opts.max_evals);
        result.n_evaluations += run.evals;
        ++result.restarts_used;
        if (-run.best_f > result.loglik_at_optimum) {
            result.loglik_at_optimum = -run.best_f;
            best_x = run.best_x;
            result.converged = run.converged;
        }
    }

    if (best_x.empty() || result.loglik_at_optimum <= -kPenalty / 2) {
        // Every evaluation was degenerate; report the last start unconverged.
        best_x.assign(static_cast<std::size_t>(d), opts.log_floor);
        result.converged = false;
    }

    StateSpaceSpec fitted = install(best_x);
    std::size_t k = 0;
    auto report = [&](double logv) { return logv < opts.zero_cutoff ? 0.0 : std::exp(logv); };
    if (free_vars.meas) result.variance_estimates["eps"] = report(best_x[k++]);
    for (int idx : free_vars.state)
        result.variance_estimates[base.state_name(idx)] = report(best_x[k++]);

    fitted.meas_var = std::max(fitted.meas_var, kMeasVarRefilterFloor);
    result.spec = std::move(fitted);
    return result;
}

}  // namespace asylecon::ssm
