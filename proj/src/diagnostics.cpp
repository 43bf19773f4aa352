#include "asylecon/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "asylecon/dist.hpp"
#include "asylecon/regression.hpp"

namespace asylecon::econ {

const char* decision_name(Decision d) {
    switch (d) {
        case Decision::accept: return "Accept";
        case Decision::reject: return "Reject";
        case Decision::undecided: return "Undecided";
    }
    return "?";
}

const char* group_name(Group g) {
    switch (g) {
        case Group::higher: return "higher";
        case Group::similar: return "similar";
        case Group::lower: return "lower";
    }
    return "?";
}

TestOutcome box_pierce(std::span<const double> residuals, int m, double alpha) {
    const int n = static_cast<int>(residuals.size());
    if (n < 4)
        throw Error(Errc::series_too_short, "autocorrelation test needs at least 4 residuals");
    if (m < 0) m = std::min(5, n / 4);
    m = std::max(m, 1);

    double mean = 0.0;
    for (double e : residuals) mean += e / n;
    double c0 = 0.0;
    for (double e : residuals) c0 += (e - mean) * (e - mean);

    double q = 0.0;
    if (c0 > 0.0) {
        for (int k = 1; k <= m; ++k) {
            double ck = 0.0;
            for (int t = k; t < n; ++t)
                ck += (residuals[static_cast<std::size_t>(t)] - mean) *
                      (residuals[static_cast<std::size_t>(t - k)] - mean);
            const double rho = ck / c0;
            q += rho * rho;
        }
        q *= n;
    }

    TestOutcome out;
    out.name = "box_pierce";
    out.statistic = q;
    out.reference = dist::chi2_quantile(1.0 - alpha, m);
    out.p_value = 1.0 - dist::chi2_cdf(q, m);
    out.alpha = alpha;
    out.decision = q <= out.reference ? Decision::accept : Decision::reject;
    out.detail = "H0: no autocorrelation up to lag " + std::to_string(m) +
                 (c0 > 0.0 ? "" : " (degenerate constant residuals)");
    return out;
}

TestOutcome arch_lm_test(std::span<const double> residuals, int q, double alpha) {
    const int n = static_cast<int>(residuals.size());
    if (q < 1) throw Error(Errc::internal, "arch_lm_test needs q >= 1");
    if (n < 2 * q + 3)
        throw Error(Errc::series_too_short, "heteroskedasticity test: too few residuals");

    std::vector<double> u(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t)
        u[static_cast<std::size_t>(t)] =
            residuals[static_cast<std::size_t>(t)] * residuals[static_cast<std::size_t>(t)];

    const int rows = n - q;
    double stat = 0.0;
    bool degenerate = false;
    try {
        Eigen::MatrixXd X(rows, q + 1);
        Eigen::VectorXd y(rows);
        for (int t = q; t < n; ++t) {
            const int r = t - q;
            X(r, 0) = 1.0;
            for (int i = 1; i <= q; ++i) X(r, i) = u[static_cast<std::size_t>(t - i)];
            y(r) = u[static_cast<std::size_t>(t)];
        }
        stat = rows * ols(X, y).r_squared;
    } catch (const Error&) {
        degenerate = true;  // constant squared residuals: no effect detectable
    }

    TestOutcome out;
    out.name = "arch_lm";
    out.statistic = stat;
    out.reference = dist::chi2_quantile(1.0 - alpha, q);
    out.p_value = 1.0 - dist::chi2_cdf(stat, q);
    out.alpha = alpha;
    // Inverted labeling on purpose: accept = effect present.
    out.decision = stat > out.reference ? Decision::accept : Decision::reject;
    out.detail = std::string("accept = conditional variance changes over time (LM > crit)") +
                 (degenerate ? "; degenerate squared residuals" : "");
    return out;
}

GroupOutcome binomial_group_test(int successes, int n, double p0, double alpha) {
    if (n < 1) throw Error(Errc::too_few_observations, "binomial test needs n >= 1");
    if (successes < 0 || successes > n)
        throw Error(Errc::internal, "binomial test: successes out of range");

    GroupOutcome g;
    g.proportion = static_cast<double>(successes) / n;
    g.outcome.name = "binomial_group";
    g.outcome.statistic = g.proportion;
    g.outcome.reference = p0;
    g.outcome.p_value = dist::binom_test_two_sided(successes, n, p0);
    g.outcome.alpha = alpha;
    const bool rejected = g.outcome.p_value <= alpha;
    g.outcome.decision = rejected ? Decision::reject : Decision::accept;
    g.outcome.detail = "H0: success probability = " + std::to_string(p0);
    g.group = !rejected ? Group::similar : (g.proportion > p0 ? Group::higher : Group::lower);
    return g;
}

}  // namespace asylecon::econ
