#include "asylecon/regression.hpp"

#include <cmath>
#include <numbers>

#include "asylecon/dist.hpp"

namespace asylecon::econ {

double RegressionFit::loglik() const {
    const double s2 = rss / n;  // MLE variance
    return -0.5 * n * (std::log(2.0 * std::numbers::pi) + std::log(s2) + 1.0);
}

double RegressionFit::aic() const { return 2.0 * k - 2.0 * loglik(); }

RegressionFit ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    const int n = static_cast<int>(X.rows());
    const int k = static_cast<int>(X.cols());
    if (y.size() != n)
        throw Error(Errc::span_mismatch, "ols: X and y row counts differ");
    if (n <= k)
        throw Error(Errc::too_few_observations, "ols: need more observations than parameters");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < k)
        throw Error(Errc::rank_deficient, "ols: regressor matrix is rank deficient");

    RegressionFit fit;
    fit.n = n;
    fit.k = k;
    fit.coef = qr.solve(y);

    const Eigen::VectorXd resid = y - X * fit.coef;
    fit.residuals.assign(resid.data(), resid.data() + n);
    fit.rss = resid.squaredNorm();
    const double mean = y.mean();
    fit.tss = (y.array() - mean).square().sum();
    fit.r_squared = fit.tss > 0.0 ? 1.0 - fit.rss / fit.tss : 0.0;
    fit.sigma2 = fit.rss / fit.df_resid();

    const Eigen::MatrixXd xtx_inv =
        (X.transpose() * X).ldlt().solve(Eigen::MatrixXd::Identity(k, k));
    fit.se = (fit.sigma2 * xtx_inv.diagonal().array()).sqrt();
    return fit;
}

FTest f_test_nested(const RegressionFit& full, const RegressionFit& restricted) {
    if (full.n != restricted.n)
        throw Error(Errc::span_mismatch, "f_test_nested: fits cover different samples");
    if (restricted.k >= full.k)
        throw Error(Errc::internal, "f_test_nested: restriction must drop parameters");

    FTest t;
    t.q = full.k - restricted.k;
    t.df = full.df_resid();
    if (t.df < 1)
        throw Error(Errc::too_few_observations, "f_test_nested: no residual df");

    // Nesting guarantees rss_r >= rss_f; rounding can leave a tiny negative.
    const double num = std::max(restricted.rss - full.rss, 0.0) / t.q;
    const double den = full.rss / t.df;
    t.f = den > 0.0 ? num / den : (num > 0.0 ? 1e12 : 0.0);
    t.f_prob = dist::f_cdf(t.f, t.q, t.df);
    t.p_value = 1.0 - t.f_prob;
    return t;
}

}  // namespace asylecon::econ
