// Filter, smoother and variance estimation against closed-form oracles.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "asylecon/mle.hpp"
#include "asylecon/rng.hpp"
#include "asylecon/state_space.hpp"

using namespace asylecon;

namespace {

// Local level: one random-walk state observed with noise.
ssm::StateSpaceSpec local_level(int n, double meas_var, double state_var,
                                double init_mean = 0.0, double init_var = 1e6) {
    ssm::StateSpaceSpec s;
    s.state_dim = 1;
    s.Z = Eigen::MatrixXd::Ones(n, 1);
    s.T = Eigen::MatrixXd::Identity(1, 1);
    s.meas_var = meas_var;
    s.state_var = Eigen::VectorXd::Constant(1, state_var);
    s.init_mean = Eigen::VectorXd::Constant(1, init_mean);
    s.init_cov = Eigen::MatrixXd::Constant(1, 1, init_var);
    return s;
}

std::vector<double> random_obs(int n, std::uint64_t seed, double scale = 1.0) {
    Rng rng(seed);
    std::vector<double> y(static_cast<std::size_t>(n));
    for (auto& v : y) v = scale * rng.gaussian();
    return y;
}

}  // namespace

TEST_CASE("filtered mean of a constant state under a vague prior is the running mean") {
    const int n = 12;
    auto y = random_obs(n, 301, 2.0);
    auto spec = ssm::StateSpaceSpec::diffuse_regression(Eigen::MatrixXd::Ones(n, 1));
    spec.meas_var = 1.0;
    auto run = ssm::filter(spec, y);
    double sum = 0.0;
    for (int t = 0; t < n; ++t) {
        sum += y[static_cast<std::size_t>(t)];
        const double mean = sum / (t + 1);
        CHECK(run.filt_mean[static_cast<std::size_t>(t)](0) ==
              doctest::Approx(mean).epsilon(1e-4));
    }
}

TEST_CASE("zero measurement noise makes the filter track the data exactly") {
    const int n = 20;
    auto y = random_obs(n, 302);
    auto spec = local_level(n, 0.0, 1.0, 0.0, 1.0);
    auto run = ssm::filter(spec, y);
    for (int t = 0; t < n; ++t)
        CHECK(run.filt_mean[static_cast<std::size_t>(t)](0) ==
              doctest::Approx(y[static_cast<std::size_t>(t)]).epsilon(1e-12));
}

TEST_CASE("log-likelihood with a pinned zero state equals the iid normal density") {
    const int n = 25;
    auto y = random_obs(n, 303);
    auto spec = local_level(n, 1.0, 0.0, 0.0, 0.0);
    auto run = ssm::filter(spec, y);
    double direct = 0.0;
    for (double v : y) direct -= 0.5 * (std::log(2.0 * std::numbers::pi) + v * v);
    CHECK(run.loglik == doctest::Approx(direct).epsilon(1e-13));
    for (int t = 0; t < n; ++t) {
        CHECK(run.innovation_vars[static_cast<std::size_t>(t)] == doctest::Approx(1.0));
        CHECK(run.innovations[static_cast<std::size_t>(t)] ==
              doctest::Approx(y[static_cast<std::size_t>(t)]));
    }
}

TEST_CASE("burn-in removes exactly the leading innovation terms") {
    const int n = 15;
    auto y = random_obs(n, 304);
    auto spec = local_level(n, 1.0, 0.0, 0.0, 0.0);
    auto full = ssm::filter(spec, y);
    spec.burn_in = 2;
    auto trimmed = ssm::filter(spec, y);
    double skipped = 0.0;
    for (int t = 0; t < 2; ++t) {
        const double v = y[static_cast<std::size_t>(t)];
        skipped -= 0.5 * (std::log(2.0 * std::numbers::pi) + v * v);
    }
    CHECK(trimmed.loglik == doctest::Approx(full.loglik - skipped).epsilon(1e-13));
}

TEST_CASE("smoothing a constant state yields a flat path pinned at the filtered end") {
    const int n = 18;
    auto y = random_obs(n, 305, 1.5);
    auto spec = ssm::StateSpaceSpec::diffuse_regression(Eigen::MatrixXd::Ones(n, 1));
    spec.meas_var = 1.0;
    auto run = ssm::filter(spec, y);
    ssm::smooth(spec, run);
    REQUIRE(run.smoothed);
    REQUIRE(run.smooth_mean.size() == static_cast<std::size_t>(n));

    // Final time is copied from the filtered moments: bitwise equality.
    CHECK(run.smooth_mean.back()(0) == run.filt_mean.back()(0));
    CHECK(run.smooth_cov.back()(0, 0) == run.filt_cov.back()(0, 0));

    // With no state noise every smoothed mean equals the final estimate.
    for (int t = 0; t < n; ++t)
        CHECK(run.smooth_mean[static_cast<std::size_t>(t)](0) ==
              doctest::Approx(run.filt_mean.back()(0)).epsilon(1e-9));
}

TEST_CASE("smoothed variances never exceed filtered variances") {
    const int n = 30;
    auto y = random_obs(n, 306);
    auto spec = local_level(n, 1.0, 0.5);
    auto run = ssm::filter(spec, y);
    ssm::smooth(spec, run);
    for (int t = 0; t < n; ++t)
        CHECK(run.smooth_cov[static_cast<std::size_t>(t)](0, 0) <=
              run.filt_cov[static_cast<std::size_t>(t)](0, 0) + 1e-12);
    // Early in the sample the smoother strictly improves.
    CHECK(run.smooth_cov.front()(0, 0) < run.filt_cov.front()(0, 0));
}

TEST_CASE("innovation variance converges to the algebraic steady state") {
    const int n = 400;
    const double q = 0.3, r = 1.0;
    auto y = random_obs(n, 307);
    auto spec = local_level(n, r, q, 0.0, 50.0);
    auto run = ssm::filter(spec, y);
    // Steady-state predicted variance solves P^2 - qP - qr = 0.
    const double p_star = 0.5 * (q + std::sqrt(q * q + 4.0 * q * r));
    CHECK(run.innovation_vars.back() == doctest::Approx(p_star + r).epsilon(1e-8));
    CHECK(std::abs(run.innovation_vars[n - 1] - run.innovation_vars[n - 2]) < 1e-10);

    auto cv = ssm::conditional_variances(run);
    REQUIRE(cv.size() == run.innovation_vars.size());
    for (std::size_t t = 0; t < cv.size(); ++t) CHECK(cv[t] == run.innovation_vars[t]);
}

TEST_CASE("a fully degenerate model trips the innovation-variance floor") {
    const int n = 5;
    auto y = random_obs(n, 308);
    auto spec = local_level(n, 0.0, 0.0, 0.0, 0.0);
    try {
        ssm::filter(spec, y);
        FAIL("degenerate variance accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::degenerate_innovation_variance);
    }
}

TEST_CASE("specification validation rejects inconsistent shapes") {
    auto spec = local_level(10, 1.0, 0.1);
    auto y = random_obs(8, 309);  // 8 observations vs Z built for 10
    CHECK_THROWS_AS(ssm::filter(spec, y), Error);

    auto bad = local_level(8, -1.0, 0.1);
    CHECK_THROWS_AS(ssm::filter(bad, y), Error);

    auto burn = local_level(8, 1.0, 0.1);
    burn.burn_in = 9;
    CHECK_THROWS_AS(ssm::filter(burn, y), Error);
}

TEST_CASE("the scalar gain stays between zero and one") {
    for (std::uint64_t seed : {401u, 402u, 403u}) {
        Rng rng(seed);
        const int n = 40;
        auto y = random_obs(n, seed + 1000);
        auto spec = local_level(n, 0.5 + rng.uniform01(), rng.uniform01(), 0.0,
                                1.0 + 5.0 * rng.uniform01());
        auto run = ssm::filter(spec, y);
        for (int t = 0; t < n; ++t) {
            const double v = run.innovations[static_cast<std::size_t>(t)];
            if (std::abs(v) < 1e-12) continue;
            const double gain = (run.filt_mean[static_cast<std::size_t>(t)](0) -
                                 run.pred_mean[static_cast<std::size_t>(t)](0)) /
                                v;
            CHECK(gain >= -1e-12);
            CHECK(gain <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("stored covariances are symmetric in a two-state model") {
    const int n = 25;
    Rng rng(411);
    Eigen::MatrixXd Z(n, 2);
    for (int t = 0; t < n; ++t) {
        Z(t, 0) = 1.0;
        Z(t, 1) = rng.gaussian();
    }
    ssm::StateSpaceSpec spec = ssm::StateSpaceSpec::diffuse_regression(Z);
    spec.meas_var = 0.4;
    spec.state_var = Eigen::VectorXd::Constant(2, 0.05);
    auto y = random_obs(n, 412);
    auto run = ssm::filter(spec, y);
    ssm::smooth(spec, run);
    auto sym = [](const Eigen::MatrixXd& P) {
        return (P - P.transpose()).cwiseAbs().maxCoeff();
    };
    for (int t = 0; t < n; ++t) {
        CHECK(sym(run.pred_cov[static_cast<std::size_t>(t)]) <= 1e-10);
        CHECK(sym(run.filt_cov[static_cast<std::size_t>(t)]) <= 1e-10);
        CHECK(sym(run.smooth_cov[static_cast<std::size_t>(t)]) <= 1e-10);
    }
}

TEST_CASE("variance estimation recovers the generating variances in the median") {
    const int n = 200;
    const double true_meas = 1.0, true_state = 0.1;
    std::vector<double> meas_hat, state_hat;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng rng(seed * 7919);
        std::vector<double> y(n);
        double level = 0.0;
        for (int t = 0; t < n; ++t) {
            level += std::sqrt(true_state) * rng.gaussian();
            y[static_cast<std::size_t>(t)] = level + std::sqrt(true_meas) * rng.gaussian();
        }
        auto base = local_level(n, 1.0, 1.0, 0.0, 1e6);
        base.state_names = {"level"};
        ssm::FreeVariances free_vars;
        free_vars.meas = true;
        free_vars.state = {0};
        auto fit = ssm::fit_mle(base, y, free_vars);
        CHECK(fit.converged);
        meas_hat.push_back(fit.variance_estimates.at("eps"));
        state_hat.push_back(fit.variance_estimates.at("level"));
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return 0.5 * (v[v.size() / 2] + v[(v.size() - 1) / 2]);
    };
    const double m = median(meas_hat), s = median(state_hat);
    CHECK(m > 0.7 * true_meas);
    CHECK(m < 1.3 * true_meas);
    CHECK(s > 0.7 * true_state);
    CHECK(s < 1.3 * true_state);
}

TEST_CASE("constant observations drive both variances to an exact zero") {
    const int n = 12;
    std::vector<double> y(n, 5.0);
    auto base = local_level(n, 1.0, 1.0);
    base.state_names = {"level"};
    ssm::FreeVariances free_vars;
    free_vars.meas = true;
    free_vars.state = {0};
    auto fit = ssm::fit_mle(base, y, free_vars);
    CHECK(fit.variance_estimates.at("eps") == 0.0);
    CHECK(fit.variance_estimates.at("level") == 0.0);
    // The installed spec keeps a tiny floor so refiltering stays defined.
    CHECK(fit.spec.meas_var > 0.0);
    auto rerun = ssm::filter(fit.spec, y);
    CHECK(std::isfinite(rerun.loglik));
}

TEST_CASE("the optimum is at least as likely as the generating parameters") {
    const int n = 150;
    Rng rng(5150);
    std::vector<double> y(n);
    double level = 2.0;
    for (int t = 0; t < n; ++t) {
        level += std::sqrt(0.2) * rng.gaussian();
        y[static_cast<std::size_t>(t)] = level + rng.gaussian();
    }
    auto base = local_level(n, 1.0, 1.0, 0.0, 1e6);
    ssm::FreeVariances free_vars;
    free_vars.meas = true;
    free_vars.state = {0};
    auto fit = ssm::fit_mle(base, y, free_vars);

    auto truth = local_level(n, 1.0, 0.2, 0.0, 1e6);
    auto at_truth = ssm::filter(truth, y);
    CHECK(fit.loglik_at_optimum >= at_truth.loglik - 1e-6);
}

TEST_CASE("estimation rejects unusable setups") {
    auto base = local_level(12, 1.0, 1.0);
    std::vector<double> y = random_obs(12, 999);

    ssm::FreeVariances none;
    none.meas = false;
    CHECK_THROWS_AS(ssm::fit_mle(base, y, none), Error);

    auto tiny = local_level(5, 1.0, 1.0);
    std::vector<double> y5 = random_obs(5, 998);
    ssm::FreeVariances just_meas;
    try {
        ssm::fit_mle(tiny, y5, just_meas);
        FAIL("too few observations accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::too_few_observations);
    }
}
