#include "asylecon/selftest.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "asylecon/causality.hpp"
#include "asylecon/diagnostics.hpp"
#include "asylecon/rng.hpp"
#include "asylecon/state_space.hpp"
#include "asylecon/synthetic.hpp"
#include "asylecon/tvp_models.hpp"
#include "asylecon/unit_root.hpp"

namespace asylecon::selftest {

namespace {

std::string fmt(const char* pattern, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

// Local-level model: the filter's prediction-error log-likelihood must match
// the density of the observations' explicit joint normal,
//   cov(y_s, y_t) = P0 + min(s, t) * q + [s == t] * r,
// evaluated with a dense Cholesky factorization.
SuiteResult kalman_oracle(std::uint64_t seed) {
    const int n = 12;
    const double q = 0.4, r = 1.3, m0 = 0.7, p0 = 2.0;

    Rng rng(seed);
    std::vector<double> y(n);
    {
        double level = m0 + std::sqrt(p0) * rng.gaussian();
        for (int t = 0; t < n; ++t) {
            level += std::sqrt(q) * rng.gaussian();
            y[t] = level + std::sqrt(r) * rng.gaussian();
        }
    }

    Eigen::MatrixXd cov(n, n);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            cov(s, t) = p0 + (std::min(s, t) + 1) * q + (s == t ? r : 0.0);
    Eigen::VectorXd centered = Eigen::Map<Eigen::VectorXd>(y.data(), n).array() - m0;
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    double logdet = 0.0;
    for (int i = 0; i < n; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
    const double quad = centered.dot(llt.solve(centered));
    const double oracle =
        -0.5 * (n * std::log(2.0 * std::numbers::pi) + logdet + quad);

    ssm::StateSpaceSpec spec;
    spec.state_dim = 1;
    spec.Z = Eigen::MatrixXd::Ones(n, 1);
    spec.T = Eigen::MatrixXd::Identity(1, 1);
    spec.meas_var = r;
    spec.state_var = Eigen::VectorXd::Constant(1, q);
    spec.init_mean = Eigen::VectorXd::Constant(1, m0);
    spec.init_cov = Eigen::MatrixXd::Constant(1, 1, p0);
    const double filtered = ssm::filter(spec, y).loglik;

    const double err = std::abs(filtered - oracle) / std::abs(oracle);
    SuiteResult res{"kalman_oracle", err < 1e-10,
                    fmt("relative loglik error %.3g (bound %.3g)", err, 1e-10)};
    return res;
}

SuiteResult unit_root_size_power(std::uint64_t seed) {
    const int reps = 200, n = 80;
    int reject_null = 0, reject_stat = 0;
    for (int k = 0; k < reps; ++k) {
        SeedSpec walk{seed + 2 * k, RandomWalk{}, n};
        SeedSpec ar{seed + 2 * k + 1, Ar1{0.5}, n};
        if (econ::adf_test(generate_synthetic(walk).values()).reject) ++reject_null;
        if (econ::adf_test(generate_synthetic(ar).values()).reject) ++reject_stat;
    }
    const double size = static_cast<double>(reject_null) / reps;
    const double power = static_cast<double>(reject_stat) / reps;
    const bool ok = size <= 0.12 && power >= 0.70;
    return {"unit_root_size_power", ok,
            fmt("size %.3f (<= 0.12), power %.3f (>= 0.70)", size, power)};
}

SuiteResult box_pierce_oracle(std::uint64_t seed) {
    const int reps = 200, n = 60;
    int accept_white = 0, reject_ar = 0;
    for (int k = 0; k < reps; ++k) {
        SeedSpec white{seed + 2 * k, WhiteNoise{}, n};
        SeedSpec ar{seed + 2 * k + 1, Ar1{0.8}, n};
        if (econ::box_pierce(generate_synthetic(white).values()).decision ==
            econ::Decision::accept)
            ++accept_white;
        if (econ::box_pierce(generate_synthetic(ar).values()).decision ==
            econ::Decision::reject)
            ++reject_ar;
    }
    const double acc = static_cast<double>(accept_white) / reps;
    const double rej = static_cast<double>(reject_ar) / reps;
    const bool ok = acc >= 0.85 && rej >= 0.80;
    return {"box_pierce_oracle", ok,
            fmt("white-noise accept %.3f (>= 0.85), AR(0.8) reject %.3f (>= 0.80)", acc, rej)};
}

SuiteResult arch_power(std::uint64_t seed) {
    const int reps = 150, n = 120;
    int detect = 0, false_alarm = 0;
    for (int k = 0; k < reps; ++k) {
        Rng rng(seed + 7919 * (k + 1));
        std::vector<double> e(n);
        double prev2 = 0.3 / (1.0 - 0.7);
        for (int t = 0; t < n; ++t) {
            const double sigma2 = 0.3 + 0.7 * prev2;
            e[t] = std::sqrt(sigma2) * rng.gaussian();
            prev2 = e[t] * e[t];
        }
        if (econ::arch_lm_test(e).decision == econ::Decision::accept) ++detect;

        SeedSpec white{seed + 2 * k + 1, WhiteNoise{}, n};
        if (econ::arch_lm_test(generate_synthetic(white).values()).decision ==
            econ::Decision::accept)
            ++false_alarm;
    }
    const double hit = static_cast<double>(detect) / reps;
    const double fa = static_cast<double>(false_alarm) / reps;
    const bool ok = hit >= 0.70 && fa <= 0.12;
    return {"arch_power", ok,
            fmt("ARCH(1) detection %.3f (>= 0.70), false alarms %.3f (<= 0.12)", hit, fa)};
}

SuiteResult tvp_recovery(std::uint64_t seed) {
    const int reps = 5, n = 40;
    double abs_err_sum = 0.0;
    for (int k = 0; k < reps; ++k) {
        TvpLogLog process;
        process.mu = 1.0;
        process.omega = linear_path(0.8, 1.2, n);
        process.sigma_eps = 0.05;
        SeedSpec spec{seed + 31 * (k + 1), process, n, 0.15};
        const TvpPair pair = generate_synthetic_pair(spec);

        // The fitters take level series and re-log them internally.
        auto exp_series = [](const AnnualSeries& s) {
            std::vector<double> v(s.values().begin(), s.values().end());
            for (double& x : v) x = std::exp(x);
            return AnnualSeries(s.country(), s.start_year(), std::move(v), Unit::pps_index);
        };
        const tvp::ElasticityFit fit =
            tvp::fit_elasticity_model(exp_series(pair.y), exp_series(pair.x));

        // True mean over the reported (burn-in trimmed) years.
        double truth = 0.0;
        int cnt = 0;
        for (int t = 2; t < n; ++t) {
            truth += process.omega[static_cast<std::size_t>(t)];
            ++cnt;
        }
        truth /= cnt;
        abs_err_sum += std::abs(fit.mean_omega - truth);
    }
    const double mean_err = abs_err_sum / reps;
    const bool ok = mean_err <= 0.10;
    return {"tvp_recovery", ok,
            fmt("mean |elasticity error| %.4f (<= %.2f)", mean_err, 0.10)};
}

SuiteResult causality_null(std::uint64_t seed) {
    const int reps = 100, n = 25;
    int none = 0;
    for (int k = 0; k < reps; ++k) {
        SeedSpec ya{seed + 2 * k, RandomWalk{}, n};
        SeedSpec xg{seed + 2 * k + 1, RandomWalk{}, n};
        const econ::CausalityResult res = econ::granger_ecm(
            generate_synthetic(ya).values(), generate_synthetic(xg).values());
        if (res.direction == econ::Direction::none) ++none;
    }
    const double rate = static_cast<double>(none) / reps;
    const bool ok = rate >= 0.90;
    return {"causality_null", ok, fmt("direction None rate %.3f (>= %.2f)", rate, 0.90)};
}

}  // namespace

SelftestReport run_selftest(std::uint64_t seed) {
    SelftestReport report;
    report.suites.push_back(kalman_oracle(seed ^ 0x100));
    report.suites.push_back(unit_root_size_power(seed ^ 0x200));
    report.suites.push_back(box_pierce_oracle(seed ^ 0x300));
    report.suites.push_back(arch_power(seed ^ 0x400));
    report.suites.push_back(tvp_recovery(seed ^ 0x500));
    report.suites.push_back(causality_null(seed ^ 0x600));
    report.all_passed = true;
    for (const SuiteResult& s : report.suites) report.all_passed = report.all_passed && s.passed;
    return report;
}

}  // namespace asylecon::selftest
