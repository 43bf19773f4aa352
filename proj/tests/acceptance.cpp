// Acceptance gates for the library and the batch binary. Each numbered check
// prints exactly one PASS/FAIL line; the process exits nonzero if any fails.
//
// The checks pit the estimators against independent oracles (a joint-Gaussian
// log-density for the filter, a direct autocovariance sum for the portmanteau
// statistic), seeded Monte-Carlo size/power experiments, and band/ordering
// checks on the bundled country fixture.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <Eigen/Dense>

#include <asylecon/annual_series.hpp>
#include <asylecon/causality.hpp>
#include <asylecon/cointegration.hpp>
#include <asylecon/diagnostics.hpp>
#include <asylecon/mle.hpp>
#include <asylecon/panel.hpp>
#include <asylecon/rng.hpp>
#include <asylecon/state_space.hpp>
#include <asylecon/study.hpp>
#include <asylecon/synthetic.hpp>
#include <asylecon/tvp_models.hpp>
#include <asylecon/unit_root.hpp>

namespace fs = std::filesystem;
using namespace asylecon;

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- random state-space cases for the filter/smoother oracles -------------

struct RandomCase {
    ssm::StateSpaceSpec spec;
    std::vector<double> y;
};

RandomCase make_random_case(std::uint64_t seed) {
    Rng rng(seed);
    const int m = 1 + static_cast<int>(rng.raw() % 2);
    const int n = 10;

    RandomCase rc;
    rc.spec.state_dim = m;
    rc.spec.Z = Eigen::MatrixXd(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) rc.spec.Z(i, j) = 2.0 * rng.uniform01() - 1.0;
    rc.spec.T = Eigen::MatrixXd(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            rc.spec.T(i, j) = (1.8 * rng.uniform01() - 0.9) / m;
    rc.spec.meas_var = 0.1 + rng.uniform01();
    rc.spec.state_var = Eigen::VectorXd(m);
    for (int i = 0; i < m; ++i) rc.spec.state_var(i) = 0.05 + 0.5 * rng.uniform01();
    rc.spec.init_mean = Eigen::VectorXd(m);
    for (int i = 0; i < m; ++i) rc.spec.init_mean(i) = rng.gaussian();
    Eigen::MatrixXd a(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = rng.gaussian();
    rc.spec.init_cov = a * a.transpose() + 0.1 * Eigen::MatrixXd::Identity(m, m);
    rc.spec.burn_in = 0;

    rc.y.resize(n);
    for (int i = 0; i < n; ++i) rc.y[i] = 2.0 * rng.gaussian();
    return rc;
}

// Log-density of y under the model, built the slow way: the joint Gaussian
// over all n observations with its full n-by-n covariance, no recursion.
double joint_gaussian_loglik(const ssm::StateSpaceSpec& spec, const std::vector<double>& y) {
    const int n = static_cast<int>(y.size());
    const int m = spec.state_dim;
    const Eigen::MatrixXd q = Eigen::MatrixXd(spec.state_var.asDiagonal());

    // State mean and variance at times 0..n; observation i pairs with state
    // time i + 1 because the prior is pushed through the transition once.
    std::vector<Eigen::VectorXd> mean(n + 1);
    std::vector<Eigen::MatrixXd> var(n + 1);
    mean[0] = spec.init_mean;
    var[0] = spec.init_cov;
    for (int t = 1; t <= n; ++t) {
        mean[t] = spec.T * mean[t - 1];
        var[t] = spec.T * var[t - 1] * spec.T.transpose() + q;
    }
    std::vector<Eigen::MatrixXd> tpow(n + 1);
    tpow[0] = Eigen::MatrixXd::Identity(m, m);
    for (int k = 1; k <= n; ++k) tpow[k] = spec.T * tpow[k - 1];

    Eigen::VectorXd mu(n);
    Eigen::MatrixXd sigma(n, n);
    for (int i = 0; i < n; ++i) {
        mu(i) = spec.Z.row(i) * mean[i + 1];
        for (int j = i; j < n; ++j) {
            const Eigen::MatrixXd cross = var[i + 1] * tpow[j - i].transpose();
            double c = spec.Z.row(i) * cross * spec.Z.row(j).transpose();
            if (i == j) c += spec.meas_var;
            sigma(i, j) = c;
            sigma(j, i) = c;
        }
    }

    const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    const Eigen::VectorXd resid = Eigen::Map<const Eigen::VectorXd>(y.data(), n) - mu;
    const Eigen::VectorXd solved = llt.solve(resid);
    double logdet = 0.0;
    for (int i = 0; i < n; ++i) logdet += std::log(llt.matrixL()(i, i));
    logdet *= 2.0;
    return -0.5 * (n * std::log(2.0 * M_PI) + logdet + resid.dot(solved));
}

bool bits_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

bool bits_equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

// Regression frame of the constant-coefficient elasticity equation: rows
// [1, log x_{t-1}] with the log asylum index as the response.
struct RegressionFrame {
    Eigen::MatrixXd z;
    std::vector<double> y;
};

RegressionFrame lagged_log_frame(const pipeline::Standardized& d) {
    const AnnualSeries ly = log_transform(d.asylum_idx);
    const AnnualSeries lxlag = lag(log_transform(d.gdp_idx), 1);
    const auto [s, e] = common_years(ly, lxlag);
    const int n = e - s + 1;
    RegressionFrame f;
    f.z = Eigen::MatrixXd(n, 2);
    f.y.resize(n);
    for (int t = s; t <= e; ++t) {
        f.z(t - s, 0) = 1.0;
        f.z(t - s, 1) = lxlag.at_year(t);
        f.y[t - s] = ly.at_year(t);
    }
    return f;
}

AnnualSeries exp_series(const AnnualSeries& s, Unit unit) {
    std::vector<double> v(s.values().begin(), s.values().end());
    for (double& x : v) x = std::exp(x);
    return s.with_values(std::move(v), unit);
}

AnnualSeries synth(std::uint64_t seed, std::variant<WhiteNoise, RandomWalk, Ar1, TvpLogLog> p,
                   int length, double scale = 1.0) {
    SeedSpec sp;
    sp.seed = seed;
    sp.process = std::move(p);
    sp.length = length;
    sp.scale = scale;
    return generate_synthetic(sp);
}

const pipeline::CountryReport* find_country(const pipeline::StudyReport& study,
                                            const std::string& code) {
    for (const auto& c : study.countries)
        if (c.code == code) return &c;
    return nullptr;
}

std::string read_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

int main() {
    int failures = 0;
    auto gate = [&](int id, const char* label, bool ok, const std::string& detail) {
        std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", id, label,
                    detail.empty() ? "" : " — ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    };

    // Shared fixtures: the 100 random filter cases and one full study run.
    std::vector<RandomCase> cases;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) cases.push_back(make_random_case(seed));

    std::optional<pipeline::StudyReport> study;
    std::string study_error;
    try {
        const pipeline::CountryPanel panel = pipeline::load_panel(ASYLECON_DATA_DIR);
        study = pipeline::run_study(panel, pipeline::StudyConfig{});
    } catch (const std::exception& e) {
        study_error = std::string("study setup failed: ") + e.what();
    }

    // 1. Filter log-likelihood equals the direct joint-Gaussian log-density.
    try {
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (const auto& rc : cases) {
            const double got = ssm::filter(rc.spec, rc.y).loglik;
            const double want = joint_gaussian_loglik(rc.spec, rc.y);
            worst = std::max(worst, std::abs(got - want));
        }
        const double secs = seconds_since(t0);
        gate(1, "filter matches joint-Gaussian oracle", worst <= 1e-8 && secs < 2.0,
             "max |diff| " + num(worst) + ", " + num(secs) + " s");
    } catch (const std::exception& e) {
        gate(1, "filter matches joint-Gaussian oracle", false, e.what());
    }

    // 2. Smoothed moments at the final time equal the filtered ones bitwise,
    //    on the random cases and on a diffuse regression per fixture country.
    try {
        int runs = 0, exact = 0;
        for (const auto& rc : cases) {
            auto run = ssm::filter(rc.spec, rc.y);
            ssm::smooth(rc.spec, run);
            ++runs;
            exact += bits_equal(run.smooth_mean.back(), run.filt_mean.back()) &&
                     bits_equal(run.smooth_cov.back(), run.filt_cov.back());
        }
        if (!study) throw std::runtime_error(study_error);
        for (const auto& c : study->countries) {
            if (!c.data) continue;
            const RegressionFrame f = lagged_log_frame(*c.data);
            auto spec = ssm::StateSpaceSpec::diffuse_regression(f.z);
            spec.meas_var = 0.05;
            auto run = ssm::filter(spec, f.y);
            ssm::smooth(spec, run);
            ++runs;
            exact += bits_equal(run.smooth_mean.back(), run.filt_mean.back()) &&
                     bits_equal(run.smooth_cov.back(), run.filt_cov.back());
        }
        gate(2, "smoother equals filter at the final time bitwise", runs > 100 && exact == runs,
             std::to_string(exact) + "/" + std::to_string(runs) + " runs exact");
    } catch (const std::exception& e) {
        gate(2, "smoother equals filter at the final time bitwise", false, e.what());
    }

    // 3. The elasticity equation with both coefficient variances pinned to
    //    zero reproduces the static log-log regression on lagged x.
    try {
        if (!study) throw std::runtime_error(study_error);
        int countries = 0;
        double worst = 0.0;
        for (const auto& c : study->countries) {
            if (!c.data) continue;
            const auto& d = *c.data;
            const tvp::LogLogFit ols = tvp::fit_loglog(d.asylum_idx, lag(d.gdp_idx, 1));

            const RegressionFrame f = lagged_log_frame(d);
            // A wide prior keeps its shrinkage far below the comparison
            // tolerance; the default is tighter than this check needs.
            auto spec = ssm::StateSpaceSpec::diffuse_regression(f.z, 1e8);
            spec.state_names = {"mu", "omega"};
            ssm::FreeVariances free_vars;
            free_vars.meas = true;  // coefficient variances stay at zero
            const ssm::MleResult fit = ssm::fit_mle(spec, f.y, free_vars);
            auto run = ssm::filter(fit.spec, f.y);
            ssm::smooth(fit.spec, run);
            const double mu_hat = run.smooth_mean.back()(0);
            const double omega_hat = run.smooth_mean.back()(1);

            worst = std::max({worst, std::abs(mu_hat - ols.mu), std::abs(omega_hat - ols.omega)});
            ++countries;
        }
        gate(3, "restricted drifting-coefficient fit equals static log-log fit",
             countries == 29 && worst <= 1e-4,
             std::to_string(countries) + " countries, max |coef diff| " + num(worst));
    } catch (const std::exception& e) {
        gate(3, "restricted drifting-coefficient fit equals static log-log fit", false, e.what());
    }

    // 4. A frozen set of bounds F statistics maps onto its recorded verdicts.
    try {
        const double f_values[] = {1.23, 2.96, 1.94,  3.04, 0.42, 18.90, 2.52, 198.6,
                                   5.84, 3.85, 0.82,  4.51, 340.0, 4.72, 2.52, 4.46,
                                   5.10, 6.52, 3.73,  77.1, 13.86, 2.97, 13.39, 6.34,
                                   0.84, 1.87, 9.22,  3.90, 7.77};
        const char verdicts[] = {'A', 'A', 'A', 'A', 'A', 'R', 'A', 'R', 'R', 'U',
                                 'A', 'U', 'R', 'U', 'A', 'U', 'R', 'R', 'A', 'R',
                                 'R', 'A', 'R', 'R', 'A', 'A', 'R', 'U', 'R'};
        static_assert(sizeof(f_values) / sizeof(f_values[0]) == 29);
        int mismatches = 0;
        for (int i = 0; i < 29; ++i) {
            const econ::Decision d = econ::bounds_decision(f_values[i], 3.79, 4.85);
            const char got = d == econ::Decision::accept   ? 'A'
                             : d == econ::Decision::reject ? 'R'
                                                           : 'U';
            mismatches += (got != verdicts[i]);
        }
        gate(4, "bounds decision rule reproduces the reference verdict column", mismatches == 0,
             std::to_string(mismatches) + " mismatches in 29");
    } catch (const std::exception& e) {
        gate(4, "bounds decision rule reproduces the reference verdict column", false, e.what());
    }

    // 5. Unit-root size and power, and the power advantage of GLS demeaning.
    try {
        const auto t0 = std::chrono::steady_clock::now();
        int rw_rejects = 0, ar_rejects = 0, adf_near = 0, gls_near = 0;
        for (std::uint64_t seed = 1; seed <= 500; ++seed) {
            rw_rejects += econ::adf_test(synth(seed, RandomWalk{}, 100).values()).reject;
            ar_rejects += econ::adf_test(synth(seed, Ar1{0.5}, 200).values()).reject;
            const AnnualSeries near = synth(seed, Ar1{0.9}, 50);
            adf_near += econ::adf_test(near.values()).reject;
            gls_near += econ::dfgls_test(near.values()).reject;
        }
        const double secs = seconds_since(t0);
        const bool size_ok = rw_rejects >= 10 && rw_rejects <= 45;  // 2%..9% of 500
        const bool power_ok = ar_rejects >= 450;                    // >= 90%
        const bool gls_ok = gls_near > adf_near;
        gate(5, "unit-root size, power, and GLS advantage",
             size_ok && power_ok && gls_ok && secs < 60.0,
             "size " + std::to_string(rw_rejects) + "/500, power " + std::to_string(ar_rejects) +
                 "/500, near-unit ADF " + std::to_string(adf_near) + " vs GLS " +
                 std::to_string(gls_near) + ", " + num(secs) + " s");
    } catch (const std::exception& e) {
        gate(5, "unit-root size, power, and GLS advantage", false, e.what());
    }

    // 6. The portmanteau statistic equals n times the sum of squared sample
    //    autocorrelations computed by an independent direct sum.
    try {
        double worst = 0.0;
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            const AnnualSeries s =
                seed % 2 ? synth(seed, Ar1{0.6}, 100) : synth(seed, WhiteNoise{}, 100);
            const econ::TestOutcome out = econ::box_pierce(s.values());

            const auto v = s.values();
            const int n = static_cast<int>(v.size());
            const int m = 5;  // default order at n = 100: min(5, n/4)
            double mean = 0.0;
            for (double x : v) mean += x;
            mean /= n;
            double c0 = 0.0;
            for (double x : v) c0 += (x - mean) * (x - mean);
            c0 /= n;
            double q = 0.0;
            for (int k = 1; k <= m; ++k) {
                double ck = 0.0;
                for (int t = k; t < n; ++t) ck += (v[t] - mean) * (v[t - k] - mean);
                ck /= n;
                q += (ck / c0) * (ck / c0);
            }
            q *= n;
            worst = std::max(worst, std::abs(out.statistic - q));
        }
        gate(6, "portmanteau statistic matches the direct autocovariance sum", worst <= 1e-10,
             "max |diff| " + num(worst));
    } catch (const std::exception& e) {
        gate(6, "portmanteau statistic matches the direct autocovariance sum", false, e.what());
    }

    // 7. Heteroskedasticity test: size on iid noise, power on a recursive
    //    conditional-variance process.
    try {
        int false_positives = 0, detections = 0;
        for (std::uint64_t seed = 1; seed <= 200; ++seed) {
            const AnnualSeries wn = synth(seed, WhiteNoise{}, 200);
            false_positives += (econ::arch_lm_test(wn.values()).decision == econ::Decision::accept);

            Rng rng(seed);
            std::vector<double> e(200);
            double prev = 0.0;
            for (double& x : e) {
                prev = rng.gaussian() * std::sqrt(1.0 + 0.8 * prev * prev);
                x = prev;
            }
            detections += (econ::arch_lm_test(e).decision == econ::Decision::accept);
        }
        gate(7, "conditional-heteroskedasticity size and power",
             false_positives <= 18 && detections >= 160,
             "false positives " + std::to_string(false_positives) + "/200, detections " +
                 std::to_string(detections) + "/200");
    } catch (const std::exception& e) {
        gate(7, "conditional-heteroskedasticity size and power", false, e.what());
    }

    // 8. Elasticity recovery on generated data: a constant path is pinned
    //    within a tight band everywhere; a drifting path is tracked in RMSE.
    try {
        SeedSpec sp;
        sp.seed = 42;
        sp.length = 200;
        sp.scale = 0.1;
        sp.process = TvpLogLog{0.0, std::vector<double>(200, 0.8), 0.05, 2.0};
        const TvpPair constant = generate_synthetic_pair(sp);
        const tvp::ElasticityFit cfit = tvp::fit_elasticity_model(
            exp_series(constant.y, Unit::per_capita_10k), exp_series(constant.x, Unit::pps_index));
        double band = 0.0;
        for (double w : cfit.omega_path.values()) band = std::max(band, std::abs(w - 0.8));

        double sse = 0.0;
        int terms = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            SeedSpec dp;
            dp.seed = seed;
            dp.length = 200;
            dp.scale = 0.1;
            dp.process = TvpLogLog{0.0, linear_path(0.5, 1.0, 200), 0.05, 2.0};
            const TvpPair pair = generate_synthetic_pair(dp);
            const tvp::ElasticityFit fit = tvp::fit_elasticity_model(
                exp_series(pair.y, Unit::per_capita_10k), exp_series(pair.x, Unit::pps_index));
            const std::vector<double> truth = linear_path(0.5, 1.0, 200);
            for (int year = fit.omega_path.start_year(); year <= fit.omega_path.end_year();
                 ++year) {
                const double diff =
                    fit.omega_path.at_year(year) - truth[year - pair.y.start_year()];
                sse += diff * diff;
                ++terms;
            }
        }
        const double rmse = std::sqrt(sse / terms);
        gate(8, "synthetic elasticity recovery", band <= 0.05 && rmse < 0.1,
             "constant-path max |dev| " + num(band) + ", drifting-path RMSE " + num(rmse));
    } catch (const std::exception& e) {
        gate(8, "synthetic elasticity recovery", false, e.what());
    }

    // 9. Fixture bands and orderings for the headline countries.
    try {
        if (!study) throw std::runtime_error(study_error);
        const auto* ie = find_country(*study, "IE");
        const auto* uk = find_country(*study, "UK");
        const auto* se = find_country(*study, "SE");
        if (!ie || !uk || !se || !ie->elasticity || !uk->elasticity || !se->elasticity)
            throw std::runtime_error("missing elasticity fits for IE/UK/SE");
        const auto& e_ie = *ie->elasticity;
        const bool ie_band = e_ie.mean_omega >= 1.09 - 0.20 && e_ie.mean_omega <= 1.09 + 0.20;
        const bool ie_sig = e_ie.omega_significant && e_ie.mean_omega > 0.0;
        const bool ie_white = e_ie.diagnostics.box_pierce.decision == econ::Decision::accept;
        const bool ie_no_arch = e_ie.diagnostics.arch.decision == econ::Decision::reject;
        const bool order_uk = uk->elasticity->mean_omega < e_ie.mean_omega;
        const bool order_se = se->elasticity->mean_omega > uk->elasticity->mean_omega;
        gate(9, "fixture elasticity bands and country ordering",
             ie_band && ie_sig && ie_white && ie_no_arch && order_uk && order_se,
             "IE " + num(e_ie.mean_omega) + " (significant " + (ie_sig ? "yes" : "no") +
                 ", whiteness " + (ie_white ? "kept" : "lost") + ", changing variance " +
                 (ie_no_arch ? "absent" : "present") + "), UK " +
                 num(uk->elasticity->mean_omega) + ", SE " + num(se->elasticity->mean_omega));
    } catch (const std::exception& e) {
        gate(9, "fixture elasticity bands and country ordering", false, e.what());
    }

    // 10. Independent noise pairs should almost never show a causal direction.
    try {
        int none = 0;
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            const AnnualSeries y = synth(2 * seed, WhiteNoise{}, 200);
            const AnnualSeries x = synth(2 * seed + 1, WhiteNoise{}, 200);
            const econ::CausalityResult res = econ::granger_ecm(y.values(), x.values());
            none += (res.direction == econ::Direction::none);
        }
        gate(10, "no spurious causal direction on independent noise", none >= 90,
             std::to_string(none) + "/100 none");
    } catch (const std::exception& e) {
        gate(10, "no spurious causal direction on independent noise", false, e.what());
    }

    // 11. The batch run finishes quickly and its outputs are byte-identical
    //     across repeated invocations.
    try {
        const fs::path base =
            fs::temp_directory_path() / ("asylecon_accept_" + std::to_string(::getpid()));
        const fs::path out_a = base / "run_a";
        const fs::path out_b = base / "run_b";
        fs::remove_all(base);
        fs::create_directories(base);

        const auto run_cli = [&](const fs::path& out) {
            const std::string cmd = std::string("\"") + ASYLECON_CLI_PATH + "\" run --data \"" +
                                    ASYLECON_DATA_DIR + "\" --out \"" + out.string() +
                                    "\" --formats csv,json";
            return std::system(cmd.c_str());
        };

        const auto t0 = std::chrono::steady_clock::now();
        const int rc_a = run_cli(out_a);
        const double secs = seconds_since(t0);
        const int rc_b = run_cli(out_b);

        bool identical = rc_a == 0 && rc_b == 0;
        int files = 0;
        std::vector<fs::path> names;
        if (identical) {
            for (const auto& entry : fs::directory_iterator(out_a))
                if (entry.is_regular_file()) names.push_back(entry.path().filename());
            std::sort(names.begin(), names.end());
            files = static_cast<int>(names.size());
            identical = files > 0;
            for (const auto& name : names)
                identical = identical && fs::exists(out_b / name) &&
                            read_bytes(out_a / name) == read_bytes(out_b / name);
            int files_b = 0;
            if (fs::exists(out_b))
                for (const auto& entry : fs::directory_iterator(out_b))
                    files_b += entry.is_regular_file();
            identical = identical && files_b == files;
        }
        fs::remove_all(base);
        gate(11, "batch run under 30 s with byte-identical repeat", identical && secs < 30.0,
             "exit " + std::to_string(rc_a) + "/" + std::to_string(rc_b) + ", " +
                 std::to_string(files) + " files, " + num(secs) + " s");
    } catch (const std::exception& e) {
        gate(11, "batch run under 30 s with byte-identical repeat", false, e.what());
    }

    std::printf("%s: %d of 11 criteria failed\n", failures == 0 ? "OK" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
