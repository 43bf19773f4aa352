#include "asylecon/state_space.hpp"

#include <cmath>
#include <numbers>

namespace asylecon::ssm {

namespace {

constexpr double kVarianceFloor = 1e-12;

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& P) {
    return 0.5 * (P + P.transpose());
}

}  // namespace

StateSpaceSpec StateSpaceSpec::diffuse_regression(Eigen::MatrixXd Z, double kappa) {
    StateSpaceSpec s;
    s.state_dim = static_cast<int>(Z.cols());
    s.Z = std::move(Z);
    s.T = Eigen::MatrixXd::Identity(s.state_dim, s.state_dim);
    s.state_var = Eigen::VectorXd::Zero(s.state_dim);
    s.init_mean = Eigen::VectorXd::Zero(s.state_dim);
    s.init_cov = kappa * Eigen::MatrixXd::Identity(s.state_dim, s.state_dim);
    return s;
}

void StateSpaceSpec::validate(std::size_t n_obs) const {
    if (state_dim < 1) throw Error(Errc::internal, "state_dim must be >= 1");
    if (Z.rows() != static_cast<Eigen::Index>(n_obs) || Z.cols() != state_dim)
        throw Error(Errc::span_mismatch, "Z must be n_obs x state_dim");
    if (T.rows() != state_dim || T.cols() != state_dim)
        throw Error(Errc::span_mismatch, "T must be state_dim x state_dim");
    if (state_var.size() != state_dim || init_mean.size() != state_dim ||
        init_cov.rows() != state_dim || init_cov.cols() != state_dim)
        throw Error(Errc::span_mismatch, "state vectors must match state_dim");
    if (meas_var < 0.0 || (state_var.array() < 0.0).any())
        throw Error(Errc::internal, "variances must be non-negative");
    if (burn_in < 0 || static_cast<std::size_t>(burn_in) >= n_obs + 1)
        throw Error(Errc::too_few_observations, "burn-in leaves no observations");
}

std::string StateSpaceSpec::state_name(int i) const {
    if (i < static_cast<int>(state_names.size())) return state_names[static_cast<std::size_t>(i)];
    return "state" + std::to_string(i);
}

FilterRun filter(const StateSpaceSpec& spec, std::span<const double> y) {
    const std::size_t n = y.size();
    spec.validate(n);

    FilterRun run;
    run.pred_mean.reserve(n);
    run.pred_cov.reserve(n);
    run.filt_mean.reserve(n);
    run.filt_cov.reserve(n);
    run.innovations.reserve(n);
    run.innovation_vars.reserve(n);

    const Eigen::MatrixXd Q = spec.state_var.asDiagonal();
    Eigen::VectorXd a = spec.init_mean;
    Eigen::MatrixXd P = spec.init_cov;
    double loglik = 0.0;

    for (std::size_t t = 0; t < n; ++t) {
        const Eigen::VectorXd a_pred = spec.T * a;
        const Eigen::MatrixXd P_pred = symmetrized(spec.T * P * spec.T.transpose() + Q);
        const Eigen::RowVectorXd z = spec.Z.row(static_cast<Eigen::Index>(t));

        const double v = y[t] - z.dot(a_pred);
        const double F = (z * P_pred * z.transpose())(0, 0) + spec.meas_var;
        if (F <= kVarianceFloor)
            throw Error(Errc::degenerate_innovation_variance,
                        "innovation variance hit the floor at observation " + std::to_string(t));

        const Eigen::VectorXd K = P_pred * z.transpose() / F;
        a = a_pred + K * v;
        P = symmetrized(P_pred - K * (z * P_pred));

        if (static_cast<int>(t) >= spec.burn_in)
            loglik -= 0.5 * (std::log(2.0 * std::numbers::pi) + std::log(F) + v * v / F);

        run.pred_mean.push_back(a_pred);
        run.pred_cov.push_back(P_pred);
        run.filt_mean.push_back(a);
        run.filt_cov.push_back(P);
        run.innovations.push_back(v);
        run.innovation_vars.push_back(F);
    }

    run.loglik = loglik;
    return run;
}

void smooth(const StateSpaceSpec& spec, FilterRun& run) {
    const std::size_t n = run.filt_mean.size();
    if (n == 0) throw Error(Errc::too_few_observations, "nothing to smooth");

    run.smooth_mean.assign(n, Eigen::VectorXd());
    run.smooth_cov.assign(n, Eigen::MatrixXd());
    run.smooth_mean[n - 1] = run.filt_mean[n - 1];
    run.smooth_cov[n - 1] = run.filt_cov[n - 1];

    for (std::size_t t = n - 1; t-- > 0;) {
        const Eigen::MatrixXd& P_filt = run.filt_cov[t];
        const Eigen::MatrixXd& P_next_pred = run.pred_cov[t + 1];

        // Gain J = P_t T' P_{t+1|t}^-1; the pseudo-inverse covers exactly
        // known states (zero predicted variance), where smoothing is a no-op.
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(P_next_pred);
        const Eigen::MatrixXd J = P_filt * spec.T.transpose() * cod.pseudoInverse();

        run.smooth_mean[t] =
            run.filt_mean[t] + J * (run.smooth_mean[t + 1] - run.pred_mean[t + 1]);
        run.smooth_cov[t] = symmetrized(
            P_filt + J * (run.smooth_cov[t + 1] - P_next_pred) * J.transpose());
    }
    run.smoothed = true;
}

std::vector<double> conditional_variances(const FilterRun& run) {
    return run.innovation_vars;
}

}  // namespace asylecon::ssm
