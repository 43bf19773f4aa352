#pragma once

#include <span>
#include <vector>

#include "asylecon/regression.hpp"
#include "asylecon/test_outcome.hpp"

namespace asylecon::econ {

enum class Direction { none, gdp_to_asylum, asylum_to_gdp, bidirectional };

const char* direction_name(Direction d);

// One direction of the causality search: F-tests of the cross lags in the
// differenced equation of the dependent series, over every feasible lag
// order in [min_lag, max_lag].
struct CausalitySide {
    std::vector<int> lags_tested;
    std::vector<double> f_prob;   // P(F <= f) per tested lag order
    double max_f_prob = 0.0;
    int best_lag = 0;
    bool significant = false;
};

struct CausalityOptions {
    int min_lag = 1;
    int max_lag = 4;
    double threshold = 0.95;   // familywise f_prob level across the lag search
    bool include_ect = false;  // add the lagged long-run residual to the
                               // asylum equation (after a bounds rejection)
    double ect_alpha = 0.10;
};

struct CausalityResult {
    CausalitySide gdp_to_asylum;
    CausalitySide asylum_to_gdp;
    Direction direction = Direction::none;
    double per_lag_cutoff = 0.0;  // f_prob a single lag must reach

    bool ect_included = false;
    double ect_coef = 0.0;
    double ect_p_value = 1.0;     // two-sided t-test in the asylum equation
    bool ect_significant = false;
};

// Granger-style causality between the asylum series y and the GDP series x
// (aligned, equal length, typically logs). Per direction and lag order p the
// full model regresses the difference of the dependent series on an
// intercept, p own difference lags and p cross difference lags; the
// restricted model drops the cross lags, and f_prob = P(F <= f) is recorded
// with its maximizing lag. A side counts as causal when its best f_prob
// clears a per-lag cutoff of threshold^(1/L) for L tested lags, which holds
// the familywise false-positive rate of the lag search at 1 - threshold. Lag orders that leave fewer than 3 residual df are
// skipped; if none is feasible the test throws Errc::span_too_short.
CausalityResult granger_ecm(std::span<const double> y_asylum,
                            std::span<const double> x_gdp,
                            const CausalityOptions& opts = {});

}  // namespace asylecon::econ
