#pragma once

/// Built-in statistical verification: seeded Monte Carlo checks of the
/// estimators against independent closed-form oracles, runnable from the
/// command line in the field. These complement the unit-test suite; they
/// are the part a deployed binary can re-run to prove its numerics.

#include <cstdint>
#include <string>
#include <vector>

namespace asylecon::selftest {

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;  // measured rates / errors with their bounds
};

struct SelftestReport {
    std::vector<SuiteResult> suites;
    bool all_passed = false;
};

/// Runs every suite with the given seed. Same seed, same verdicts.
///   kalman_oracle        filter log-likelihood vs a dense joint-Gaussian
///   unit_root_size_power ADF rejection rates under null and alternative
///   box_pierce_oracle    residual-whiteness rates on noise and an AR(1)
///   arch_power           volatility-clustering detection and false alarms
///   tvp_recovery         mean elasticity recovered from simulated drift
///   causality_null       direction "None" rate on independent walks
SelftestReport run_selftest(std::uint64_t seed);

}  // namespace asylecon::selftest
