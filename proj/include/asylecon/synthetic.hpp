#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "asylecon/annual_series.hpp"

namespace asylecon {

// Data-generating processes for seeded test series. Draw order is part of
// the contract: a given SeedSpec yields bit-identical output on every run.
struct WhiteNoise {};

struct RandomWalk {};

struct Ar1 {
    double phi = 0.5;
};

// Paired regression process on the log scale:
//   x_t  = x_{t-1} + scale * N(0,1)            (driver, starts at x0)
//   y_t  = mu + omega_t * x_{t-1} + sigma_eps * N(0,1)
// All x innovations are drawn before any y innovation.
struct TvpLogLog {
    double mu = 0.0;
    std::vector<double> omega;  // one entry per generated y observation
    double sigma_eps = 0.05;
    double x0 = 2.0;
};

struct SeedSpec {
    std::uint64_t seed = 0;
    std::variant<WhiteNoise, RandomWalk, Ar1, TvpLogLog> process;
    int length = 0;     // number of generated observations
    double scale = 1.0; // innovation standard deviation of the driving noise
    int start_year = 2000;
    std::string country = "SYN";
};

// Single series for WhiteNoise, RandomWalk and Ar1 specs.
AnnualSeries generate_synthetic(const SeedSpec& spec);

// Driver and response for a TvpLogLog spec. x has length + 1 observations
// beginning one year before y so that y_t pairs with x_{t-1}.
struct TvpPair {
    AnnualSeries x;
    AnnualSeries y;
};

TvpPair generate_synthetic_pair(const SeedSpec& spec);

// Evenly spaced path from first to last inclusive, for TvpLogLog::omega.
std::vector<double> linear_path(double first, double last, int length);

}  // namespace asylecon
