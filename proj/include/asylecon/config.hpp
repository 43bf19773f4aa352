#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace asylecon::pipeline {

// Study-wide knobs with the defaults of the reference analysis. Parsed from
// a flat "key = value" file; unknown keys are rejected so typos surface
// instead of silently running defaults.
struct StudyConfig {
    double alpha_unit_root = 0.05;
    double bounds_lower = 3.79;
    double bounds_upper = 4.85;
    int ardl_lag = 2;
    int causality_min_lag = 1;
    int causality_max_lag = 4;
    double causality_threshold = 0.95;
    double ect_alpha = 0.10;
    int burn_in = 2;
    std::string baseline_country = "IE";
    int ratio_lag = 1;
    std::uint64_t seed = 42;
    std::string are_normalization = "log";  // "log" or "raw"
    int min_full_span = 8;                  // shorter spans get level tables only
    int window_a1_start = 1997;             // per-capita and ratio comparisons
    int window_a1_end = 2009;
    int window_a4_start = 1998;             // relative elasticity comparisons
    int window_a4_end = 2009;
    int window_t2_start = 2006;             // smoothed elasticity excerpt
    int window_t2_end = 2009;

    static StudyConfig from_file(const std::filesystem::path& path);

    // Apply one key; throws Errc::unknown_config_key / Errc::bad_config_value.
    void set(const std::string& key, const std::string& value);

    // Sorted "key=value" listing; equal configs yield equal strings.
    std::string canonical() const;

    // FNV-1a 64 hash of canonical(), as 16 hex digits. Embedded in every
    // emitted table so outputs can be matched to the settings behind them.
    std::string digest() const;

    void validate() const;
};

std::uint64_t fnv1a64(std::string_view data);
std::string to_hex16(std::uint64_t v);

}  // namespace asylecon::pipeline
