#pragma once

/// Whole-panel orchestration: runs every model and test for each country,
/// isolates per-stage failures, and assembles one report object that the
/// emitters serialize.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asylecon/causality.hpp"
#include "asylecon/cointegration.hpp"
#include "asylecon/config.hpp"
#include "asylecon/diagnostics.hpp"
#include "asylecon/panel.hpp"
#include "asylecon/tvp_models.hpp"
#include "asylecon/unit_root.hpp"

namespace asylecon::pipeline {

/// Classification of a country against the baseline over a fixed window:
/// the binomial verdict, the share of years spent above the baseline, the
/// mean relative level, and how many non-tied overlapping years fed the test.
struct GroupLabel {
    econ::Group group = econ::Group::similar;
    double proportion = 0.5;
    double average = 1.0;
    int years = 0;
};

/// Everything computed for one country. Absent optionals mean the stage was
/// skipped (prerequisite failed or the series is too short); the reason is in
/// `stage_errors` or `notes`.
struct CountryReport {
    std::string code;
    std::string name;
    int span_start = 0;
    int span_end = 0;

    std::optional<Standardized> data;
    std::optional<tvp::RatioFit> ratio;
    std::optional<tvp::LogLogFit> loglog;
    std::optional<tvp::ElasticityFit> elasticity;
    std::optional<econ::IntegrationVerdict> adf_asylum;
    std::optional<econ::IntegrationVerdict> adf_gdp;
    std::optional<econ::IntegrationVerdict> dfgls_asylum;
    std::optional<econ::IntegrationVerdict> dfgls_gdp;
    std::optional<econ::BoundsResult> bounds;
    std::optional<econ::CausalityResult> causality;

    std::optional<GroupLabel> pc_group;
    std::optional<GroupLabel> ratio_group;
    std::optional<GroupLabel> elasticity_group;

    /// True when every stage through causality ran without error.
    bool full_analysis = false;
    /// Stage name -> error message for stages that threw.
    std::map<std::string, std::string> stage_errors;
    /// Human-readable remarks (zero flooring, spliced GDP, restricted drift...).
    std::vector<std::string> notes;
};

/// The complete study: configuration echo, one report per analysed country,
/// and the countries the loader had to drop. `wall_seconds` is informational
/// and never serialized, keeping outputs byte-stable across runs.
struct StudyReport {
    StudyConfig config;
    std::string config_digest;
    std::map<std::string, std::string> file_digests;
    std::vector<CountryReport> countries;
    std::vector<std::pair<std::string, std::string>> excluded;
    double wall_seconds = 0.0;
};

/// Display name for a country code ("IE" -> "Ireland"); the code itself for
/// unknown codes.
std::string country_display_name(const std::string& code);

/// Runs every stage for one country. Never throws for per-stage numerical
/// failures; those are recorded in `stage_errors` and later stages that
/// depend on them are skipped.
CountryReport run_country(const CountryData& country, const AnnualSeries& eu27_asylum_pc,
                          const AnnualSeries& eu27_gdp_pc, const StudyConfig& config);

/// Runs the full study over `panel`. `subset` empty means every country; a
/// non-empty subset is augmented with the baseline country, which group
/// comparisons need. Unknown codes in `subset` raise `unknown_country`.
/// Countries are ordered baseline first, then EU members alphabetically by
/// display name, then the rest.
StudyReport run_study(const CountryPanel& panel, const StudyConfig& config,
                      const std::vector<std::string>& subset = {});

}  // namespace asylecon::pipeline
