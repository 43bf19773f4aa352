#include "asylecon/study.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <set>

namespace asylecon::pipeline {

namespace {

struct NameRow {
    const char* code;
    const char* name;
    bool eu;
};

constexpr std::array<NameRow, 29> kCountryNames{{
    {"AT", "Austria", true},       {"BE", "Belgium", true},
    {"BG", "Bulgaria", true},      {"CY", "Cyprus", true},
    {"CZ", "Czech Rep.", true},    {"DK", "Denmark", true},
    {"EE", "Estonia", true},       {"FI", "Finland", true},
    {"FR", "France", true},        {"DE", "Germany", true},
    {"GR", "Greece", true},        {"HU", "Hungary", true},
    {"IE", "Ireland", true},       {"IT", "Italy", true},
    {"LV", "Latvia", true},        {"LT", "Lithuania", true},
    {"LU", "Luxembourg", true},    {"MT", "Malta", true},
    {"NL", "Netherlands", true},   {"PL", "Poland", true},
    {"PT", "Portugal", true},      {"RO", "Romania", true},
    {"SK", "Slovakia", true},      {"SI", "Slovenia", true},
    {"ES", "Spain", true},         {"SE", "Sweden", true},
    {"UK", "UK", true},            {"NO", "Norway", false},
    {"CH", "Switzerland", false},
}};

const NameRow* find_name(const std::string& code) {
    for (const auto& row : kCountryNames)
        if (code == row.code) return &row;
    return nullptr;
}

// Binomial years-above-baseline comparison over [w0, w1]. Tied years drop
// out of the trial count; no overlap at all yields "similar" at one half.
std::optional<GroupLabel> group_vs_baseline(const AnnualSeries& country,
                                            const AnnualSeries& baseline, int w0, int w1) {
    int successes = 0, trials = 0, overlap = 0;
    double rel_sum = 0.0;
    for (int y = w0; y <= w1; ++y) {
        if (!country.has_year(y) || !baseline.has_year(y)) continue;
        const double c = country.at_year(y), b = baseline.at_year(y);
        ++overlap;
        rel_sum += c / b;
        if (c == b) continue;
        ++trials;
        if (c > b) ++successes;
    }
    if (overlap == 0) return std::nullopt;
    GroupLabel label;
    label.average = rel_sum / overlap;
    label.years = trials;
    if (trials == 0) {
        // Every shared year ties (the baseline against itself): trivially similar.
        label.group = econ::Group::similar;
        label.proportion = 0.5;
        return label;
    }
    const econ::GroupOutcome out = econ::binomial_group_test(successes, trials);
    label.group = out.group;
    label.proportion = out.proportion;
    return label;
}

template <typename Fn>
bool stage(CountryReport& report, const char* name, Fn&& fn) {
    try {
        fn();
        return true;
    } catch (const Error& err) {
        report.stage_errors.emplace(name, err.what());
        return false;
    }
}

}  // namespace

std::string country_display_name(const std::string& code) {
    const NameRow* row = find_name(code);
    return row ? row->name : code;
}

CountryReport run_country(const CountryData& country, const AnnualSeries& eu27_asylum_pc,
                          const AnnualSeries& eu27_gdp_pc, const StudyConfig& config) {
    CountryReport report;
    report.code = country.code;
    report.name = country_display_name(country.code);
    report.span_start = country.asylum.start_year();
    report.span_end = country.asylum.end_year();

    if (country.gdp_spliced) report.notes.push_back("GDP joined from two vintages");
    if (country.population_interpolated)
        report.notes.push_back("population gaps filled by interpolation");

    tvp::FitOptions fit_opts;
    fit_opts.burn_in = config.burn_in;
    fit_opts.ratio_lag = config.ratio_lag;
    fit_opts.raw_are_normalization = config.are_normalization == "raw";

    if (!stage(report, "standardize", [&] {
            report.data = standardize(country, eu27_asylum_pc, eu27_gdp_pc);
        }))
        return report;

    const Standardized& std_data = *report.data;
    if (std_data.zero_floored) {
        char note[96];
        std::snprintf(note, sizeof note, "zero application years floored at %.6g per 10k",
                      std_data.floor_value);
        report.notes.push_back(note);
    }

    stage(report, "ratio", [&] {
        report.ratio = tvp::fit_ratio_model(std_data.asylum_idx, std_data.gdp_idx, fit_opts);
    });
    stage(report, "loglog", [&] {
        report.loglog = tvp::fit_loglog(std_data.asylum_idx, std_data.gdp_idx);
    });

    const AnnualSeries log_asylum = log_transform(std_data.asylum_idx);
    const AnnualSeries log_gdp = log_transform(std_data.gdp_idx);
    stage(report, "unit_root", [&] {
        report.adf_asylum =
            econ::integration_order(log_asylum.values(), false, config.alpha_unit_root);
        report.adf_gdp = econ::integration_order(log_gdp.values(), false, config.alpha_unit_root);
        report.dfgls_asylum =
            econ::integration_order(log_asylum.values(), true, config.alpha_unit_root);
        report.dfgls_gdp = econ::integration_order(log_gdp.values(), true, config.alpha_unit_root);
    });

    const int span = report.span_end - report.span_start + 1;
    if (span < config.min_full_span) {
        report.notes.push_back("span below the full-analysis window; "
                               "cointegration and causality skipped");
    } else {
        stage(report, "bounds", [&] {
            report.bounds = econ::ardl_bounds_test(log_asylum.values(), log_gdp.values(),
                                                   config.ardl_lag, config.bounds_lower,
                                                   config.bounds_upper);
        });
        stage(report, "causality", [&] {
            econ::CausalityOptions opts;
            opts.min_lag = config.causality_min_lag;
            opts.max_lag = config.causality_max_lag;
            opts.threshold = config.causality_threshold;
            opts.ect_alpha = config.ect_alpha;
            opts.include_ect =
                report.bounds && report.bounds->outcome.decision == econ::Decision::reject;
            report.causality = econ::granger_ecm(log_asylum.values(), log_gdp.values(), opts);
        });
    }

    stage(report, "elasticity", [&] {
        report.elasticity =
            tvp::fit_elasticity_model(std_data.asylum_idx, std_data.gdp_idx, fit_opts);
    });
    if (report.elasticity) {
        if (report.elasticity->mu_restricted)
            report.notes.push_back("level drift restricted to zero");
        if (report.elasticity->low_reliability)
            report.notes.push_back("elasticity flagged low reliability");
    }

    report.full_analysis = report.stage_errors.empty() && report.bounds.has_value() &&
                           report.causality.has_value();
    return report;
}

StudyReport run_study(const CountryPanel& panel, const StudyConfig& config,
                      const std::vector<std::string>& subset) {
    const auto t0 = std::chrono::steady_clock::now();
    config.validate();

    StudyReport study;
    study.config = config;
    study.config_digest = config.digest();
    study.file_digests = panel.file_digests;
    study.excluded = panel.excluded;

    if (panel.countries.find(config.baseline_country) == panel.countries.end())
        throw Error(Errc::unknown_country,
                    "baseline country " + config.baseline_country + " is not in the panel");

    std::set<std::string> wanted;
    if (subset.empty()) {
        for (const auto& [code, _] : panel.countries) wanted.insert(code);
    } else {
        for (const std::string& code : subset) {
            if (panel.countries.find(code) == panel.countries.end())
                throw Error(Errc::unknown_country, "unknown country code " + code);
            wanted.insert(code);
        }
        wanted.insert(config.baseline_country);
    }

    const AnnualSeries eu_pc = panel.eu27_asylum_pc();
    const AnnualSeries& eu_gdp = panel.eu27_gdp_pc();

    for (const std::string& code : wanted)
        study.countries.push_back(
            run_country(panel.countries.at(code), eu_pc, eu_gdp, config));

    // Report order: baseline, EU members by display name, then the rest.
    auto rank = [&](const CountryReport& r) {
        if (r.code == config.baseline_country) return 0;
        const NameRow* row = find_name(r.code);
        if (!row) return 3;
        return row->eu ? 1 : 2;
    };
    std::sort(study.countries.begin(), study.countries.end(),
              [&](const CountryReport& a, const CountryReport& b) {
                  const int ra = rank(a), rb = rank(b);
                  if (ra != rb) return ra < rb;
                  if (a.name != b.name) return a.name < b.name;
                  return a.code < b.code;
              });

    // Group labels need the baseline country's fitted paths.
    const CountryReport& base = study.countries.front();
    for (CountryReport& report : study.countries) {
        if (base.data && report.data)
            report.pc_group =
                group_vs_baseline(report.data->asylum_pc, base.data->asylum_pc,
                                  config.window_a1_start, config.window_a1_end);
        if (base.ratio && report.ratio)
            report.ratio_group = group_vs_baseline(report.ratio->smoothed, base.ratio->smoothed,
                                                   config.window_a1_start, config.window_a1_end);
        if (base.elasticity && report.elasticity)
            report.elasticity_group =
                group_vs_baseline(report.elasticity->omega_path, base.elasticity->omega_path,
                                  config.window_a4_start, config.window_a4_end);
    }

    study.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return study;
}

}  // namespace asylecon::pipeline
