// Command-line front end for the asylecon shared library. Talks to the
// library exclusively through its C interface; all analysis lives behind
// that boundary.
//
// Exit codes: 0 success, 1 input error (files, configuration, arguments),
// 2 internal failure (numerical breakdown, failed self-verification).

#include <cinttypes>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "asylecon.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

struct PanelDeleter {
    void operator()(asylecon_panel* p) const { asylecon_panel_free(p); }
};
struct ConfigDeleter {
    void operator()(asylecon_config* c) const { asylecon_config_free(c); }
};
struct StudyDeleter {
    void operator()(asylecon_study* s) const { asylecon_study_free(s); }
};
using PanelPtr = std::unique_ptr<asylecon_panel, PanelDeleter>;
using ConfigPtr = std::unique_ptr<asylecon_config, ConfigDeleter>;
using StudyPtr = std::unique_ptr<asylecon_study, StudyDeleter>;

int fail(const char* what, asylecon_status st) {
    std::fprintf(stderr, "error: %s: %s\n", what, asylecon_last_error());
    switch (st) {
        case ASYLECON_E_IO:
        case ASYLECON_E_PARSE:
        case ASYLECON_E_INVALID:
            return kExitInput;
        default:
            return kExitInternal;
    }
}

ConfigPtr make_config(const std::string& config_file, const std::string& baseline,
                      const std::string& seed, int& exit_code) {
    asylecon_config* raw = nullptr;
    const asylecon_status st = config_file.empty()
                                   ? asylecon_config_create(&raw)
                                   : asylecon_config_load(config_file.c_str(), &raw);
    if (st != ASYLECON_OK) {
        exit_code = fail("configuration", st);
        return nullptr;
    }
    ConfigPtr config(raw);
    if (!baseline.empty()) {
        const asylecon_status set =
            asylecon_config_set(config.get(), "baseline_country", baseline.c_str());
        if (set != ASYLECON_OK) {
            exit_code = fail("--baseline", set);
            return nullptr;
        }
    }
    if (!seed.empty()) {
        const asylecon_status set = asylecon_config_set(config.get(), "seed", seed.c_str());
        if (set != ASYLECON_OK) {
            exit_code = fail("--seed", set);
            return nullptr;
        }
    }
    exit_code = kExitOk;
    return config;
}

PanelPtr load_panel(const std::string& data_dir, int& exit_code) {
    asylecon_panel* raw = nullptr;
    const asylecon_status st = asylecon_panel_load(data_dir.c_str(), &raw);
    if (st != ASYLECON_OK) {
        exit_code = fail("loading panel", st);
        return nullptr;
    }
    exit_code = kExitOk;
    return PanelPtr(raw);
}

int cmd_run(const std::string& data_dir, const std::string& out_dir,
            const std::string& config_file, const std::vector<std::string>& countries,
            const std::string& baseline, const std::string& formats, const std::string& seed) {
    int exit_code = kExitOk;
    ConfigPtr config = make_config(config_file, baseline, seed, exit_code);
    if (!config) return exit_code;
    PanelPtr panel = load_panel(data_dir, exit_code);
    if (!panel) return exit_code;

    std::vector<const char*> country_ptrs;
    country_ptrs.reserve(countries.size());
    for (const std::string& c : countries) country_ptrs.push_back(c.c_str());

    asylecon_study* raw_study = nullptr;
    asylecon_status st = asylecon_study_run(panel.get(), config.get(),
                                            country_ptrs.empty() ? nullptr : country_ptrs.data(),
                                            static_cast<int>(country_ptrs.size()), &raw_study);
    if (st != ASYLECON_OK) return fail("running study", st);
    StudyPtr study(raw_study);

    st = asylecon_study_emit(study.get(), out_dir.c_str(),
                             formats.empty() ? nullptr : formats.c_str());
    if (st != ASYLECON_OK) return fail("writing outputs", st);

    std::printf("analysed %d countries -> %s\n", asylecon_study_country_count(study.get()),
                out_dir.c_str());
    const int n_excluded = asylecon_panel_excluded_count(panel.get());
    for (int i = 0; i < n_excluded; ++i) {
        const char* code = nullptr;
        const char* reason = nullptr;
        if (asylecon_panel_excluded_reason(panel.get(), i, &code, &reason) == ASYLECON_OK)
            std::printf("excluded %s: %s\n", code, reason);
    }
    const int n_errors = asylecon_study_error_count(study.get());
    if (n_errors > 0) std::printf("%d analysis stages degraded; see study.json\n", n_errors);
    return kExitOk;
}

int cmd_selftest(std::uint64_t seed) {
    char* report = nullptr;
    int all_passed = 0;
    const asylecon_status st = asylecon_selftest(seed, &report, &all_passed);
    if (st != ASYLECON_OK) return fail("selftest", st);
    std::printf("%s", report);
    asylecon_string_free(report);
    std::printf("selftest (seed %" PRIu64 "): %s\n", seed, all_passed ? "PASS" : "FAIL");
    return all_passed ? kExitOk : kExitInternal;
}

int cmd_fit(const std::string& data_dir, const std::string& country, const std::string& model,
            const std::string& config_file) {
    int exit_code = kExitOk;
    ConfigPtr config = make_config(config_file, "", "", exit_code);
    if (!config) return exit_code;
    PanelPtr panel = load_panel(data_dir, exit_code);
    if (!panel) return exit_code;

    char* text = nullptr;
    const asylecon_status st =
        asylecon_fit_json(panel.get(), config.get(), country.c_str(), model.c_str(), &text);
    if (st != ASYLECON_OK) return fail("fitting model", st);
    std::printf("%s", text);
    asylecon_string_free(text);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("asylecon ") + asylecon_version() +
                 " — asylum/GDP panel analysis"};
    app.require_subcommand(1);

    std::string data_dir, out_dir, config_file, baseline, formats, seed_str, country, model;
    std::vector<std::string> countries;
    std::uint64_t seed = 42;

    CLI::App* run = app.add_subcommand("run", "run the full analysis and write tables");
    run->add_option("--data", data_dir, "directory with asylum.csv, population.csv, gdp_pps.csv")
        ->required();
    run->add_option("--out", out_dir, "output directory")->required();
    run->add_option("--config", config_file, "key = value configuration file");
    run->add_option("--country", countries, "restrict to these country codes (repeatable)");
    run->add_option("--baseline", baseline, "baseline country code override");
    run->add_option("--formats", formats, "comma-separated subset of csv,json");
    run->add_option("--seed", seed_str, "configuration seed override");

    CLI::App* selftest = app.add_subcommand("selftest", "run the statistical self-verification");
    selftest->add_option("--seed", seed, "Monte Carlo seed");

    CLI::App* fit = app.add_subcommand("fit", "fit one model for one country, print JSON");
    fit->add_option("--data", data_dir, "data directory")->required();
    fit->add_option("--country", country, "country code")->required();
    fit->add_option("--model", model, "ratio, elasticity or loglog")->required();
    fit->add_option("--config", config_file, "key = value configuration file");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed())
        return cmd_run(data_dir, out_dir, config_file, countries, baseline, formats, seed_str);
    if (selftest->parsed()) return cmd_selftest(seed);
    if (fit->parsed()) return cmd_fit(data_dir, country, model, config_file);
    return kExitInput;
}
