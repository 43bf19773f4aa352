#include "asylecon.h"

#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "asylecon/emit.hpp"
#include "asylecon/panel.hpp"
#include "asylecon/selftest.hpp"
#include "asylecon/study.hpp"
#include "json.hpp"

using asylecon::Errc;
using asylecon::Error;

struct asylecon_panel {
    asylecon::pipeline::CountryPanel panel;
    std::vector<std::string> codes;  // sorted; stable c_str storage
};

struct asylecon_config {
    asylecon::pipeline::StudyConfig config;
};

struct asylecon_study {
    asylecon::pipeline::StudyReport report;
};

namespace {

thread_local std::string g_last_error;

asylecon_status status_for(Errc code) {
    switch (code) {
        case Errc::missing_file:
        case Errc::io_error:
            return ASYLECON_E_IO;
        case Errc::parse_error:
        case Errc::unknown_config_key:
        case Errc::bad_config_value:
        case Errc::duplicate_country_year:
            return ASYLECON_E_PARSE;
        case Errc::unknown_country:
        case Errc::span_mismatch:
        case Errc::missing_baseline:
        case Errc::empty_panel:
            return ASYLECON_E_INVALID;
        case Errc::internal:
            return ASYLECON_E_INTERNAL;
        default:
            return ASYLECON_E_COMPUTE;
    }
}

template <typename Fn>
asylecon_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return ASYLECON_OK;
    } catch (const Error& err) {
        g_last_error = err.what();
        return status_for(err.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return ASYLECON_E_NOMEM;
    } catch (const std::exception& err) {
        g_last_error = err.what();
        return ASYLECON_E_INTERNAL;
    }
}

asylecon_status invalid(const char* message) {
    g_last_error = message;
    return ASYLECON_E_INVALID;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* asylecon_version(void) { return "1.0.0"; }

const char* asylecon_last_error(void) { return g_last_error.c_str(); }

asylecon_status asylecon_panel_load(const char* dir, asylecon_panel** out) {
    if (!dir || !out) return invalid("panel_load: null argument");
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<asylecon_panel>();
        handle->panel = asylecon::pipeline::load_panel(dir);
        for (const auto& [code, _] : handle->panel.countries) handle->codes.push_back(code);
        *out = handle.release();
    });
}

void asylecon_panel_free(asylecon_panel* panel) { delete panel; }

int asylecon_panel_country_count(const asylecon_panel* panel) {
    return panel ? static_cast<int>(panel->codes.size()) : 0;
}

const char* asylecon_panel_country_code(const asylecon_panel* panel, int index) {
    if (!panel || index < 0 || index >= static_cast<int>(panel->codes.size())) return nullptr;
    return panel->codes[static_cast<std::size_t>(index)].c_str();
}

int asylecon_panel_excluded_count(const asylecon_panel* panel) {
    return panel ? static_cast<int>(panel->panel.excluded.size()) : 0;
}

asylecon_status asylecon_panel_excluded_reason(const asylecon_panel* panel, int index,
                                               const char** code, const char** reason) {
    if (!panel) return invalid("excluded_reason: null panel");
    if (index < 0 || index >= static_cast<int>(panel->panel.excluded.size()))
        return invalid("excluded_reason: index out of range");
    const auto& entry = panel->panel.excluded[static_cast<std::size_t>(index)];
    if (code) *code = entry.first.c_str();
    if (reason) *reason = entry.second.c_str();
    g_last_error.clear();
    return ASYLECON_OK;
}

asylecon_status asylecon_config_create(asylecon_config** out) {
    if (!out) return invalid("config_create: null out");
    *out = nullptr;
    return guarded([&] { *out = new asylecon_config(); });
}

asylecon_status asylecon_config_load(const char* path, asylecon_config** out) {
    if (!path || !out) return invalid("config_load: null argument");
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<asylecon_config>();
        handle->config = asylecon::pipeline::StudyConfig::from_file(path);
        *out = handle.release();
    });
}

asylecon_status asylecon_config_set(asylecon_config* config, const char* key,
                                    const char* value) {
    if (!config || !key || !value) return invalid("config_set: null argument");
    return guarded([&] { config->config.set(key, value); });
}

void asylecon_config_free(asylecon_config* config) { delete config; }

asylecon_status asylecon_study_run(const asylecon_panel* panel, const asylecon_config* config,
                                   const char* const* countries, int n_countries,
                                   asylecon_study** out) {
    if (!panel || !config || !out) return invalid("study_run: null argument");
    if (n_countries < 0 || (n_countries > 0 && !countries))
        return invalid("study_run: bad country list");
    *out = nullptr;
    return guarded([&] {
        std::vector<std::string> subset;
        for (int i = 0; i < n_countries; ++i) {
            if (!countries[i]) throw Error(Errc::unknown_country, "null country code");
            subset.emplace_back(countries[i]);
        }
        auto handle = std::make_unique<asylecon_study>();
        handle->report = asylecon::pipeline::run_study(panel->panel, config->config, subset);
        *out = handle.release();
    });
}

asylecon_status asylecon_study_emit(const asylecon_study* study, const char* out_dir,
                                    const char* formats) {
    if (!study || !out_dir) return invalid("study_emit: null argument");
    return guarded([&] {
        asylecon::pipeline::EmitOptions options;
        if (!formats || !*formats) {
            options.csv = true;  // full output by default
        } else {
            std::string token;
            std::istringstream list(formats);
            while (std::getline(list, token, ',')) {
                if (token == "csv")
                    options.csv = true;
                else if (token != "json")  // the JSON bundle is always written
                    throw Error(Errc::bad_config_value, "unknown format: " + token);
            }
        }
        asylecon::pipeline::emit_study(study->report, out_dir, options);
    });
}

asylecon_status asylecon_study_json(const asylecon_study* study, char** out_text) {
    if (!study || !out_text) return invalid("study_json: null argument");
    *out_text = nullptr;
    return guarded([&] {
        *out_text = dup_string(asylecon::pipeline::study_to_json(study->report));
    });
}

int asylecon_study_country_count(const asylecon_study* study) {
    return study ? static_cast<int>(study->report.countries.size()) : 0;
}

int asylecon_study_error_count(const asylecon_study* study) {
    if (!study) return 0;
    int errors = 0;
    for (const auto& country : study->report.countries)
        errors += static_cast<int>(country.stage_errors.size());
    return errors;
}

void asylecon_study_free(asylecon_study* study) { delete study; }

asylecon_status asylecon_fit_json(const asylecon_panel* panel, const asylecon_config* config,
                                  const char* country, const char* model, char** out_text) {
    if (!panel || !config || !country || !model || !out_text)
        return invalid("fit_json: null argument");
    *out_text = nullptr;
    return guarded([&] {
        const std::string which = model;
        if (which != "ratio" && which != "elasticity" && which != "loglog")
            throw Error(Errc::bad_config_value, "unknown model: " + which);

        auto it = panel->panel.countries.find(country);
        if (it == panel->panel.countries.end())
            throw Error(Errc::unknown_country, std::string("unknown country code ") + country);

        const asylecon::pipeline::StudyReport report = asylecon::pipeline::run_study(
            panel->panel, config->config, {std::string(country)});
        const asylecon::pipeline::CountryReport* fitted = nullptr;
        for (const auto& c : report.countries)
            if (c.code == country) fitted = &c;
        if (!fitted) throw Error(Errc::internal, "country missing from its own report");

        nlohmann::json full = nlohmann::json::parse(
            asylecon::pipeline::study_to_json(report));
        for (const auto& c : full["countries"]) {
            if (c["code"] != country) continue;
            nlohmann::json out;
            out["code"] = c["code"];
            out["name"] = c["name"];
            out["config_digest"] = full["config_digest"];
            if (c.contains(which))
                out[which] = c[which];
            else if (fitted->stage_errors.count(which))
                throw Error(Errc::too_few_observations,
                            which + " failed: " + fitted->stage_errors.at(which));
            else
                throw Error(Errc::too_few_observations, which + " was not fitted");
            *out_text = dup_string(out.dump(2) + "\n");
            return;
        }
    });
}

asylecon_status asylecon_selftest(uint64_t seed, char** out_report, int* all_passed) {
    if (out_report) *out_report = nullptr;
    return guarded([&] {
        const asylecon::selftest::SelftestReport report = asylecon::selftest::run_selftest(seed);
        if (all_passed) *all_passed = report.all_passed ? 1 : 0;
        if (out_report) {
            std::string text;
            for (const auto& suite : report.suites) {
                text += suite.passed ? "PASS " : "FAIL ";
                text += suite.name;
                text += ": ";
                text += suite.detail;
                text += '\n';
            }
            *out_report = dup_string(text);
        }
    });
}

void asylecon_string_free(char* s) { delete[] s; }

}  // extern "C"
