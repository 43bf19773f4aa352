#include "asylecon/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace asylecon::pipeline {

namespace {

using nlohmann::json;

// %.6g rendering for table cells; NaN becomes an empty cell.
std::string num(double v) {
    if (!std::isfinite(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string yn(bool v) { return v ? "Y" : "N"; }

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
    out << content;
    if (!out) throw Error(Errc::io_error, "short write to " + path.string());
}

class Csv {
  public:
    explicit Csv(const std::string& digest) { text_ += "# config " + digest + "\n"; }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text_ += ',';
            text_ += cells[i];
        }
        text_ += '\n';
    }
    const std::string& text() const { return text_; }

  private:
    std::string text_;
};

std::string group_cell(const std::optional<GroupLabel>& g) {
    return g ? econ::group_name(g->group) : "";
}

// Relative-to-baseline year table with trailing summary columns. `series`
// picks the path out of a report (null when that country lacks it) and
// `label` picks the matching group classification.
template <typename SeriesFn, typename GroupFn>
std::string relative_table(const StudyReport& study, int w0, int w1, SeriesFn series,
                           GroupFn label) {
    std::vector<std::pair<std::string, const AnnualSeries*>> paths;
    for (const CountryReport& r : study.countries)
        if (const AnnualSeries* s = series(r)) paths.emplace_back(r.code, s);

    const tvp::YearTable table =
        tvp::relative_year_table(paths, study.config.baseline_country, w0, w1);

    Csv csv(study.config_digest);
    std::vector<std::string> header{"country", "code"};
    for (int year : table.years) header.push_back(std::to_string(year));
    header.insert(header.end(), {"average", "proportion", "group"});
    csv.row(header);

    for (std::size_t i = 0; i < table.codes.size(); ++i) {
        const std::string& code = table.codes[i];
        const CountryReport* report = nullptr;
        for (const CountryReport& r : study.countries)
            if (r.code == code) report = &r;
        std::vector<std::string> cells{report ? report->name : code, code};
        for (double v : table.values[i]) cells.push_back(num(v));
        const std::optional<GroupLabel> g = report ? label(*report) : std::nullopt;
        cells.push_back(num(table.average[i]));
        cells.push_back(g ? num(g->proportion) : num(table.proportion_above_1[i]));
        cells.push_back(group_cell(g));
        csv.row(cells);
    }
    return csv.text();
}

std::string table1(const StudyReport& study) {
    // Sorted by mean elasticity, largest first; countries without an
    // elasticity fit follow in report order with blank model cells.
    std::vector<const CountryReport*> order;
    for (const CountryReport& r : study.countries) order.push_back(&r);
    std::stable_sort(order.begin(), order.end(),
                     [](const CountryReport* a, const CountryReport* b) {
                         const bool ha = a->elasticity.has_value(), hb = b->elasticity.has_value();
                         if (ha != hb) return ha;
                         if (!ha) return false;
                         return a->elasticity->mean_omega > b->elasticity->mean_omega;
                     });

    Csv csv(study.config_digest);
    csv.row({"country", "code", "n", "var_eps", "var_mu", "var_omega", "mu", "omega_mean",
             "are_pct", "sse_pct", "box_pierce", "arch", "mu_restricted", "omega_significant",
             "omega_sd", "low_reliability"});
    for (const CountryReport* r : order) {
        const std::string span = std::to_string(r->span_end - r->span_start + 1);
        if (!r->elasticity) {
            csv.row({r->name, r->code, span, "", "", "", "", "", "", "", "", "", "", "", "", ""});
            continue;
        }
        const tvp::ElasticityFit& e = *r->elasticity;
        auto var = [&](const char* key) {
            auto it = e.mle.variance_estimates.find(key);
            return it == e.mle.variance_estimates.end() ? std::string() : num(it->second);
        };
        csv.row({r->name, r->code, span, var("eps"), var("mu"), var("omega"), num(e.mu_hat),
                 num(e.mean_omega), num(e.diagnostics.are_pct), num(e.diagnostics.sse_pct),
                 yn(e.diagnostics.box_pierce.decision == econ::Decision::accept),
                 yn(e.diagnostics.arch.decision == econ::Decision::accept), yn(e.mu_restricted),
                 yn(e.omega_significant), num(e.omega_mean_sd), yn(e.low_reliability)});
    }
    return csv.text();
}

std::string table2(const StudyReport& study) {
    Csv csv(study.config_digest);
    std::vector<std::string> header{"country", "code"};
    for (int y = study.config.window_t2_start; y <= study.config.window_t2_end; ++y)
        header.push_back("omega_" + std::to_string(y));
    header.push_back("omega_mean");
    csv.row(header);
    for (const CountryReport& r : study.countries) {
        std::vector<std::string> cells{r.name, r.code};
        for (int y = study.config.window_t2_start; y <= study.config.window_t2_end; ++y) {
            const bool have = r.elasticity && r.elasticity->omega_path.has_year(y);
            cells.push_back(have ? num(r.elasticity->omega_path.at_year(y)) : "");
        }
        cells.push_back(r.elasticity ? num(r.elasticity->mean_omega) : "");
        csv.row(cells);
    }
    return csv.text();
}

std::string table_a3(const StudyReport& study, bool gls) {
    Csv csv(study.config_digest);
    csv.row({"country", "code", "n_ecm", "order_asylum", "order_gdp", "bounds_f",
             "bounds_decision", "gdp_to_asylum_fprob", "gdp_to_asylum_lag",
             "asylum_to_gdp_fprob", "asylum_to_gdp_lag", "direction", "ect_p"});
    for (const CountryReport& r : study.countries) {
        const auto& oa = gls ? r.dfgls_asylum : r.adf_asylum;
        const auto& og = gls ? r.dfgls_gdp : r.adf_gdp;
        const int span = r.span_end - r.span_start + 1;
        const int n_ecm = span - 1 - study.config.ardl_lag;
        std::vector<std::string> cells{r.name, r.code, std::to_string(n_ecm)};
        cells.push_back(oa ? std::to_string(oa->order) : "");
        cells.push_back(og ? std::to_string(og->order) : "");
        if (r.bounds) {
            cells.push_back(num(r.bounds->f_stat));
            cells.push_back(econ::decision_name(r.bounds->outcome.decision));
        } else {
            cells.insert(cells.end(), {"", ""});
        }
        if (r.causality) {
            const econ::CausalityResult& c = *r.causality;
            cells.push_back(num(c.gdp_to_asylum.max_f_prob));
            cells.push_back(std::to_string(c.gdp_to_asylum.best_lag));
            cells.push_back(num(c.asylum_to_gdp.max_f_prob));
            cells.push_back(std::to_string(c.asylum_to_gdp.best_lag));
            cells.push_back(econ::direction_name(c.direction));
            cells.push_back(c.ect_included ? num(c.ect_p_value) : "");
        } else {
            cells.insert(cells.end(), {"", "", "", "", "", ""});
        }
        csv.row(cells);
    }
    return csv.text();
}

json series_json(const AnnualSeries& s) {
    json j;
    j["country"] = s.country();
    j["start_year"] = s.start_year();
    j["unit"] = unit_name(s.unit());
    j["values"] = std::vector<double>(s.values().begin(), s.values().end());
    return j;
}

json outcome_json(const econ::TestOutcome& o) {
    json j;
    j["name"] = o.name;
    j["statistic"] = o.statistic;
    j["reference"] = o.reference;
    j["p_value"] = o.p_value;
    j["alpha"] = o.alpha;
    j["decision"] = econ::decision_name(o.decision);
    if (!o.detail.empty()) j["detail"] = o.detail;
    return j;
}

json diagnostics_json(const tvp::DiagnosticsBlock& d) {
    json j;
    j["are_pct"] = d.are_pct;
    j["sse_pct"] = d.sse_pct;
    j["n"] = d.n;
    j["box_pierce"] = outcome_json(d.box_pierce);
    j["arch"] = outcome_json(d.arch);
    return j;
}

json mle_json(const ssm::MleResult& m) {
    json j;
    j["loglik"] = m.loglik_at_optimum;
    j["converged"] = m.converged;
    j["n_evaluations"] = m.n_evaluations;
    j["restarts_used"] = m.restarts_used;
    j["variances"] = m.variance_estimates;
    return j;
}

json unit_root_json(const econ::UnitRootResult& u) {
    json j;
    j["stat"] = u.stat;
    j["crit_1"] = u.crit_1;
    j["crit_5"] = u.crit_5;
    j["crit_10"] = u.crit_10;
    j["lags"] = u.lags;
    j["nobs"] = u.nobs;
    j["alpha"] = u.alpha;
    j["reject"] = u.reject;
    return j;
}

json verdict_json(const econ::IntegrationVerdict& v) {
    json j;
    j["order"] = v.order;
    j["level"] = unit_root_json(v.level);
    j["difference"] = unit_root_json(v.difference);
    return j;
}

json side_json(const econ::CausalitySide& s) {
    json j;
    j["lags_tested"] = s.lags_tested;
    j["f_prob"] = s.f_prob;
    j["max_f_prob"] = s.max_f_prob;
    j["best_lag"] = s.best_lag;
    j["significant"] = s.significant;
    return j;
}

json group_json(const GroupLabel& g) {
    json j;
    j["group"] = econ::group_name(g.group);
    j["proportion"] = g.proportion;
    j["average"] = g.average;
    j["years"] = g.years;
    return j;
}

json country_json(const CountryReport& r) {
    json j;
    j["code"] = r.code;
    j["name"] = r.name;
    j["span_start"] = r.span_start;
    j["span_end"] = r.span_end;
    j["full_analysis"] = r.full_analysis;
    if (!r.stage_errors.empty()) j["stage_errors"] = r.stage_errors;
    if (!r.notes.empty()) j["notes"] = r.notes;

    if (r.data) {
        json d;
        d["asylum_pc"] = series_json(r.data->asylum_pc);
        d["asylum_idx"] = series_json(r.data->asylum_idx);
        d["gdp_idx"] = series_json(r.data->gdp_idx);
        d["zero_floored"] = r.data->zero_floored;
        if (r.data->zero_floored) d["floor_value"] = r.data->floor_value;
        j["data"] = d;
    }
    if (r.ratio) {
        json m;
        m["crude"] = series_json(r.ratio->crude);
        m["smoothed"] = series_json(r.ratio->smoothed);
        m["smoothed_var"] = r.ratio->smoothed_var;
        m["first_modeled_year"] = r.ratio->first_modeled_year;
        m["mle"] = mle_json(r.ratio->mle);
        m["diagnostics"] = diagnostics_json(r.ratio->diagnostics);
        j["ratio"] = m;
    }
    if (r.loglog) {
        json m;
        m["mu"] = r.loglog->mu;
        m["omega"] = r.loglog->omega;
        m["mu_se"] = r.loglog->mu_se;
        m["omega_se"] = r.loglog->omega_se;
        m["r_squared"] = r.loglog->r_squared;
        m["n"] = r.loglog->n;
        m["first_year"] = r.loglog->first_year;
        j["loglog"] = m;
    }
    if (r.elasticity) {
        const tvp::ElasticityFit& e = *r.elasticity;
        json m;
        m["mu_path"] = series_json(e.mu_path);
        m["omega_path"] = series_json(e.omega_path);
        m["omega_var_path"] = e.omega_var_path;
        m["mean_omega"] = e.mean_omega;
        m["mu_hat"] = e.mu_hat;
        m["mu_restricted"] = e.mu_restricted;
        m["omega_significant"] = e.omega_significant;
        m["omega_mean_sd"] = e.omega_mean_sd;
        m["low_reliability"] = e.low_reliability;
        m["mle"] = mle_json(e.mle);
        m["diagnostics"] = diagnostics_json(e.diagnostics);
        j["elasticity"] = m;
    }
    if (r.adf_asylum) j["adf_asylum"] = verdict_json(*r.adf_asylum);
    if (r.adf_gdp) j["adf_gdp"] = verdict_json(*r.adf_gdp);
    if (r.dfgls_asylum) j["dfgls_asylum"] = verdict_json(*r.dfgls_asylum);
    if (r.dfgls_gdp) j["dfgls_gdp"] = verdict_json(*r.dfgls_gdp);
    if (r.bounds) {
        const econ::BoundsResult& b = *r.bounds;
        json m;
        m["f_stat"] = b.f_stat;
        m["lower"] = b.lower;
        m["upper"] = b.upper;
        m["lag"] = b.lag;
        m["nobs"] = b.nobs;
        m["decision"] = econ::decision_name(b.outcome.decision);
        j["bounds"] = m;
    }
    if (r.causality) {
        const econ::CausalityResult& c = *r.causality;
        json m;
        m["gdp_to_asylum"] = side_json(c.gdp_to_asylum);
        m["asylum_to_gdp"] = side_json(c.asylum_to_gdp);
        m["direction"] = econ::direction_name(c.direction);
        m["per_lag_cutoff"] = c.per_lag_cutoff;
        m["ect_included"] = c.ect_included;
        if (c.ect_included) {
            m["ect_coef"] = c.ect_coef;
            m["ect_p_value"] = c.ect_p_value;
            m["ect_significant"] = c.ect_significant;
        }
        j["causality"] = m;
    }
    if (r.pc_group) j["pc_group"] = group_json(*r.pc_group);
    if (r.ratio_group) j["ratio_group"] = group_json(*r.ratio_group);
    if (r.elasticity_group) j["elasticity_group"] = group_json(*r.elasticity_group);
    return j;
}

}  // namespace

std::string study_to_json(const StudyReport& study) {
    json j;
    json cfg;
    std::istringstream canon(study.config.canonical());
    for (std::string line; std::getline(canon, line);) {
        const std::size_t eq = line.find('=');
        if (eq != std::string::npos) cfg[line.substr(0, eq)] = line.substr(eq + 1);
    }
    j["config"] = cfg;
    j["config_digest"] = study.config_digest;
    j["version"] = "1.0.0";
    j["file_digests"] = study.file_digests;

    json excluded = json::array();
    for (const auto& [code, reason] : study.excluded)
        excluded.push_back(json{{"code", code}, {"reason", reason}});
    j["excluded"] = excluded;

    json countries = json::array();
    for (const CountryReport& r : study.countries) countries.push_back(country_json(r));
    j["countries"] = countries;
    return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> emit_study(const StudyReport& study,
                                              const std::filesystem::path& out_dir,
                                              const EmitOptions& options) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error(Errc::io_error, "cannot create " + out_dir.string());

    std::vector<std::filesystem::path> written;
    auto emit = [&](const char* name, const std::string& content) {
        const std::filesystem::path path = out_dir / name;
        write_file(path, content);
        written.push_back(path);
    };

    if (options.csv) {
        const StudyConfig& cfg = study.config;
        emit("table1.csv", table1(study));
        emit("table2.csv", table2(study));
        emit("tableA1.csv",
             relative_table(
                 study, cfg.window_a1_start, cfg.window_a1_end,
                 [](const CountryReport& r) {
                     return r.data ? &r.data->asylum_pc : nullptr;
                 },
                 [](const CountryReport& r) { return r.pc_group; }));
        emit("tableA2.csv",
             relative_table(
                 study, cfg.window_a1_start, cfg.window_a1_end,
                 [](const CountryReport& r) {
                     return r.ratio ? &r.ratio->smoothed : nullptr;
                 },
                 [](const CountryReport& r) { return r.ratio_group; }));
        emit("tableA3a.csv", table_a3(study, false));
        emit("tableA3b.csv", table_a3(study, true));
        emit("tableA4.csv",
             relative_table(
                 study, cfg.window_a4_start, cfg.window_a4_end,
                 [](const CountryReport& r) {
                     return r.elasticity ? &r.elasticity->omega_path : nullptr;
                 },
                 [](const CountryReport& r) { return r.elasticity_group; }));
    }
    emit("study.json", study_to_json(study));
    return written;
}

CsvTable read_table_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::missing_file, "missing table " + path.string());
    CsvTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("# config ", 0) == 0) {
            table.config_digest = line.substr(9);
            continue;
        }
        std::vector<std::string> cells;
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                cells.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        cells.push_back(cur);
        if (!have_header) {
            table.header = std::move(cells);
            have_header = true;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    return table;
}

}  // namespace asylecon::pipeline
