#include "asylecon/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "asylecon/annual_series.hpp"

namespace asylecon::pipeline {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw Error(Errc::bad_config_value, key + ": not a number: " + v);
    }
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const int i = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw Error(Errc::bad_config_value, key + ": not an integer: " + v);
    }
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string to_hex16(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void StudyConfig::set(const std::string& key, const std::string& value) {
    if (key == "alpha_unit_root") alpha_unit_root = parse_double(key, value);
    else if (key == "bounds_lower") bounds_lower = parse_double(key, value);
    else if (key == "bounds_upper") bounds_upper = parse_double(key, value);
    else if (key == "ardl_lag") ardl_lag = parse_int(key, value);
    else if (key == "causality_min_lag") causality_min_lag = parse_int(key, value);
    else if (key == "causality_max_lag") causality_max_lag = parse_int(key, value);
    else if (key == "causality_threshold") causality_threshold = parse_double(key, value);
    else if (key == "ect_alpha") ect_alpha = parse_double(key, value);
    else if (key == "burn_in") burn_in = parse_int(key, value);
    else if (key == "baseline_country") baseline_country = value;
    else if (key == "ratio_lag") ratio_lag = parse_int(key, value);
    else if (key == "seed") {
        try {
            seed = std::stoull(value);
        } catch (const std::exception&) {
            throw Error(Errc::bad_config_value, "seed: not an integer: " + value);
        }
    }
    else if (key == "are_normalization") {
        if (value != "log" && value != "raw")
            throw Error(Errc::bad_config_value, "are_normalization must be log or raw");
        are_normalization = value;
    }
    else if (key == "min_full_span") min_full_span = parse_int(key, value);
    else if (key == "window_a1_start") window_a1_start = parse_int(key, value);
    else if (key == "window_a1_end") window_a1_end = parse_int(key, value);
    else if (key == "window_a4_start") window_a4_start = parse_int(key, value);
    else if (key == "window_a4_end") window_a4_end = parse_int(key, value);
    else if (key == "window_t2_start") window_t2_start = parse_int(key, value);
    else if (key == "window_t2_end") window_t2_end = parse_int(key, value);
    else throw Error(Errc::unknown_config_key, "unknown config key: " + key);
}

void StudyConfig::validate() const {
    auto bad = [](const std::string& m) { throw Error(Errc::bad_config_value, m); };
    if (!(alpha_unit_root > 0.0 && alpha_unit_root < 1.0)) bad("alpha_unit_root out of (0,1)");
    if (!(bounds_lower > 0.0 && bounds_lower <= bounds_upper)) bad("bounds must satisfy 0 < lower <= upper");
    if (ardl_lag < 1) bad("ardl_lag must be >= 1");
    if (causality_min_lag < 1 || causality_max_lag < causality_min_lag) bad("causality lag range invalid");
    if (!(causality_threshold > 0.0 && causality_threshold < 1.0)) bad("causality_threshold out of (0,1)");
    if (!(ect_alpha > 0.0 && ect_alpha < 1.0)) bad("ect_alpha out of (0,1)");
    if (burn_in < 0) bad("burn_in must be >= 0");
    if (ratio_lag != 0 && ratio_lag != 1) bad("ratio_lag must be 0 or 1");
    if (baseline_country.empty()) bad("baseline_country is empty");
    if (min_full_span < 8) bad("min_full_span must be >= 8");
    if (window_a1_end < window_a1_start || window_a4_end < window_a4_start ||
        window_t2_end < window_t2_start) bad("reporting window reversed");
}

StudyConfig StudyConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::missing_file, "cannot open config file " + path.string());

    StudyConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(Errc::parse_error,
                        path.filename().string() + " line " + std::to_string(line_no) +
                            ": expected key = value");
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

std::string StudyConfig::canonical() const {
    std::map<std::string, std::string> kv{
        {"alpha_unit_root", fmt_double(alpha_unit_root)},
        {"ardl_lag", std::to_string(ardl_lag)},
        {"are_normalization", are_normalization},
        {"baseline_country", baseline_country},
        {"bounds_lower", fmt_double(bounds_lower)},
        {"bounds_upper", fmt_double(bounds_upper)},
        {"burn_in", std::to_string(burn_in)},
        {"causality_max_lag", std::to_string(causality_max_lag)},
        {"causality_min_lag", std::to_string(causality_min_lag)},
        {"causality_threshold", fmt_double(causality_threshold)},
        {"ect_alpha", fmt_double(ect_alpha)},
        {"min_full_span", std::to_string(min_full_span)},
        {"ratio_lag", std::to_string(ratio_lag)},
        {"seed", std::to_string(seed)},
        {"window_a1_end", std::to_string(window_a1_end)},
        {"window_a1_start", std::to_string(window_a1_start)},
        {"window_a4_end", std::to_string(window_a4_end)},
        {"window_a4_start", std::to_string(window_a4_start)},
        {"window_t2_end", std::to_string(window_t2_end)},
        {"window_t2_start", std::to_string(window_t2_start)},
    };
    std::ostringstream out;
    for (const auto& [k, v] : kv) out << k << "=" << v << "\n";
    return out.str();
}

std::string StudyConfig::digest() const { return to_hex16(fnv1a64(canonical())); }

}  // namespace asylecon::pipeline
