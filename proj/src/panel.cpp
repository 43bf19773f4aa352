#include "asylecon/panel.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "asylecon/config.hpp"
#include "asylecon/regression.hpp"

namespace asylecon::pipeline {

namespace {

struct RawFile {
    std::vector<std::string> header;
    // country -> source -> year -> value; sourceless files use source "".
    std::map<std::string, std::map<std::string, std::map<int, double>>> data;
    std::string digest;
};

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

RawFile load_csv(const std::filesystem::path& path, const std::vector<std::string>& columns,
                 bool optional_source, bool allow_zero) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::missing_file, "missing input file " + path.string());

    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string content = buffer.str();

    RawFile file;
    file.digest = to_hex16(fnv1a64(content));

    std::istringstream lines(content);
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& what) -> void {
        throw Error(Errc::parse_error,
                    path.filename().string() + " line " + std::to_string(line_no) + ": " + what);
    };

    bool have_source_col = false;
    while (std::getline(lines, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv(line);

        if (line_no == 1) {
            file.header = cells;
            if (cells.size() < columns.size())
                fail("expected header " + columns[0] + ",...");
            for (std::size_t i = 0; i < columns.size(); ++i)
                if (cells[i] != columns[i]) fail("expected column '" + columns[i] + "'");
            if (cells.size() == columns.size() + 1 && optional_source && cells.back() == "source")
                have_source_col = true;
            else if (cells.size() != columns.size())
                fail("unexpected extra columns");
            continue;
        }

        const std::size_t want = columns.size() + (have_source_col ? 1 : 0);
        if (cells.size() != want) fail("expected " + std::to_string(want) + " cells");

        const std::string& country = cells[0];
        if (country.empty()) fail("empty country code");

        int year = 0;
        try {
            std::size_t pos = 0;
            year = std::stoi(cells[1], &pos);
            if (pos != cells[1].size()) throw std::invalid_argument(cells[1]);
        } catch (const std::exception&) {
            fail("bad year '" + cells[1] + "'");
        }
        if (year < 1900 || year > 2100) fail("year out of range: " + cells[1]);

        double value = 0.0;
        try {
            std::size_t pos = 0;
            value = std::stod(cells[2], &pos);
            if (pos != cells[2].size()) throw std::invalid_argument(cells[2]);
        } catch (const std::exception&) {
            fail("bad value '" + cells[2] + "'");
        }
        if (allow_zero ? value < 0.0 : value <= 0.0)
            fail("value must be " + std::string(allow_zero ? ">= 0" : "> 0"));

        const std::string source = have_source_col ? cells[3] : "";
        auto [it, inserted] = file.data[country][source].emplace(year, value);
        (void)it;
        if (!inserted)
            throw Error(Errc::duplicate_country_year,
                        path.filename().string() + ": duplicate entry for " + country + " " +
                            std::to_string(year) +
                            (have_source_col ? " source " + source : ""));
    }
    if (file.header.empty())
        throw Error(Errc::parse_error, path.filename().string() + ": empty file");
    return file;
}

// Contiguous series from a year map. Interior gaps either interpolate
// linearly (population) or abort with a reason.
std::optional<AnnualSeries> to_series(const std::string& code, const std::map<int, double>& by_year,
                                      Unit unit, bool interpolate, bool* interpolated,
                                      std::string* reason) {
    if (by_year.empty()) {
        *reason = "no data";
        return std::nullopt;
    }
    const int y0 = by_year.begin()->first;
    const int y1 = by_year.rbegin()->first;
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(y1 - y0 + 1));
    auto it = by_year.begin();
    int prev_year = y0;
    double prev_value = it->second;
    for (int y = y0; y <= y1; ++y) {
        auto found = by_year.find(y);
        if (found != by_year.end()) {
            values.push_back(found->second);
            prev_year = y;
            prev_value = found->second;
        } else if (interpolate) {
            auto next = by_year.upper_bound(y);
            const double t = static_cast<double>(y - prev_year) / (next->first - prev_year);
            values.push_back(prev_value + t * (next->second - prev_value));
            if (interpolated) *interpolated = true;
        } else {
            *reason = "gap at " + std::to_string(y);
            return std::nullopt;
        }
    }
    return AnnualSeries(code, y0, std::move(values), unit);
}

}  // namespace

AnnualSeries splice_gdp(const AnnualSeries& older, const AnnualSeries& newer) {
    int first = std::max(older.start_year(), newer.start_year());
    int last = std::min(older.end_year(), newer.end_year());
    const int overlap = last - first + 1;
    if (first > last || overlap < 3)
        throw Error(Errc::insufficient_overlap,
                    older.country() + ": GDP vintages overlap fewer than 3 years");

    Eigen::MatrixXd X(overlap, 2);
    Eigen::VectorXd y(overlap);
    for (int k = 0; k < overlap; ++k) {
        X(k, 0) = 1.0;
        X(k, 1) = newer.at_year(first + k);
        y(k) = older.at_year(first + k);
    }
    const econ::RegressionFit fit = econ::ols(X, y);
    const double a = fit.coef(0), b = fit.coef(1);

    const int end = std::max(older.end_year(), newer.end_year());
    std::vector<double> values;
    for (int yy = older.start_year(); yy <= end; ++yy) {
        if (older.has_year(yy))
            values.push_back(older.at_year(yy));
        else if (newer.has_year(yy))
            values.push_back(a + b * newer.at_year(yy));
        else
            throw Error(Errc::insufficient_overlap,
                        older.country() + ": spliced GDP has a hole at " + std::to_string(yy));
    }
    return AnnualSeries(older.country(), older.start_year(), std::move(values), older.unit());
}

CountryPanel load_panel(const std::filesystem::path& dir) {
    const RawFile asylum_file =
        load_csv(dir / "asylum.csv", {"country", "year", "applications"}, false, true);
    const RawFile pop_file =
        load_csv(dir / "population.csv", {"country", "year", "population"}, false, false);
    const RawFile gdp_file =
        load_csv(dir / "gdp_pps.csv", {"country", "year", "gdp_per_capita_pps"}, true, false);

    CountryPanel panel;
    panel.file_digests["asylum.csv"] = asylum_file.digest;
    panel.file_digests["population.csv"] = pop_file.digest;
    panel.file_digests["gdp_pps.csv"] = gdp_file.digest;

    std::vector<std::string> codes;
    for (const auto& [code, _] : asylum_file.data) codes.push_back(code);

    for (const std::string& code : codes) {
        auto pop_it = pop_file.data.find(code);
        auto gdp_it = gdp_file.data.find(code);
        if (pop_it == pop_file.data.end() || gdp_it == gdp_file.data.end()) {
            if (code != "EU27")
                panel.excluded.emplace_back(code, "missing population or GDP data");
            continue;
        }

        std::string reason;
        bool pop_interp = false;

        // GDP first: one source passes through, two are spliced.
        std::map<int, double> gdp_years;
        const auto& by_source = gdp_it->second;
        bool spliced = false;
        if (by_source.size() == 1) {
            gdp_years = by_source.begin()->second;
        } else if (by_source.size() == 2) {
            auto a = by_source.begin();
            auto b = std::next(a);
            auto older_first = a->second.begin()->first;
            auto newer_first = b->second.begin()->first;
            if (older_first > newer_first) std::swap(a, b);
            std::string sub;
            auto older = to_series(code, a->second, Unit::pps_index, false, nullptr, &sub);
            auto newer = to_series(code, b->second, Unit::pps_index, false, nullptr, &sub);
            if (!older || !newer) {
                panel.excluded.emplace_back(code, "GDP " + sub);
                continue;
            }
            try {
                const AnnualSeries joined = splice_gdp(*older, *newer);
                for (std::size_t i = 0; i < joined.size(); ++i)
                    gdp_years[joined.start_year() + static_cast<int>(i)] = joined[i];
                spliced = true;
            } catch (const Error& err) {
                panel.excluded.emplace_back(code, err.what());
                continue;
            }
        } else {
            panel.excluded.emplace_back(code, "more than two GDP sources");
            continue;
        }

        auto asylum = to_series(code, asylum_file.data.at(code).at(""), Unit::raw_count,
                                false, nullptr, &reason);
        if (!asylum) {
            panel.excluded.emplace_back(code, "applications " + reason);
            continue;
        }
        auto population = to_series(code, pop_it->second.at(""), Unit::population,
                                    true, &pop_interp, &reason);
        if (!population) {
            panel.excluded.emplace_back(code, "population " + reason);
            continue;
        }
        auto gdp = to_series(code, gdp_years, Unit::pps_index, false, nullptr, &reason);
        if (!gdp) {
            panel.excluded.emplace_back(code, "GDP " + reason);
            continue;
        }

        // Usable span: first through last year all three sources provide.
        const int first = std::max({asylum->start_year(), population->start_year(), gdp->start_year()});
        const int last = std::min({asylum->end_year(), population->end_year(), gdp->end_year()});
        if (first > last) {
            panel.excluded.emplace_back(code, "sources share no years");
            continue;
        }

        CountryData data{code,
                         asylum->window(first, last),
                         population->window(first, last),
                         gdp->window(first, last),
                         spliced,
                         pop_interp};
        if (code == "EU27") {
            panel.eu27_asylum = std::move(data.asylum);
            panel.eu27_population = std::move(data.population);
            panel.eu27_gdp = std::move(data.gdp);
            panel.eu27_from_rows = true;
        } else {
            panel.countries.emplace(code, std::move(data));
        }
    }

    if (panel.countries.empty())
        throw Error(Errc::empty_panel, "no usable countries in " + dir.string());

    if (!panel.eu27_from_rows) {
        // Aggregate reference: summed applications and population,
        // population-weighted GDP per head, over each year any country covers.
        int y0 = 9999, y1 = 0;
        for (const auto& [_, c] : panel.countries) {
            y0 = std::min(y0, c.asylum.start_year());
            y1 = std::max(y1, c.asylum.end_year());
        }
        std::vector<double> apps, pop, gdp;
        for (int y = y0; y <= y1; ++y) {
            double a = 0.0, p = 0.0, wg = 0.0, wp = 0.0;
            for (const auto& [_, c] : panel.countries) {
                if (!c.asylum.has_year(y)) continue;
                a += c.asylum.at_year(y);
                p += c.population.at_year(y);
                wg += c.gdp.at_year(y) * c.population.at_year(y);
                wp += c.population.at_year(y);
            }
            if (wp <= 0.0)
                throw Error(Errc::empty_panel, "no coverage in " + std::to_string(y));
            apps.push_back(a);
            pop.push_back(p);
            gdp.push_back(wg / wp);
        }
        panel.eu27_asylum = AnnualSeries("EU27", y0, std::move(apps), Unit::raw_count);
        panel.eu27_population = AnnualSeries("EU27", y0, std::move(pop), Unit::population);
        panel.eu27_gdp = AnnualSeries("EU27", y0, std::move(gdp), Unit::pps_index);
    }
    return panel;
}

AnnualSeries CountryPanel::eu27_asylum_pc() const {
    if (!eu27_asylum || !eu27_population)
        throw Error(Errc::internal, "panel has no EU-27 reference");
    return per_capita_10k(*eu27_asylum, *eu27_population);
}

const AnnualSeries& CountryPanel::eu27_gdp_pc() const {
    if (!eu27_gdp) throw Error(Errc::internal, "panel has no EU-27 reference");
    return *eu27_gdp;
}

Standardized standardize(const CountryData& country, const AnnualSeries& eu27_asylum_pc,
                         const AnnualSeries& eu27_gdp_pc) {
    AnnualSeries pc = per_capita_10k(country.asylum, country.population);

    double min_positive = 0.0;
    for (std::size_t i = 0; i < pc.size(); ++i)
        if (pc[i] > 0.0 && (min_positive == 0.0 || pc[i] < min_positive)) min_positive = pc[i];
    if (min_positive == 0.0)
        throw Error(Errc::non_positive_value,
                    country.code + ": every application count is zero");

    Standardized out{pc, pc, pc, false, 0.0};
    bool floored = false;
    std::vector<double> values(pc.values().begin(), pc.values().end());
    for (double& v : values)
        if (v == 0.0) {
            v = 0.5 * min_positive;
            floored = true;
        }
    out.zero_floored = floored;
    out.floor_value = floored ? 0.5 * min_positive : 0.0;
    out.asylum_pc = AnnualSeries(pc.country(), pc.start_year(), std::move(values),
                                 Unit::per_capita_10k);
    out.asylum_idx = index_to_eu27(out.asylum_pc, eu27_asylum_pc);
    out.gdp_idx = index_to_eu27(country.gdp, eu27_gdp_pc);
    return out;
}

}  // namespace asylecon::pipeline
