#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asylecon/annual_series.hpp"

namespace asylecon::pipeline {

// One country's raw inputs after alignment: all three series cover the same
// contiguous span (first through last year every source provides).
struct CountryData {
    std::string code;
    AnnualSeries asylum;      // applications per year
    AnnualSeries population;  // persons
    AnnualSeries gdp;         // GDP per head in purchasing power standards
    bool gdp_spliced = false;
    bool population_interpolated = false;
};

struct CountryPanel {
    std::map<std::string, CountryData> countries;
    std::vector<std::pair<std::string, std::string>> excluded;  // code, reason

    // EU-27 reference: either explicit "EU27" rows from the inputs or an
    // aggregate over the loaded countries.
    std::optional<AnnualSeries> eu27_asylum;
    std::optional<AnnualSeries> eu27_population;
    std::optional<AnnualSeries> eu27_gdp;  // per-capita PPS
    bool eu27_from_rows = false;

    std::map<std::string, std::string> file_digests;  // provenance

    AnnualSeries eu27_asylum_pc() const;  // applications per 10k persons
    const AnnualSeries& eu27_gdp_pc() const;
};

// Reads asylum.csv (country,year,applications), population.csv
// (country,year,population) and gdp_pps.csv
// (country,year,gdp_per_capita_pps[,source]) from dir. Two GDP sources per
// country are spliced onto the older one's scale. Interior gaps in
// population are linearly interpolated; interior gaps in applications or
// GDP exclude the country with a recorded reason. Throws Errc::missing_file,
// Errc::parse_error (with line number), Errc::duplicate_country_year and
// Errc::empty_panel.
CountryPanel load_panel(const std::filesystem::path& dir);

// Rescales the newer vintage onto the older one's level by regressing old
// on new over their overlap (at least 3 years, else
// Errc::insufficient_overlap) and passing the newer tail through the fitted
// line. Years covered by the older series keep its values.
AnnualSeries splice_gdp(const AnnualSeries& older, const AnnualSeries& newer);

struct Standardized {
    AnnualSeries asylum_pc;   // applications per 10k persons, zero-floored
    AnnualSeries asylum_idx;  // indexed to the EU-27 average (= 100)
    AnnualSeries gdp_idx;
    bool zero_floored = false;
    double floor_value = 0.0;
};

// Per-capita and EU-indexed series for one country. Zero application years
// are floored at half the smallest positive per-capita value so the log
// scale stays defined; the flag records that this happened.
Standardized standardize(const CountryData& country, const AnnualSeries& eu27_asylum_pc,
                         const AnnualSeries& eu27_gdp_pc);

}  // namespace asylecon::pipeline
