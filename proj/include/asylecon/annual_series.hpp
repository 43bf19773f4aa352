#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace asylecon {

// Measurement scale attached to a series. Transforms check and update it.
enum class Unit {
    raw_count,       // event counts (e.g. applications filed in a year)
    population,      // persons
    per_capita_10k,  // events per 10,000 persons
    pps_index,       // indexed to the EU-27 average (average = 100)
    log_value,       // natural log of a positive series
    ratio,           // dimensionless quotient of two series
};

const char* unit_name(Unit u);

// Error codes carried by every exception the library throws. The C API maps
// them onto its status codes; tests match on them instead of message text.
enum class Errc {
    non_positive_value,
    empty_overlap,
    non_positive_population,
    series_too_short,
    span_mismatch,
    span_too_short,
    degenerate_innovation_variance,
    too_few_observations,
    rank_deficient,
    degenerate_regressor,
    missing_baseline,
    missing_file,
    parse_error,
    duplicate_country_year,
    insufficient_overlap,
    empty_panel,
    unknown_config_key,
    bad_config_value,
    unknown_country,
    io_error,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// Contiguous yearly observations for one country. Values are finite and the
// series is non-empty; both are enforced at construction so downstream code
// never re-checks. Instances are immutable, which makes sharing across
// threads safe without locks.
class AnnualSeries {
public:
    AnnualSeries(std::string country, int start_year, std::vector<double> values, Unit unit);

    const std::string& country() const noexcept { return country_; }
    Unit unit() const noexcept { return unit_; }
    int start_year() const noexcept { return start_year_; }
    int end_year() const noexcept { return start_year_ + static_cast<int>(values_.size()) - 1; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }

    double operator[](std::size_t i) const { return values_[i]; }
    bool has_year(int year) const noexcept { return year >= start_year() && year <= end_year(); }
    double at_year(int year) const;

    // Sub-series covering [first_year, last_year]; both must be in range.
    AnnualSeries window(int first_year, int last_year) const;

    AnnualSeries with_unit(Unit u) const { return {country_, start_year_, values_, u}; }
    AnnualSeries with_values(std::vector<double> v, Unit u) const {
        return {country_, start_year_, std::move(v), u};
    }

private:
    std::string country_;
    int start_year_;
    std::vector<double> values_;
    Unit unit_;
};

// Natural log of every value. Throws Errc::non_positive_value naming the
// first offending year.
AnnualSeries log_transform(const AnnualSeries& s);

// Events per 10,000 persons over the overlapping years of counts and
// population. Throws Errc::empty_overlap when the spans are disjoint and
// Errc::non_positive_population on a zero or negative population value.
AnnualSeries per_capita_10k(const AnnualSeries& counts, const AnnualSeries& population);

// 100 * s / reference over the overlapping years (reference average = 100).
AnnualSeries index_to_eu27(const AnnualSeries& s, const AnnualSeries& eu27_reference);

// Shift by k years: the lagged series reports at year t the value of t - k.
AnnualSeries lag(const AnnualSeries& s, int k = 1);

// First difference; length shrinks by one. Throws Errc::series_too_short
// for a singleton series.
AnnualSeries diff(const AnnualSeries& s);

// Overlapping year range of two series as {first, last}; throws
// Errc::empty_overlap when they share no years.
std::pair<int, int> common_years(const AnnualSeries& a, const AnnualSeries& b);

}  // namespace asylecon
