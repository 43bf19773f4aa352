#include "asylecon/annual_series.hpp"

#include <algorithm>
#include <cmath>

namespace asylecon {

const char* unit_name(Unit u) {
    switch (u) {
        case Unit::raw_count: return "raw_count";
        case Unit::population: return "population";
        case Unit::per_capita_10k: return "per_capita_10k";
        case Unit::pps_index: return "pps_index";
        case Unit::log_value: return "log_value";
        case Unit::ratio: return "ratio";
    }
    return "?";
}

AnnualSeries::AnnualSeries(std::string country, int start_year, std::vector<double> values, Unit unit)
    : country_(std::move(country)), start_year_(start_year), values_(std::move(values)), unit_(unit) {
    if (values_.empty())
        throw Error(Errc::series_too_short, "series for " + country_ + " is empty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw Error(Errc::non_positive_value,
                        "non-finite value for " + country_ + " in " +
                            std::to_string(start_year_ + static_cast<int>(i)));
    }
}

double AnnualSeries::at_year(int year) const {
    if (!has_year(year))
        throw Error(Errc::span_mismatch,
                    country_ + " has no year " + std::to_string(year));
    return values_[static_cast<std::size_t>(year - start_year_)];
}

AnnualSeries AnnualSeries::window(int first_year, int last_year) const {
    if (first_year > last_year || !has_year(first_year) || !has_year(last_year))
        throw Error(Errc::span_mismatch,
                    country_ + ": window " + std::to_string(first_year) + ".." +
                        std::to_string(last_year) + " outside " +
                        std::to_string(start_year()) + ".." + std::to_string(end_year()));
    auto b = values_.begin() + (first_year - start_year_);
    return {country_, first_year, std::vector<double>(b, b + (last_year - first_year + 1)), unit_};
}

AnnualSeries log_transform(const AnnualSeries& s) {
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        double v = s[i];
        if (v <= 0.0)
            throw Error(Errc::non_positive_value,
                        s.country() + ": log of non-positive value in " +
                            std::to_string(s.start_year() + static_cast<int>(i)));
        out[i] = std::log(v);
    }
    return s.with_values(std::move(out), Unit::log_value);
}

std::pair<int, int> common_years(const AnnualSeries& a, const AnnualSeries& b) {
    int first = std::max(a.start_year(), b.start_year());
    int last = std::min(a.end_year(), b.end_year());
    if (first > last)
        throw Error(Errc::empty_overlap,
                    a.country() + " and " + b.country() + " share no years");
    return {first, last};
}

AnnualSeries per_capita_10k(const AnnualSeries& counts, const AnnualSeries& population) {
    auto [first, last] = common_years(counts, population);
    std::vector<double> out(static_cast<std::size_t>(last - first + 1));
    for (int y = first; y <= last; ++y) {
        double pop = population.at_year(y);
        if (pop <= 0.0)
            throw Error(Errc::non_positive_population,
                        counts.country() + ": population not positive in " + std::to_string(y));
        out[static_cast<std::size_t>(y - first)] = 10000.0 * counts.at_year(y) / pop;
    }
    return {counts.country(), first, std::move(out), Unit::per_capita_10k};
}

AnnualSeries index_to_eu27(const AnnualSeries& s, const AnnualSeries& eu27_reference) {
    auto [first, last] = common_years(s, eu27_reference);
    std::vector<double> out(static_cast<std::size_t>(last - first + 1));
    for (int y = first; y <= last; ++y) {
        double ref = eu27_reference.at_year(y);
        if (ref <= 0.0)
            throw Error(Errc::non_positive_value,
                        "EU-27 reference not positive in " + std::to_string(y));
        out[static_cast<std::size_t>(y - first)] = 100.0 * s.at_year(y) / ref;
    }
    return {s.country(), first, std::move(out), Unit::pps_index};
}

AnnualSeries lag(const AnnualSeries& s, int k) {
    return {s.country(), s.start_year() + k,
            std::vector<double>(s.values().begin(), s.values().end()), s.unit()};
}

AnnualSeries diff(const AnnualSeries& s) {
    if (s.size() < 2)
        throw Error(Errc::series_too_short, s.country() + ": differencing needs two values");
    std::vector<double> out(s.size() - 1);
    for (std::size_t i = 1; i < s.size(); ++i) out[i - 1] = s[i] - s[i - 1];
    return {s.country(), s.start_year() + 1, std::move(out), s.unit()};
}

}  // namespace asylecon
