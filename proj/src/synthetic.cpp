#include "asylecon/synthetic.hpp"

#include "asylecon/rng.hpp"

namespace asylecon {

std::vector<double> linear_path(double first, double last, int length) {
    std::vector<double> p(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i)
        p[static_cast<std::size_t>(i)] =
            length == 1 ? first : first + (last - first) * i / (length - 1);
    return p;
}

AnnualSeries generate_synthetic(const SeedSpec& spec) {
    if (spec.length < 1)
        throw Error(Errc::series_too_short, "synthetic spec needs length >= 1");
    if (std::holds_alternative<TvpLogLog>(spec.process))
        throw Error(Errc::internal, "tvp_loglog is paired; use generate_synthetic_pair");

    Rng rng(spec.seed);
    std::vector<double> v(static_cast<std::size_t>(spec.length));
    if (std::holds_alternative<WhiteNoise>(spec.process)) {
        for (auto& x : v) x = spec.scale * rng.gaussian();
    } else if (std::holds_alternative<RandomWalk>(spec.process)) {
        double level = 0.0;
        for (auto& x : v) {
            level += spec.scale * rng.gaussian();
            x = level;
        }
    } else {
        double phi = std::get<Ar1>(spec.process).phi;
        double prev = 0.0;
        for (auto& x : v) {
            prev = phi * prev + spec.scale * rng.gaussian();
            x = prev;
        }
    }
    return {spec.country, spec.start_year, std::move(v), Unit::ratio};
}

TvpPair generate_synthetic_pair(const SeedSpec& spec) {
    if (spec.length < 1)
        throw Error(Errc::series_too_short, "synthetic spec needs length >= 1");
    const auto* p = std::get_if<TvpLogLog>(&spec.process);
    if (!p)
        throw Error(Errc::internal, "generate_synthetic_pair needs a tvp_loglog spec");
    if (static_cast<int>(p->omega.size()) != spec.length)
        throw Error(Errc::span_mismatch, "omega path length must equal spec length");

    Rng rng(spec.seed);
    std::vector<double> x(static_cast<std::size_t>(spec.length) + 1);
    x[0] = p->x0;
    for (std::size_t i = 1; i < x.size(); ++i)
        x[i] = x[i - 1] + spec.scale * rng.gaussian();

    std::vector<double> y(static_cast<std::size_t>(spec.length));
    for (int t = 0; t < spec.length; ++t)
        y[static_cast<std::size_t>(t)] = p->mu +
                                         p->omega[static_cast<std::size_t>(t)] * x[static_cast<std::size_t>(t)] +
                                         p->sigma_eps * rng.gaussian();

    return {AnnualSeries(spec.country, spec.start_year - 1, std::move(x), Unit::log_value),
            AnnualSeries(spec.country, spec.start_year, std::move(y), Unit::log_value)};
}

}  // namespace asylecon
