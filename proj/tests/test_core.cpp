// Series container, transforms and seeded synthetic generators.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "asylecon/annual_series.hpp"
#include "asylecon/rng.hpp"
#include "asylecon/synthetic.hpp"

using namespace asylecon;

namespace {

AnnualSeries make(std::string code, int start, std::vector<double> v,
                  Unit unit = Unit::raw_count) {
    return AnnualSeries(std::move(code), start, std::move(v), unit);
}

}  // namespace

TEST_CASE("series construction enforces non-empty finite values") {
    CHECK_THROWS_AS(make("XX", 2000, {}), Error);
    try {
        make("XX", 2000, {});
    } catch (const Error& e) {
        CHECK(e.code() == Errc::series_too_short);
    }
    try {
        make("XX", 2000, {1.0, std::numeric_limits<double>::quiet_NaN()});
        FAIL("NaN accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::non_positive_value);
    }
}

TEST_CASE("year indexing and windows") {
    auto s = make("XX", 1995, {10, 20, 30, 40});
    CHECK(s.start_year() == 1995);
    CHECK(s.end_year() == 1998);
    CHECK(s.size() == 4);
    CHECK(s.at_year(1996) == 20.0);
    CHECK(s.has_year(1998));
    CHECK(!s.has_year(1999));
    CHECK_THROWS_AS(s.at_year(1999), Error);

    auto w = s.window(1996, 1997);
    CHECK(w.start_year() == 1996);
    CHECK(w.size() == 2);
    CHECK(w[0] == 20.0);
    CHECK(w[1] == 30.0);
    CHECK_THROWS_AS(s.window(1994, 1996), Error);
    CHECK_THROWS_AS(s.window(1997, 1996), Error);
}

TEST_CASE("log transform is exact on exponentials and rejects non-positives") {
    auto s = make("XX", 2000, {std::exp(1.0), std::exp(2.5), std::exp(-3.0)});
    auto l = log_transform(s);
    CHECK(l.unit() == Unit::log_value);
    CHECK(l[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(l[1] == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(l[2] == doctest::Approx(-3.0).epsilon(1e-14));

    try {
        log_transform(make("XX", 2000, {1.0, 0.0}));
        FAIL("log of zero accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::non_positive_value);
    }
}

TEST_CASE("per-capita rate: 500 applications over one million persons is 5 per 10k") {
    auto counts = make("XX", 2000, {500.0, 1000.0});
    auto pop = make("XX", 2000, {1'000'000.0, 1'000'000.0}, Unit::population);
    auto pc = per_capita_10k(counts, pop);
    CHECK(pc.unit() == Unit::per_capita_10k);
    CHECK(pc[0] == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(pc[1] == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("per-capita aligns on the overlap and rejects bad populations") {
    auto counts = make("XX", 2000, {100.0, 200.0, 300.0});
    auto pop = make("XX", 2001, {10'000.0, 10'000.0, 10'000.0}, Unit::population);
    auto pc = per_capita_10k(counts, pop);
    CHECK(pc.start_year() == 2001);
    CHECK(pc.size() == 2);
    CHECK(pc[0] == doctest::Approx(200.0));

    auto far = make("XX", 2050, {1.0}, Unit::population);
    try {
        per_capita_10k(counts, far);
        FAIL("disjoint spans accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::empty_overlap);
    }
    auto zero_pop = make("XX", 2000, {0.0}, Unit::population);
    try {
        per_capita_10k(counts, zero_pop);
        FAIL("zero population accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::non_positive_population);
    }
}

TEST_CASE("doubling the population halves the per-capita rate exactly") {
    Rng rng(7);
    std::vector<double> counts(12), pop(12), pop2(12);
    for (int i = 0; i < 12; ++i) {
        counts[i] = 100.0 + 90.0 * rng.uniform01();
        pop[i] = 1e6 * (1.0 + rng.uniform01());
        pop2[i] = 2.0 * pop[i];
    }
    auto a = per_capita_10k(make("XX", 2000, counts),
                            make("XX", 2000, pop, Unit::population));
    auto b = per_capita_10k(make("XX", 2000, counts),
                            make("XX", 2000, pop2, Unit::population));
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(b[i] == doctest::Approx(a[i] / 2.0).epsilon(1e-13));
}

TEST_CASE("indexing against an identical reference gives a constant 100") {
    auto s = make("XX", 2000, {3.0, 4.0, 5.0}, Unit::per_capita_10k);
    auto idx = index_to_eu27(s, s);
    CHECK(idx.unit() == Unit::pps_index);
    for (std::size_t i = 0; i < idx.size(); ++i)
        CHECK(idx[i] == doctest::Approx(100.0).epsilon(1e-14));
}

TEST_CASE("lag shifts the reporting year forward") {
    auto s = make("XX", 2000, {1.0, 2.0, 3.0});
    auto l = lag(s, 1);
    CHECK(l.size() == s.size());
    CHECK(l.start_year() == 2001);
    CHECK(l.at_year(2001) == s.at_year(2000));
    CHECK(l.at_year(2003) == s.at_year(2002));

    auto l2 = lag(s, 2);
    CHECK(l2.start_year() == 2002);
    CHECK(l2.at_year(2002) == s.at_year(2000));
}

TEST_CASE("difference drops one observation and matches by hand") {
    auto s = make("XX", 2000, {1.0, 4.0, 9.0, 16.0});
    auto d = diff(s);
    CHECK(d.size() == s.size() - 1);
    CHECK(d.start_year() == 2001);
    CHECK(d[0] == 3.0);
    CHECK(d[1] == 5.0);
    CHECK(d[2] == 7.0);
    try {
        diff(make("XX", 2000, {1.0}));
        FAIL("singleton differenced");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::series_too_short);
    }
}

TEST_CASE("common years of two series") {
    auto a = make("A", 2000, std::vector<double>(5, 1.0));
    auto b = make("B", 2003, std::vector<double>(5, 1.0));
    auto [first, last] = common_years(a, b);
    CHECK(first == 2003);
    CHECK(last == 2004);

    auto c = make("C", 2010, {1.0});
    CHECK_THROWS_AS(common_years(a, c), Error);
}

TEST_CASE("seeded generators are bit-reproducible") {
    SeedSpec spec;
    spec.seed = 987654321;
    spec.process = RandomWalk{};
    spec.length = 50;
    spec.scale = 0.3;
    auto a = generate_synthetic(spec);
    auto b = generate_synthetic(spec);
    REQUIRE(a.size() == 50);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

    spec.seed = 987654322;
    auto c = generate_synthetic(spec);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i) any_diff = any_diff || a[i] != c[i];
    CHECK(any_diff);
}

TEST_CASE("an AR(1) with zero persistence reproduces white noise draw for draw") {
    SeedSpec wn{123, WhiteNoise{}, 40, 1.7, 2000, "SYN"};
    SeedSpec ar{123, Ar1{0.0}, 40, 1.7, 2000, "SYN"};
    auto a = generate_synthetic(wn);
    auto b = generate_synthetic(ar);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("random walk is the cumulative sum of the matching white noise") {
    SeedSpec wn{55, WhiteNoise{}, 30, 0.8, 2000, "SYN"};
    SeedSpec rw{55, RandomWalk{}, 30, 0.8, 2000, "SYN"};
    auto noise = generate_synthetic(wn);
    auto walk = generate_synthetic(rw);
    double acc = 0.0;
    for (std::size_t i = 0; i < walk.size(); ++i) {
        acc += noise[i];
        CHECK(walk[i] == doctest::Approx(acc).epsilon(1e-12));
    }
}

TEST_CASE("paired regression process honors its construction") {
    SeedSpec spec;
    spec.seed = 31;
    spec.length = 60;
    spec.scale = 0.1;
    TvpLogLog p;
    p.mu = 0.4;
    p.omega = std::vector<double>(60, 0.9);
    p.sigma_eps = 0.0;  // exact relation, no measurement noise
    p.x0 = 2.0;
    spec.process = p;
    auto pair = generate_synthetic_pair(spec);
    REQUIRE(pair.x.size() == 61);
    REQUIRE(pair.y.size() == 60);
    CHECK(pair.x.start_year() == spec.start_year - 1);
    CHECK(pair.y.start_year() == spec.start_year);
    CHECK(pair.x[0] == 2.0);
    for (std::size_t t = 0; t < pair.y.size(); ++t)
        CHECK(pair.y[t] == doctest::Approx(0.4 + 0.9 * pair.x[t]).epsilon(1e-12));
}

TEST_CASE("linear path endpoints and spacing") {
    auto p = linear_path(0.5, 1.0, 6);
    REQUIRE(p.size() == 6);
    CHECK(p.front() == doctest::Approx(0.5));
    CHECK(p.back() == doctest::Approx(1.0));
    for (std::size_t i = 1; i < p.size(); ++i)
        CHECK(p[i] - p[i - 1] == doctest::Approx(0.1).epsilon(1e-12));
    auto single = linear_path(0.3, 0.9, 1);
    REQUIRE(single.size() == 1);
}

TEST_CASE("generator produces uniforms in range and reproducible normals") {
    Rng r1(42), r2(42);
    for (int i = 0; i < 1000; ++i) {
        double u = r1.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    Rng r3(42);
    for (int i = 0; i < 100; ++i) CHECK(r3.gaussian() == r2.gaussian());

    // Moments sanity: 10k draws, mean near 0, variance near 1.
    Rng r4(9);
    double s = 0, s2 = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        double g = r4.gaussian();
        s += g;
        s2 += g * g;
    }
    CHECK(std::abs(s / n) < 0.05);
    CHECK(std::abs(s2 / n - 1.0) < 0.07);
}
