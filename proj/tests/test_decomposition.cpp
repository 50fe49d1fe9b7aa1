#include <doctest.h>

#include <cmath>

#include "incgap/decomposition.hpp"
#include "incgap/error.hpp"
#include "incgap/oracle.hpp"

using namespace incgap;
using namespace incgap::decomposition;

namespace {

PercentileProfile random_profile(oracle::SplitMix64& rng, double step) {
    PercentileProfile prof;
    prof.year = 2000;
    prof.n_countries = 50;
    double ln_y = rng.uniform(6, 8);
    for (double p : percentile_grid(0, 100, step)) {
        ln_y += rng.uniform(0.0, 0.1);
        prof.points.push_back({p, ln_y, rng.uniform(-1, 1), rng.uniform(0, 1.5), rng.uniform(0.2, 0.7)});
    }
    return prof;
}

std::vector<CountryInputs> ladder(std::size_t n) {
    std::vector<CountryInputs> out;
    for (std::size_t i = 0; i < n; ++i) {
        const double q = static_cast<double>(i);
        out.push_back({oracle::synthetic_code(i), std::exp(7 + 0.1 * q), std::exp(0.05 * q),
                       std::exp(0.02 * q), 0.3 + 0.01 * q});
    }
    return out;
}

}  // namespace

TEST_CASE("percentile grid") {
    CHECK(percentile_grid(10, 90, 1).size() == 81);
    const auto g = percentile_grid(10, 90, 30);
    CHECK(g == std::vector<double>{10, 40, 70, 90});
    CHECK_THROWS_AS(percentile_grid(90, 10, 1), UsageError);
}

TEST_CASE("profile reads companions along the income ordering") {
    // y = (1, 2, 4), k/y = (1, 2, 3); listed out of order on purpose.
    std::vector<CountryInputs> c = {{"C", 4, 3, 1, 0.3}, {"A", 1, 1, 1, 0.3}, {"B", 2, 2, 1, 0.3}};
    const std::vector<double> grid = {0, 50, 100};
    const auto prof = profile_from_countries(2000, c, grid);
    CHECK(prof.points[1].ln_ky == doctest::Approx(std::log(2.0)));
    CHECK(prof.points[2].ln_y == doctest::Approx(std::log(4.0)));
}

TEST_CASE("profile endpoints equal percentile_value along rank") {
    auto c = ladder(23);
    const std::vector<double> grid = {10, 90};
    const auto prof = profile_from_countries(1990, c, grid);
    // Rank 2.2 and 19.8: linear in index for every variable.
    CHECK(prof.points[0].ln_y == doctest::Approx(7 + 0.1 * 2.2).epsilon(1e-13));
    CHECK(prof.points[1].ln_ky == doctest::Approx(0.05 * 19.8).epsilon(1e-13));
    CHECK(prof.points[1].alpha == doctest::Approx(0.3 + 0.01 * 19.8).epsilon(1e-13));
}

TEST_CASE("identical countries give a flat profile and zero gaps") {
    std::vector<CountryInputs> c(12, {"", 5000, 2.5, 2.0, 0.4});
    for (std::size_t i = 0; i < c.size(); ++i) c[i].country_code = oracle::synthetic_code(i);
    const auto grid = percentile_grid(0, 100, 5);
    const auto g = gap_decomposition(profile_from_countries(2000, c, grid), 10, 90);
    CHECK(g.total == 0.0);
    CHECK(g.contrib_ky == 0.0);
    CHECK(g.contrib_h == 0.0);
    CHECK(g.contrib_tfp == 0.0);
}

TEST_CASE("additivity and Hall-Jones closed form on random profiles") {
    oracle::SplitMix64 rng(42);
    for (int rep = 0; rep < 200; ++rep) {
        const auto prof = random_profile(rng, 1.0);
        const auto g = gap_decomposition(prof, 10, 90);
        CHECK(std::abs(g.total - (g.contrib_ky + g.contrib_h + g.contrib_tfp)) < 1e-12);

        const double a = rng.uniform(0.1, 0.6);
        const auto hj = gap_decomposition(prof, 10, 90, AlphaMode::fixed(a));
        const double closed = a / (1 - a) * (prof.points[90].ln_ky - prof.points[10].ln_ky);
        CHECK(std::abs(hj.contrib_ky - closed) < 1e-12);
        CHECK(hj.contrib_h == g.contrib_h);
    }
}

TEST_CASE("flat inputs leave everything to TFP") {
    PercentileProfile prof;
    prof.year = 2000;
    for (double p : percentile_grid(0, 100, 1)) prof.points.push_back({p, 7 + p / 50, 0.3, 0.5, 0.2 + p / 500});
    const auto g = gap_decomposition(prof, 10, 90);
    CHECK(g.contrib_ky == 0.0);
    CHECK(g.contrib_h == 0.0);
    CHECK(g.contrib_tfp == g.total);
}

TEST_CASE("gap endpoints must be grid members") {
    PercentileProfile prof;
    for (double p : percentile_grid(0, 100, 10)) prof.points.push_back({p, p, 0, 0, 0.3});
    CHECK_THROWS_AS(gap_decomposition(prof, 15, 90), UsageError);
    CHECK_THROWS_AS(gap_decomposition(prof, 90, 10), UsageError);
}

TEST_CASE("alpha mode parsing") {
    CHECK(AlphaMode::parse("varying").is_varying());
    CHECK(*AlphaMode::parse("const:0.46").constant == 0.46);
    CHECK(*AlphaMode::parse("const:1/3").constant == doctest::Approx(1.0 / 3.0));
    CHECK(AlphaMode::fixed(0.25).label() == "const:0.25");
    CHECK_THROWS_AS(AlphaMode::parse("const:1.5"), UsageError);
    CHECK_THROWS_AS(AlphaMode::parse("fixed"), UsageError);
}

TEST_CASE("period changes telescope") {
    oracle::SyntheticSpec spec;
    spec.ln_a = {8.0, 3.0, 0.01, -0.02};
    spec.ln_ky = {0.5, 0.8, 0.0, -0.01};
    spec.alpha.linear = {0.35, 0.05, 0.002, 0.0};
    spec.alpha.hump = 0.3;
    const auto synth = oracle::synth_panel(spec);
    GapChangeOptions opts;
    const auto a = gap_change(synth.panel, 1980, 2000, opts);
    const auto b = gap_change(synth.panel, 2000, 2019, opts);
    const auto c = gap_change(synth.panel, 1980, 2019, opts);
    CHECK(std::abs(a.delta_total + b.delta_total - c.delta_total) < 1e-12);
    CHECK(std::abs(a.delta_ky + b.delta_ky - c.delta_ky) < 1e-12);
    CHECK(std::abs(a.delta_h + b.delta_h - c.delta_h) < 1e-12);
    CHECK(std::abs(a.delta_tfp + b.delta_tfp - c.delta_tfp) < 1e-12);
    CHECK(std::abs(c.delta_total - (c.delta_ky + c.delta_h + c.delta_tfp)) < 1e-12);
}

TEST_CASE("variance decomposition identity and degenerate TFP") {
    oracle::SplitMix64 rng(7);
    std::vector<double> ln_y, ln_ky, ln_h;
    for (int i = 0; i < 80; ++i) {
        ln_y.push_back(rng.uniform(6, 11));
        ln_ky.push_back(rng.uniform(-0.5, 1.5));
        ln_h.push_back(rng.uniform(0, 1.3));
    }
    for (auto norm : {stats::VarianceNorm::Population, stats::VarianceNorm::Sample}) {
        const auto v = variance_decomposition_of(2000, 0.46, ln_y, ln_ky, ln_h, norm);
        CHECK(std::abs(v.var_ln_y - (v.var_ln_a + v.var_ln_ykh + v.cov_term)) < 1e-10);
    }

    // ln A = 0: ln y equals the input index exactly.
    for (std::size_t i = 0; i < ln_y.size(); ++i) ln_y[i] = 0.46 / 0.54 * ln_ky[i] + ln_h[i];
    const auto v = variance_decomposition_of(2000, 0.46, ln_y, ln_ky, ln_h);
    CHECK(v.var_ln_a < 1e-28);
    CHECK(std::abs(v.cov_term) < 1e-14);
    CHECK_THROWS_AS(variance_decomposition_of(2000, 1.0, ln_y, ln_ky, ln_h), UsageError);
}

TEST_CASE("variance decomposition on a synthetic panel with zero TFP dispersion") {
    oracle::SyntheticSpec spec;
    spec.ln_a = {8.0, 0.0, 0.0, 0.0};
    spec.alpha.linear = {0.46, 0.0, 0.0, 0.0};
    const auto synth = oracle::synth_panel(spec);
    const auto v = variance_decomposition(synth.panel, 2000);
    CHECK(v.var_ln_a < 1e-20);
    CHECK(std::abs(v.cov_term) < 1e-12);
    CHECK(v.n == 101);
}

TEST_CASE("regional population-weighted capital-output") {
    std::vector<ingest::Observation> obs;
    auto add = [&](const std::string& code, double ky, double pop) {
        ingest::Observation o;
        o.country_code = code;
        o.year = 2000;
        o.rgdpo = o.rgdpe = o.rgdpna = 100.0;
        o.rnna = 100.0 * ky;
        o.pop = pop;
        obs.push_back(o);
    };
    add("AAA", 2, 1);
    add("AAB", 4, 3);
    add("BBB", 5, 7);
    add("CCA", 1, 2);
    add("CCB", 3, 2);
    ingest::RegionMap m;
    m.add("AAA", {"A", ""});
    m.add("AAB", {"A", ""});
    m.add("BBB", {"B", ""});
    m.add("CCA", {"C", ""});
    m.add("CCB", {"C", ""});
    const auto panel = ingest::build_panel(obs, m, {}, {});
    const auto r = regional_capital_output(panel, 2000);
    CHECK(r.weighted_ky.at("A") == doctest::Approx(3.5));
    CHECK(r.weighted_ky.at("B") == doctest::Approx(5.0));
    CHECK(r.weighted_ky.at("C") == doctest::Approx(2.0));

    const auto empty = regional_capital_output(panel, 1990);
    CHECK(empty.weighted_ky.empty());
    CHECK(empty.warnings.size() == 3);
}
