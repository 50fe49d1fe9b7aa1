#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "incgap/error.hpp"
#include "incgap/ingest.hpp"

using namespace incgap;
using namespace incgap::ingest;

namespace {

constexpr const char* kHeader = "countrycode,year,rgdpo,rgdpe,rgdpna,rnna,pop,hc,labsh\n";

Observation obs(const std::string& code, int year, double gdp, double pop, double labsh = 0.6) {
    Observation o;
    o.country_code = code;
    o.year = year;
    o.rgdpo = o.rgdpe = o.rgdpna = gdp;
    o.rnna = 3.0 * gdp;
    o.pop = pop;
    o.hc = 2.0;
    o.labsh = labsh;
    return o;
}

RegionMap two_regions() {
    RegionMap m;
    m.add("KEN", {std::string(kSubSaharanAfrica), "LMC"});
    m.add("USA", {"North America", "HIC"});
    m.add("FRA", {"Europe & Central Asia", "HIC"});
    return m;
}

}  // namespace

TEST_CASE("load well-formed rows") {
    const auto t = csv::parse(std::string(kHeader) +
                              "USA,2000,100,101,100,300,10,3.5,0.6\n"
                              "USA,2019,150,151,150,450,12,3.7,0.58\n"
                              "KEN,2000,5,5,5,10,3,,0.54\n");
    const auto data = observations_from_table(t, {});
    REQUIRE(data.observations.size() == 3);
    CHECK(*data.observations[0].rgdpo == 100.0);
    CHECK_FALSE(data.observations[2].hc);
    CHECK_FALSE(data.observations[0].emp);
}

TEST_CASE("blank rgdpo cell is missing, duplicates and bad values are errors") {
    auto data = observations_from_table(
        csv::parse(std::string(kHeader) + "USA,2000,,101,100,300,10,3.5,0.6\n"), {});
    CHECK_FALSE(data.observations[0].rgdpo);

    CHECK_THROWS_AS(observations_from_table(csv::parse(std::string(kHeader) +
                                                       "USA,2000,1,1,1,1,1,1,0.5\n"
                                                       "USA,2000,2,2,2,2,2,2,0.5\n"),
                                            {}),
                    DataError);
    CHECK_THROWS_AS(observations_from_table(
                        csv::parse(std::string(kHeader) + "USA,2000,-1,1,1,1,1,1,0.5\n"), {}),
                    DataError);
    CHECK_THROWS_AS(observations_from_table(
                        csv::parse(std::string(kHeader) + "USA,1850,1,1,1,1,1,1,0.5\n"), {}),
                    DataError);
    CHECK_THROWS_AS(observations_from_table(csv::parse("countrycode,year\nUSA,2000\n"), {}),
                    DataError);
}

TEST_CASE("labsh outside the unit interval is flagged, not rejected") {
    const auto data = observations_from_table(
        csv::parse(std::string(kHeader) + "USA,2000,1,1,1,1,1,1,1.2\n"), {});
    CHECK(data.observations.size() == 1);
    CHECK(data.labsh_out_of_range == 1);
}

TEST_CASE("region map lookup, unknown code and conflicts") {
    const auto m = region_map_from_table(csv::parse("countrycode,region\nKEN,Sub-Saharan Africa\n"));
    CHECK(m.region_of("KEN") == kSubSaharanAfrica);
    CHECK(m.region_of("XXX") == kUnknownRegion);
    CHECK_THROWS_AS(region_map_from_table(csv::parse("countrycode,region\nKEN,A\nKEN,B\n")), DataError);
    CHECK_NOTHROW(region_map_from_table(csv::parse("countrycode,region\nKEN,A\nKEN,A\n")));
}

TEST_CASE("sample filters") {
    std::vector<Observation> o = {obs("USA", 2000, 100, 10), obs("USA", 2019, 150, 12),
                                  obs("TUV", 2000, 1, 0.01), obs("TUV", 2019, 1, 0.2),
                                  obs("KWT", 2000, 50, 2),   obs("KWT", 2019, 60, 4),
                                  obs("FRA", 2000, 80, 8, 0.54)};
    OilRentSeries oil;
    oil.set("KWT", 2000, 60.0);
    oil.set("KWT", 2019, 30.0);
    oil.set("USA", 2000, 1.0);
    auto regions = two_regions();
    const auto panel = build_panel(o, regions, oil, {});

    auto reason = [&](const std::string& code) -> std::string {
        for (const auto& e : panel.exclusions()) {
            if (e.country_code == code) return e.reason;
        }
        return "";
    };
    CHECK(reason("TUV") == kReasonSmallPopulation);
    CHECK(reason("KWT") == kReasonOilRents);
    CHECK(reason("USA").empty());
    CHECK(panel.countries() == std::vector<std::string>{"FRA", "USA"});

    const auto* fra = panel.find("FRA", 2000);
    REQUIRE(fra);
    CHECK(*fra->alpha == doctest::Approx(0.46).epsilon(1e-12));
    CHECK(*fra->y == doctest::Approx(10.0));
    CHECK(*fra->ky == doctest::Approx(3.0));
    CHECK(fra->decomposition_ready());

    const bool warned_missing_oil = std::any_of(panel.warnings().begin(), panel.warnings().end(),
                                                [](const std::string& w) { return w.find("FRA") != std::string::npos; });
    CHECK(warned_missing_oil);
}

TEST_CASE("unknown region and inactive oil filter produce warnings") {
    std::vector<Observation> o = {obs("ZZZ", 2000, 10, 1)};
    const auto panel = build_panel(o, two_regions(), OilRentSeries{}, {});
    CHECK(panel.find("ZZZ", 2000)->region == kUnknownRegion);
    CHECK(panel.warnings().size() == 2);
}

TEST_CASE("hc below one is treated as missing") {
    auto o = obs("USA", 2000, 10, 1);
    o.hc = 0.8;
    const std::vector<Observation> v = {o};
    const auto panel = build_panel(v, two_regions(), OilRentSeries{}, {});
    CHECK_FALSE(panel.find("USA", 2000)->h);
}

TEST_CASE("income measure switch") {
    auto o = obs("USA", 2000, 10, 1);
    o.rgdpe = 20.0;
    const std::vector<Observation> v = {o};
    FilterConfig cfg;
    cfg.income_measure = IncomeMeasure::ExpenditureSide;
    CHECK(*build_panel(v, two_regions(), {}, cfg).find("USA", 2000)->y == 20.0);
    CHECK(parse_income_measure("rgdpo") == IncomeMeasure::OutputSide);
    CHECK_THROWS_AS((void)parse_income_measure("gdp"), UsageError);
}

TEST_CASE("analysis sample needs both endpoints") {
    std::vector<Observation> o = {obs("USA", 2000, 100, 10), obs("USA", 2019, 150, 12),
                                  obs("KEN", 2000, 5, 3),    obs("KEN", 2019, 9, 5),
                                  obs("FRA", 2000, 80, 8)};
    const auto panel = build_panel(o, two_regions(), {}, {});
    const auto all = analysis_sample(panel, 2000, 2019, {Variable::Income}, false);
    CHECK(all.n() == 2);
    const auto non_ssa = analysis_sample(panel, 2000, 2019, {Variable::Income}, true);
    CHECK(non_ssa.n() == 1);
    CHECK(non_ssa.units[0].country_code == "USA");
    CHECK_THROWS_AS(analysis_sample(panel, 2019, 2000, {Variable::Income}, false), UsageError);
    CHECK_THROWS_AS(analysis_sample(panel, 1990, 2000, {Variable::Income}, false), DataError);

    const std::vector<int> years = {2000, 2019};
    const auto balanced = balanced_countries(panel, years, VariableSet::decomposition(), {});
    CHECK(balanced.size() == 2);
    CHECK(balanced.count("FRA") == 0);
}

TEST_CASE("exclusion ledger output") {
    std::vector<Observation> o = {obs("USA", 2000, 100, 10), obs("TUV", 2000, 1, 0.01)};
    const auto panel = build_panel(o, two_regions(), {}, {});
    std::ostringstream out;
    write_exclusions(out, panel);
    CHECK(out.str() == "countrycode,reason\nTUV,small-population\n");
}
