#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "incgap/csv.hpp"

namespace incgap {

/// Collects non-fatal warnings raised while loading or transforming data.
struct Diagnostics {
    std::vector<std::string> warnings;
    void warn(std::string message) { warnings.push_back(std::move(message)); }
};

}  // namespace incgap

namespace incgap::ingest {

inline constexpr std::string_view kSubSaharanAfrica = "Sub-Saharan Africa";
inline constexpr std::string_view kUnknownRegion = "region-unknown";

inline constexpr int kMinYear = 1950;
inline constexpr int kMaxYear = 2025;

/// One country-year row of raw Penn World Table variables. Monetary series
/// are in millions of 2017 PPP dollars, pop in millions.
struct Observation {
    std::string country_code;
    int year = 0;
    std::optional<double> rgdpo;
    std::optional<double> rgdpe;
    std::optional<double> rgdpna;
    std::optional<double> rnna;
    std::optional<double> pop;
    std::optional<double> hc;
    std::optional<double> labsh;
    std::optional<double> emp;  // persons engaged, millions; optional column
};

/// Column names of the raw file. `emp` is read only when the header has it.
struct PwtSchema {
    std::string countrycode = "countrycode";
    std::string year = "year";
    std::string rgdpo = "rgdpo";
    std::string rgdpe = "rgdpe";
    std::string rgdpna = "rgdpna";
    std::string rnna = "rnna";
    std::string pop = "pop";
    std::string hc = "hc";
    std::string labsh = "labsh";
    std::string emp = "emp";
};

struct PwtData {
    std::vector<Observation> observations;
    std::size_t labsh_out_of_range = 0;  // rows flagged, still kept
    std::vector<std::string> warnings;
};

[[nodiscard]] PwtData observations_from_table(const csv::Table& table, const PwtSchema& schema,
                                              const std::string& source = "<table>");
[[nodiscard]] PwtData load_pwt(const std::filesystem::path& path, const PwtSchema& schema = {});

struct RegionInfo {
    std::string region;
    std::string income_group;
};

class RegionMap {
public:
    RegionMap() = default;

    /// Throws DataError when a code is added twice with a different region.
    void add(const std::string& code, RegionInfo info);

    [[nodiscard]] const RegionInfo* find(std::string_view code) const;
    /// Region label, or kUnknownRegion for codes absent from the map.
    [[nodiscard]] std::string region_of(std::string_view code) const;
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }

private:
    std::map<std::string, RegionInfo, std::less<>> entries_;
};

[[nodiscard]] RegionMap region_map_from_table(const csv::Table& table,
                                              const std::string& source = "<table>");
[[nodiscard]] RegionMap load_region_map(const std::filesystem::path& path);

/// Oil rents as percent of GDP by (country, year).
class OilRentSeries {
public:
    void set(const std::string& code, int year, double pct);
    [[nodiscard]] std::optional<double> at(std::string_view code, int year) const;
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

private:
    std::map<std::pair<std::string, int>, double, std::less<>> values_;
};

[[nodiscard]] OilRentSeries oil_rents_from_table(const csv::Table& table,
                                                 const std::string& source = "<table>");
[[nodiscard]] OilRentSeries load_oil_rents(const std::filesystem::path& path);

enum class IncomeMeasure { OutputSide, ExpenditureSide };

[[nodiscard]] std::string_view to_string(IncomeMeasure m);
/// Accepts "rgdpo"/"output-side" and "rgdpe"/"expenditure-side".
[[nodiscard]] IncomeMeasure parse_income_measure(std::string_view text);

struct FilterConfig {
    double min_population_millions = 0.2;
    double max_oil_rent_pct = 50.0;
    std::vector<std::string> variance_exclusions = {"VEN"};
    IncomeMeasure income_measure = IncomeMeasure::OutputSide;

    void validate() const;
};

/// Derived per-country-year variables.
struct PanelRecord {
    std::string country_code;
    int year = 0;
    std::string region;
    std::string income_group;
    std::optional<double> y;             // GDP per capita, 2017 PPP dollars
    std::optional<double> y_per_worker;  // GDP per person engaged, when emp present
    std::optional<double> ky;            // capital-output ratio rnna / rgdpna
    std::optional<double> h;             // human capital index
    std::optional<double> alpha;         // capital share 1 - labsh
    std::optional<double> pop;

    [[nodiscard]] bool alpha_in_unit_interval() const {
        return alpha && *alpha > 0.0 && *alpha < 1.0;
    }
    /// y, ky, h present and alpha strictly inside (0, 1).
    [[nodiscard]] bool decomposition_ready() const {
        return y && ky && h && alpha_in_unit_interval();
    }
};

struct Exclusion {
    std::string country_code;
    std::string reason;
};

inline constexpr std::string_view kReasonSmallPopulation = "small-population";
inline constexpr std::string_view kReasonOilRents = "oil-rents";

/// Filtered, derived dataset. Immutable once built.
class Panel {
public:
    Panel(std::vector<PanelRecord> records, std::vector<Exclusion> exclusions, FilterConfig config,
          std::vector<std::string> warnings, std::size_t alpha_out_of_range);

    [[nodiscard]] std::span<const PanelRecord> records() const noexcept { return records_; }
    [[nodiscard]] std::span<const Exclusion> exclusions() const noexcept { return exclusions_; }
    [[nodiscard]] const FilterConfig& config() const noexcept { return config_; }
    [[nodiscard]] std::span<const std::string> warnings() const noexcept { return warnings_; }
    /// Country-years whose labsh lies outside (0, 1); barred from decomposition.
    [[nodiscard]] std::size_t alpha_out_of_range() const noexcept { return alpha_out_of_range_; }

    [[nodiscard]] const PanelRecord* find(std::string_view code, int year) const;
    [[nodiscard]] std::vector<std::string> countries() const;
    [[nodiscard]] std::vector<const PanelRecord*> records_in_year(int year) const;

private:
    std::vector<PanelRecord> records_;  // sorted by (country_code, year)
    std::vector<Exclusion> exclusions_;
    FilterConfig config_;
    std::vector<std::string> warnings_;
    std::size_t alpha_out_of_range_ = 0;
};

[[nodiscard]] Panel build_panel(std::span<const Observation> observations, const RegionMap& regions,
                                const OilRentSeries& oil, const FilterConfig& cfg);

void write_exclusions(std::ostream& out, const Panel& panel);

/// Variables an analysis may require at both endpoint years.
enum class Variable : unsigned {
    Income = 1u << 0,
    CapitalOutput = 1u << 1,
    HumanCapital = 1u << 2,
    CapitalShare = 1u << 3,  // alpha strictly inside (0, 1)
};

class VariableSet {
public:
    constexpr VariableSet() = default;
    constexpr VariableSet(std::initializer_list<Variable> vars) {
        for (auto v : vars) bits_ |= static_cast<unsigned>(v);
    }
    [[nodiscard]] constexpr bool contains(Variable v) const {
        return (bits_ & static_cast<unsigned>(v)) != 0;
    }
    [[nodiscard]] bool satisfied_by(const PanelRecord& r) const;

    static constexpr VariableSet decomposition() {
        return {Variable::Income, Variable::CapitalOutput, Variable::HumanCapital,
                Variable::CapitalShare};
    }

private:
    unsigned bits_ = 0;
};

/// Cross-sectional country selection shared by the statistics modules.
struct CountryFilter {
    bool exclude_ssa = false;
    std::set<std::string, std::less<>> exclude_codes;
    std::optional<std::set<std::string, std::less<>>> restrict_to;

    [[nodiscard]] bool admits(const PanelRecord& r) const;
};

struct SampleUnit {
    std::string country_code;
    std::string region;
    PanelRecord start;
    PanelRecord end;
};

/// Balanced two-period sample.
struct AnalysisSample {
    int t0 = 0;
    int t1 = 0;
    std::vector<SampleUnit> units;

    [[nodiscard]] std::size_t n() const noexcept { return units.size(); }
};

[[nodiscard]] AnalysisSample analysis_sample(const Panel& panel, int t0, int t1,
                                             VariableSet required, bool exclude_ssa);

/// Countries admitted by `filter` that satisfy `required` in every listed year.
[[nodiscard]] std::set<std::string, std::less<>> balanced_countries(const Panel& panel,
                                                                    std::span<const int> years,
                                                                    VariableSet required,
                                                                    const CountryFilter& filter);

}  // namespace incgap::ingest
