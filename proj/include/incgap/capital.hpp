#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "incgap/csv.hpp"

namespace incgap::capital {

inline constexpr double kDefaultDepreciation = 0.05;

/// Constant-price investment by year. values[0] is the base-year flow I_0,
/// used to seed the initial stock; values[i] enters the stock of year
/// base_year + i.
struct InvestmentSeries {
    int base_year = 0;
    std::vector<double> values;

    [[nodiscard]] int last_year() const { return base_year + static_cast<int>(values.size()) - 1; }
};

/// Capital stocks for consecutive years starting at base_year.
struct CapitalPath {
    int base_year = 0;
    double delta = kDefaultDepreciation;
    std::vector<double> stocks;

    [[nodiscard]] int last_year() const { return base_year + static_cast<int>(stocks.size()) - 1; }
    [[nodiscard]] double at(int year) const;
};

/// Perpetual inventory: K_base = k0, K_t = I_t + (1 - delta) K_{t-1}.
[[nodiscard]] CapitalPath pim(const InvestmentSeries& inv, double delta, double k0);

/// Steady-state initial stock I_0 / (delta + g).
[[nodiscard]] double k0_steady_state(double i0, double delta, double g);

/// Fraction of K_to that is undepreciated capital from from_year:
/// (1 - delta)^(to - from) K_from / K_to.
[[nodiscard]] double undepreciated_share(const CapitalPath& path, int from_year, int to_year);

/// Human capital index exp(phi(s)) with piecewise-linear returns to years of
/// schooling: 0.134 up to 4 years, 0.101 from 4 to 8, 0.068 beyond 8.
[[nodiscard]] double mincer_hc(double years_of_schooling);
[[nodiscard]] double mincer_phi(double years_of_schooling);

/// Average annual investment growth over the first `window` years, used to
/// seed steady-state stocks when no growth rate is supplied.
[[nodiscard]] double initial_investment_growth(const InvestmentSeries& inv, int window = 10);

struct CountryShares {
    std::string country_code;
    std::map<int, double> share_by_year;
};

struct UndepreciatedReport {
    std::vector<CountryShares> countries;
    std::map<int, double> mean_by_year;  // simple cross-country mean
    std::vector<std::string> warnings;
};

struct DiagnosticsConfig {
    double delta = kDefaultDepreciation;
    int base_year = 1970;
    std::vector<int> years = {1980, 1990, 2000, 2010};
    std::optional<double> growth;  // nullopt: initial_investment_growth per country
};

/// Reads countrycode, year, investment rows into per-country series.
/// Series must be contiguous in years.
[[nodiscard]] std::map<std::string, InvestmentSeries> investment_from_table(
    const csv::Table& table, const std::string& source = "<table>");

/// Builds a steady-state-seeded path from base_year for every country whose
/// series covers the base year and all requested years.
[[nodiscard]] UndepreciatedReport undepreciated_diagnostics(
    const std::map<std::string, InvestmentSeries>& series, const DiagnosticsConfig& cfg);

}  // namespace incgap::capital
