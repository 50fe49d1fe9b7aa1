#include "incgap/capital.hpp"

#include <cmath>

#include "incgap/error.hpp"

namespace incgap::capital {

namespace {
constexpr const char* kModule = "capital";

void check_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw UsageError(kModule, "depreciation rate must lie in (0, 1), got " + csv::format_full(delta));
    }
}
}  // namespace

double CapitalPath::at(int year) const {
    if (year < base_year || year > last_year()) {
        throw UsageError(kModule, "year " + std::to_string(year) + " outside capital path " +
                                      std::to_string(base_year) + "-" + std::to_string(last_year()));
    }
    return stocks[static_cast<std::size_t>(year - base_year)];
}

CapitalPath pim(const InvestmentSeries& inv, double delta, double k0) {
    check_delta(delta);
    if (!(k0 > 0.0)) throw UsageError(kModule, "initial capital stock must be positive");
    if (inv.values.empty()) throw UsageError(kModule, "empty investment series");
    for (std::size_t i = 0; i < inv.values.size(); ++i) {
        if (!(inv.values[i] >= 0.0)) {
            throw DataError(kModule, "negative investment in " +
                                         std::to_string(inv.base_year + static_cast<int>(i)));
        }
    }
    CapitalPath path{inv.base_year, delta, {}};
    path.stocks.reserve(inv.values.size());
    path.stocks.push_back(k0);
    for (std::size_t i = 1; i < inv.values.size(); ++i) {
        path.stocks.push_back(inv.values[i] + (1.0 - delta) * path.stocks.back());
    }
    return path;
}

double k0_steady_state(double i0, double delta, double g) {
    if (!(delta + g > 0.0)) throw NumericalError(kModule, "steady state needs delta + g > 0");
    return i0 / (delta + g);
}

double undepreciated_share(const CapitalPath& path, int from_year, int to_year) {
    if (from_year > to_year) throw UsageError(kModule, "from_year after to_year");
    const double k_from = path.at(from_year);
    const double k_to = path.at(to_year);
    return std::pow(1.0 - path.delta, to_year - from_year) * k_from / k_to;
}

double mincer_phi(double s) {
    if (!(s >= 0.0)) throw UsageError(kModule, "years of schooling must be non-negative");
    constexpr double kPrimary = 0.134;
    constexpr double kSecondary = 0.101;
    constexpr double kTertiary = 0.068;
    if (s <= 4.0) return kPrimary * s;
    if (s <= 8.0) return kPrimary * 4.0 + kSecondary * (s - 4.0);
    return kPrimary * 4.0 + kSecondary * 4.0 + kTertiary * (s - 8.0);
}

double mincer_hc(double s) { return std::exp(mincer_phi(s)); }

double initial_investment_growth(const InvestmentSeries& inv, int window) {
    const int span = std::min<int>(window, static_cast<int>(inv.values.size()) - 1);
    if (span < 1) return 0.0;
    const double first = inv.values.front();
    const double last = inv.values[static_cast<std::size_t>(span)];
    if (!(first > 0.0 && last > 0.0)) return 0.0;
    return std::expm1(std::log(last / first) / span);
}

std::map<std::string, InvestmentSeries> investment_from_table(const csv::Table& table,
                                                              const std::string& source) {
    const std::size_t c_code = table.require_column("countrycode");
    const std::size_t c_year = table.require_column("year");
    const std::size_t c_inv = table.require_column("investment");

    std::map<std::string, std::map<int, double>> raw;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const auto year = csv::parse_number(row[c_year]);
        const auto value = csv::parse_number(row[c_inv]);
        if (!year || std::floor(*year) != *year) {
            throw DataError(kModule, source + ": row " + std::to_string(r + 2) + ": bad year");
        }
        if (!value) continue;
        if (!raw[row[c_code]].emplace(static_cast<int>(*year), *value).second) {
            throw DataError(kModule, source + ": duplicate investment row for " + row[c_code]);
        }
    }
    std::map<std::string, InvestmentSeries> out;
    for (const auto& [code, by_year] : raw) {
        InvestmentSeries s{by_year.begin()->first, {}};
        int expected = s.base_year;
        for (const auto& [year, value] : by_year) {
            if (year != expected) {
                throw DataError(kModule, code + ": investment series has a gap at " +
                                             std::to_string(expected));
            }
            s.values.push_back(value);
            ++expected;
        }
        out.emplace(code, std::move(s));
    }
    return out;
}

UndepreciatedReport undepreciated_diagnostics(const std::map<std::string, InvestmentSeries>& series,
                                              const DiagnosticsConfig& cfg) {
    check_delta(cfg.delta);
    UndepreciatedReport report;
    std::map<int, std::pair<double, int>> sums;
    for (const auto& [code, full] : series) {
        if (full.base_year > cfg.base_year) {
            report.warnings.push_back(code + ": investment starts after " + std::to_string(cfg.base_year));
            continue;
        }
        InvestmentSeries inv{cfg.base_year,
                             {full.values.begin() + (cfg.base_year - full.base_year), full.values.end()}};
        bool covers = true;
        for (int y : cfg.years) covers = covers && y >= cfg.base_year && y <= inv.last_year();
        if (!covers) {
            report.warnings.push_back(code + ": investment does not cover the requested years");
            continue;
        }
        const double g = cfg.growth ? *cfg.growth : initial_investment_growth(inv);
        double k0 = 0.0;
        try {
            k0 = k0_steady_state(inv.values.front(), cfg.delta, g);
        } catch (const NumericalError&) {
            k0 = 0.0;
        }
        if (!(k0 > 0.0)) {
            report.warnings.push_back(code + ": no positive steady-state initial stock");
            continue;
        }
        const CapitalPath path = pim(inv, cfg.delta, k0);
        CountryShares row{code, {}};
        for (int y : cfg.years) {
            const double share = undepreciated_share(path, cfg.base_year, y);
            row.share_by_year[y] = share;
            auto& [sum, count] = sums[y];
            sum += share;
            ++count;
        }
        report.countries.push_back(std::move(row));
    }
    for (const auto& [year, sc] : sums) report.mean_by_year[year] = sc.first / sc.second;
    return report;
}

}  // namespace incgap::capital
