#include "incgap/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <tuple>

#include "incgap/error.hpp"

namespace incgap::ingest {

namespace {

constexpr const char* kModule = "ingest";

std::string where(const std::string& source, std::size_t row) {
    // +2: one for the header, one for 1-based line numbers.
    return source + ":" + std::to_string(row + 2);
}

std::optional<double> numeric_cell(const std::vector<std::string>& row, std::size_t col,
                                   const std::string& location, std::string_view name) {
    try {
        return csv::parse_number(row[col]);
    } catch (const DataError&) {
        throw DataError(kModule, location + ": column '" + std::string(name) +
                                     "' is not numeric: '" + row[col] + "'");
    }
}

void require_positive(const std::optional<double>& v, std::string_view name,
                      const std::string& location) {
    if (v && !(*v > 0.0)) {
        throw DataError(kModule, location + ": " + std::string(name) + " must be positive, got " +
                                     csv::format_full(*v));
    }
}

}  // namespace

PwtData observations_from_table(const csv::Table& table, const PwtSchema& schema,
                                const std::string& source) {
    auto col = [&](const std::string& name) {
        if (auto idx = table.column(name)) return *idx;
        throw DataError(kModule, source + ": missing column '" + name + "'");
    };
    const std::size_t c_code = col(schema.countrycode);
    const std::size_t c_year = col(schema.year);
    const std::size_t c_rgdpo = col(schema.rgdpo);
    const std::size_t c_rgdpe = col(schema.rgdpe);
    const std::size_t c_rgdpna = col(schema.rgdpna);
    const std::size_t c_rnna = col(schema.rnna);
    const std::size_t c_pop = col(schema.pop);
    const std::size_t c_hc = col(schema.hc);
    const std::size_t c_labsh = col(schema.labsh);
    const std::optional<std::size_t> c_emp = table.column(schema.emp);

    PwtData data;
    data.observations.reserve(table.rows.size());
    std::set<std::pair<std::string, int>> seen;

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::string loc = where(source, r);

        Observation obs;
        obs.country_code = row[c_code];
        if (obs.country_code.empty()) throw DataError(kModule, loc + ": empty country code");

        const auto year = numeric_cell(row, c_year, loc, schema.year);
        if (!year || std::floor(*year) != *year) {
            throw DataError(kModule, loc + ": year must be an integer");
        }
        if (*year < kMinYear || *year > kMaxYear) {
            throw DataError(kModule, loc + ": year " + row[c_year] + " outside [" +
                                         std::to_string(kMinYear) + ", " +
                                         std::to_string(kMaxYear) + "]");
        }
        obs.year = static_cast<int>(*year);

        obs.rgdpo = numeric_cell(row, c_rgdpo, loc, schema.rgdpo);
        obs.rgdpe = numeric_cell(row, c_rgdpe, loc, schema.rgdpe);
        obs.rgdpna = numeric_cell(row, c_rgdpna, loc, schema.rgdpna);
        obs.rnna = numeric_cell(row, c_rnna, loc, schema.rnna);
        obs.pop = numeric_cell(row, c_pop, loc, schema.pop);
        obs.hc = numeric_cell(row, c_hc, loc, schema.hc);
        obs.labsh = numeric_cell(row, c_labsh, loc, schema.labsh);
        if (c_emp) obs.emp = numeric_cell(row, *c_emp, loc, schema.emp);

        require_positive(obs.rgdpo, schema.rgdpo, loc);
        require_positive(obs.rgdpe, schema.rgdpe, loc);
        require_positive(obs.rgdpna, schema.rgdpna, loc);
        require_positive(obs.rnna, schema.rnna, loc);
        require_positive(obs.pop, schema.pop, loc);
        require_positive(obs.hc, schema.hc, loc);
        if (obs.emp && !(*obs.emp > 0.0)) obs.emp.reset();

        if (obs.labsh && !(*obs.labsh > 0.0 && *obs.labsh < 1.0)) {
            ++data.labsh_out_of_range;
            data.warnings.push_back(loc + ": labsh " + csv::format_full(*obs.labsh) + " for " +
                                    obs.country_code + " " + std::to_string(obs.year) +
                                    " outside (0, 1)");
        }

        if (!seen.emplace(obs.country_code, obs.year).second) {
            throw DataError(kModule, loc + ": duplicate row for (" + obs.country_code + ", " +
                                         std::to_string(obs.year) + ")");
        }
        data.observations.push_back(std::move(obs));
    }
    return data;
}

PwtData load_pwt(const std::filesystem::path& path, const PwtSchema& schema) {
    return observations_from_table(csv::read_file(path), schema, path.string());
}

void RegionMap::add(const std::string& code, RegionInfo info) {
    auto [it, inserted] = entries_.try_emplace(code, info);
    if (!inserted && it->second.region != info.region) {
        throw DataError(kModule, "region map: code " + code + " assigned to both '" +
                                     it->second.region + "' and '" + info.region + "'");
    }
}

const RegionInfo* RegionMap::find(std::string_view code) const {
    auto it = entries_.find(code);
    return it == entries_.end() ? nullptr : &it->second;
}

std::string RegionMap::region_of(std::string_view code) const {
    const auto* info = find(code);
    return info ? info->region : std::string(kUnknownRegion);
}

RegionMap region_map_from_table(const csv::Table& table, const std::string& source) {
    if (table.header.size() < 2) {
        throw DataError(kModule, source + ": region map needs at least two columns");
    }
    const std::size_t c_code = table.column("countrycode").value_or(0);
    const std::size_t c_region = table.column("region").value_or(1);
    const auto c_income = table.column("income_group");

    RegionMap map;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row[c_code].empty() || row[c_region].empty()) {
            throw DataError(kModule, where(source, r) + ": empty code or region");
        }
        map.add(row[c_code], {row[c_region], c_income ? row[*c_income] : std::string{}});
    }
    return map;
}

RegionMap load_region_map(const std::filesystem::path& path) {
    return region_map_from_table(csv::read_file(path), path.string());
}

void OilRentSeries::set(const std::string& code, int year, double pct) {
    if (!(pct >= 0.0)) {
        throw DataError(kModule, "oil rents for " + code + " " + std::to_string(year) +
                                     " must be non-negative");
    }
    values_[{code, year}] = pct;
}

std::optional<double> OilRentSeries::at(std::string_view code, int year) const {
    auto it = values_.find(std::pair<std::string, int>{std::string(code), year});
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

OilRentSeries oil_rents_from_table(const csv::Table& table, const std::string& source) {
    const std::size_t c_code = table.require_column("countrycode");
    const std::size_t c_year = table.require_column("year");
    const std::size_t c_pct = table.require_column("oil_rents_pct_gdp");
    OilRentSeries oil;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::string loc = where(source, r);
        const auto year = numeric_cell(row, c_year, loc, "year");
        if (!year || std::floor(*year) != *year) {
            throw DataError(kModule, loc + ": year must be an integer");
        }
        const auto pct = numeric_cell(row, c_pct, loc, "oil_rents_pct_gdp");
        if (!pct) continue;  // blank cell: same as absent
        oil.set(row[c_code], static_cast<int>(*year), *pct);
    }
    return oil;
}

OilRentSeries load_oil_rents(const std::filesystem::path& path) {
    return oil_rents_from_table(csv::read_file(path), path.string());
}

std::string_view to_string(IncomeMeasure m) {
    return m == IncomeMeasure::OutputSide ? "rgdpo" : "rgdpe";
}

IncomeMeasure parse_income_measure(std::string_view text) {
    if (text == "rgdpo" || text == "output-side") return IncomeMeasure::OutputSide;
    if (text == "rgdpe" || text == "expenditure-side") return IncomeMeasure::ExpenditureSide;
    throw UsageError(kModule, "unknown income measure '" + std::string(text) + "'");
}

void FilterConfig::validate() const {
    if (!(min_population_millions > 0.0)) {
        throw UsageError(kModule, "min_population_millions must be positive");
    }
    if (!(max_oil_rent_pct > 0.0)) throw UsageError(kModule, "max_oil_rent_pct must be positive");
}

Panel::Panel(std::vector<PanelRecord> records, std::vector<Exclusion> exclusions,
             FilterConfig config, std::vector<std::string> warnings,
             std::size_t alpha_out_of_range)
    : records_(std::move(records)),
      exclusions_(std::move(exclusions)),
      config_(std::move(config)),
      warnings_(std::move(warnings)),
      alpha_out_of_range_(alpha_out_of_range) {
    std::sort(records_.begin(), records_.end(), [](const auto& a, const auto& b) {
        return std::tie(a.country_code, a.year) < std::tie(b.country_code, b.year);
    });
}

const PanelRecord* Panel::find(std::string_view code, int year) const {
    auto it = std::lower_bound(records_.begin(), records_.end(), std::pair{code, year},
                               [](const PanelRecord& r, const auto& key) {
                                   return std::pair<std::string_view, int>{r.country_code,
                                                                           r.year} < key;
                               });
    if (it == records_.end() || it->country_code != code || it->year != year) return nullptr;
    return &*it;
}

std::vector<std::string> Panel::countries() const {
    std::vector<std::string> out;
    for (const auto& r : records_) {
        if (out.empty() || out.back() != r.country_code) out.push_back(r.country_code);
    }
    return out;
}

std::vector<const PanelRecord*> Panel::records_in_year(int year) const {
    std::vector<const PanelRecord*> out;
    for (const auto& r : records_) {
        if (r.year == year) out.push_back(&r);
    }
    return out;
}

Panel build_panel(std::span<const Observation> observations, const RegionMap& regions,
                  const OilRentSeries& oil, const FilterConfig& cfg) {
    cfg.validate();

    std::map<std::string, std::vector<const Observation*>> by_country;
    for (const auto& obs : observations) by_country[obs.country_code].push_back(&obs);

    std::vector<std::string> warnings;
    if (oil.empty()) warnings.push_back("no oil-rent data supplied; oil-rent filter is inactive");

    std::vector<PanelRecord> records;
    std::vector<Exclusion> exclusions;
    std::size_t alpha_bad = 0;

    for (const auto& [code, rows] : by_country) {
        // Filters look at every observed year, not only analysis windows.
        double max_pop = 0.0;
        double max_oil = 0.0;
        std::size_t oil_missing = 0;
        for (const auto* o : rows) {
            if (o->pop) max_pop = std::max(max_pop, *o->pop);
            if (const auto pct = oil.at(code, o->year)) {
                max_oil = std::max(max_oil, *pct);
            } else {
                ++oil_missing;
            }
        }
        if (max_pop <= cfg.min_population_millions) {
            exclusions.push_back({code, std::string(kReasonSmallPopulation)});
            continue;
        }
        if (max_oil > cfg.max_oil_rent_pct) {
            exclusions.push_back({code, std::string(kReasonOilRents)});
            continue;
        }
        if (!oil.empty() && oil_missing > 0) {
            warnings.push_back("oil rents missing for " + std::to_string(oil_missing) +
                               " country-years of " + code + "; treated as 0");
        }

        const RegionInfo* info = regions.find(code);
        if (!info) warnings.push_back("country " + code + " not in region map; using " +
                                      std::string(kUnknownRegion));

        for (const auto* o : rows) {
            PanelRecord rec;
            rec.country_code = code;
            rec.year = o->year;
            rec.region = info ? info->region : std::string(kUnknownRegion);
            rec.income_group = info ? info->income_group : std::string{};
            rec.pop = o->pop;

            const auto& gdp = cfg.income_measure == IncomeMeasure::OutputSide ? o->rgdpo : o->rgdpe;
            if (gdp && o->pop) rec.y = *gdp / *o->pop;
            if (gdp && o->emp) rec.y_per_worker = *gdp / *o->emp;
            if (o->rnna && o->rgdpna) rec.ky = *o->rnna / *o->rgdpna;
            if (o->hc) {
                if (*o->hc >= 1.0) {
                    rec.h = o->hc;
                } else {
                    warnings.push_back("hc below 1 for " + code + " " + std::to_string(o->year) +
                                       "; treated as missing");
                }
            }
            if (o->labsh) {
                rec.alpha = 1.0 - *o->labsh;
                if (!rec.alpha_in_unit_interval()) ++alpha_bad;
            }
            records.push_back(std::move(rec));
        }
    }

    if (records.empty()) throw DataError(kModule, "no observations left after sample filters");
    return Panel(std::move(records), std::move(exclusions), cfg, std::move(warnings), alpha_bad);
}

void write_exclusions(std::ostream& out, const Panel& panel) {
    csv::write_row(out, {"countrycode", "reason"});
    for (const auto& e : panel.exclusions()) csv::write_row(out, {e.country_code, e.reason});
}

bool VariableSet::satisfied_by(const PanelRecord& r) const {
    if (contains(Variable::Income) && !r.y) return false;
    if (contains(Variable::CapitalOutput) && !r.ky) return false;
    if (contains(Variable::HumanCapital) && !r.h) return false;
    if (contains(Variable::CapitalShare) && !r.alpha_in_unit_interval()) return false;
    return true;
}

bool CountryFilter::admits(const PanelRecord& r) const {
    if (exclude_ssa && r.region == kSubSaharanAfrica) return false;
    if (exclude_codes.contains(r.country_code)) return false;
    if (restrict_to && !restrict_to->contains(r.country_code)) return false;
    return true;
}

AnalysisSample analysis_sample(const Panel& panel, int t0, int t1, VariableSet required,
                               bool exclude_ssa) {
    if (t0 >= t1) {
        throw UsageError(kModule, "analysis sample needs t0 < t1, got " + std::to_string(t0) +
                                      " and " + std::to_string(t1));
    }
    AnalysisSample sample{t0, t1, {}};
    for (const auto& code : panel.countries()) {
        const auto* a = panel.find(code, t0);
        const auto* b = panel.find(code, t1);
        if (!a || !b) continue;
        if (exclude_ssa && a->region == kSubSaharanAfrica) continue;
        if (!required.satisfied_by(*a) || !required.satisfied_by(*b)) continue;
        sample.units.push_back({code, a->region, *a, *b});
    }
    if (sample.units.empty()) {
        throw DataError(kModule, "empty analysis sample for " + std::to_string(t0) + "-" +
                                     std::to_string(t1));
    }
    return sample;
}

std::set<std::string, std::less<>> balanced_countries(const Panel& panel,
                                                      std::span<const int> years,
                                                      VariableSet required,
                                                      const CountryFilter& filter) {
    std::set<std::string, std::less<>> out;
    for (const auto& code : panel.countries()) {
        bool ok = true;
        for (int year : years) {
            const auto* r = panel.find(code, year);
            if (!r || !filter.admits(*r) || !required.satisfied_by(*r)) {
                ok = false;
                break;
            }
        }
        if (ok) out.insert(code);
    }
    return out;
}

}  // namespace incgap::ingest
