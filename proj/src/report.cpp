#include "incgap/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "incgap/csv.hpp"
#include "incgap/error.hpp"

namespace incgap::report {

namespace {

constexpr const char* kModule = "report";

using json = nlohmann::ordered_json;

std::string cell_text(const Cell& c, bool full) {
    struct Visitor {
        bool full;
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(double v) const {
            if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
            return full ? csv::format_full(v) : csv::format_short(v);
        }
    };
    return std::visit(Visitor{full}, c);
}

json cell_json(const Cell& c) {
    struct Visitor {
        json operator()(std::monostate) const { return nullptr; }
        json operator()(const std::string& s) const { return s; }
        json operator()(long long v) const { return v; }
        json operator()(double v) const { return std::isfinite(v) ? json(v) : json(nullptr); }
    };
    return std::visit(Visitor{}, c);
}

Cell share(double part, double total) {
    if (total == 0.0) return std::monostate{};
    return part / total;
}

std::string read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(kModule, "cannot read '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

Format parse_format(std::string_view text) {
    if (text == "csv") return Format::Csv;
    if (text == "json") return Format::Json;
    if (text == "text") return Format::Text;
    throw UsageError(kModule, "format must be csv, json or text, got '" + std::string(text) + "'");
}

std::string_view to_string(Format f) {
    switch (f) {
        case Format::Csv: return "csv";
        case Format::Json: return "json";
        case Format::Text: return "text";
    }
    return "csv";
}

std::string_view extension(Format f) { return f == Format::Text ? "txt" : to_string(f); }

void write_csv(const ResultTable& table, std::ostream& out) {
    csv::write_row(out, table.columns);
    std::vector<std::string> fields;
    for (const auto& row : table.rows) {
        fields.clear();
        for (const auto& c : row) fields.push_back(cell_text(c, true));
        csv::write_row(out, fields);
    }
}

void write_json(const ResultTable& table, std::ostream& out) {
    json rows = json::array();
    for (const auto& row : table.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < table.columns.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(obj));
    }
    json doc = {{"table", table.name}, {"rows", std::move(rows)}};
    out << doc.dump(2) << '\n';
}

void write_text(const ResultTable& table, std::ostream& out) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width(table.columns.size());
    for (std::size_t i = 0; i < table.columns.size(); ++i) width[i] = table.columns[i].size();
    for (const auto& row : table.rows) {
        auto& texts = cells.emplace_back();
        for (std::size_t i = 0; i < row.size(); ++i) {
            texts.push_back(cell_text(row[i], false));
            width[i] = std::max(width[i], texts.back().size());
        }
    }
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out << "  ";
            out << std::setw(static_cast<int>(width[i])) << fields[i];
        }
        out << '\n';
    };
    if (!table.name.empty()) out << "# " << table.name << '\n';
    line(table.columns);
    for (const auto& texts : cells) line(texts);
}

void render(const ResultTable& table, Format format, std::ostream& out) {
    switch (format) {
        case Format::Csv: write_csv(table, out); break;
        case Format::Json: write_json(table, out); break;
        case Format::Text: write_text(table, out); break;
    }
}

ResultTable beta_table(const std::vector<LabeledBeta>& estimates) {
    ResultTable t{"beta_convergence",
                  {"sample", "t0", "t1", "n", "beta", "se_beta", "beta0", "se_beta0", "se_type",
                   "half_life", "ssr", "converged"},
                  {}};
    for (const auto& [sample, e] : estimates) {
        Cell hl = std::monostate{};
        if (e.beta < 0.0) {
            try {
                hl = convergence::half_life(e.beta, e.s);
            } catch (const Error&) {
                hl = std::monostate{};
            }
        }
        t.rows.push_back({sample, static_cast<long long>(e.t0), static_cast<long long>(e.t1),
                          static_cast<long long>(e.n), e.beta, e.se_beta, e.beta0, e.se_beta0,
                          std::string(e.robust ? "HC1" : "classical"), hl, e.ssr,
                          std::string(e.converged ? "yes" : "no")});
    }
    return t;
}

ResultTable dispersion_table(const std::string& sample,
                             const std::vector<convergence::DispersionRow>& rows) {
    ResultTable t{"income_dispersion",
                  {"sample", "year", "n", "p90_p10", "p90_p50", "p50_p10", "var_log", "income_ratio"},
                  {}};
    for (const auto& r : rows) {
        t.rows.push_back({sample, static_cast<long long>(r.year), static_cast<long long>(r.n),
                          r.p90_p10, r.p90_p50, r.p50_p10, r.var_log, r.income_ratio});
    }
    return t;
}

ResultTable decomposition_table(const std::vector<decomposition::DecompositionChange>& changes) {
    ResultTable t{"gap_decomposition_changes",
                  {"year1", "year2", "p_hi", "p_lo", "alpha_mode", "delta_total", "delta_tfp",
                   "delta_ky", "delta_h", "share_tfp", "share_ky", "share_h"},
                  {}};
    for (const auto& c : changes) {
        t.rows.push_back({static_cast<long long>(c.year1), static_cast<long long>(c.year2), c.p_hi,
                          c.p_lo, c.alpha_mode.label(), c.delta_total, c.delta_tfp, c.delta_ky,
                          c.delta_h, share(c.delta_tfp, c.delta_total),
                          share(c.delta_ky, c.delta_total), share(c.delta_h, c.delta_total)});
    }
    return t;
}

ResultTable gap_levels_table(const std::vector<decomposition::GapDecomposition>& levels) {
    ResultTable t{"gap_decomposition_levels",
                  {"year", "p_hi", "p_lo", "alpha_mode", "total", "contrib_tfp", "contrib_ky",
                   "contrib_h"},
                  {}};
    for (const auto& g : levels) {
        t.rows.push_back({static_cast<long long>(g.year), g.p_hi, g.p_lo, g.alpha_mode.label(),
                          g.total, g.contrib_tfp, g.contrib_ky, g.contrib_h});
    }
    return t;
}

ResultTable variance_table(const std::vector<decomposition::VarianceDecomposition>& rows) {
    ResultTable t{"variance_decomposition",
                  {"year", "n", "alpha_const", "var_ln_y", "var_ln_a", "var_ln_ykh", "cov_term",
                   "pct_change_var_ln_y"},
                  {}};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& v = rows[i];
        Cell change = std::monostate{};
        if (i > 0) change = 100.0 * (v.var_ln_y / rows[i - 1].var_ln_y - 1.0);
        t.rows.push_back({static_cast<long long>(v.year), static_cast<long long>(v.n), v.alpha_const,
                          v.var_ln_y, v.var_ln_a, v.var_ln_ykh, v.cov_term, change});
    }
    return t;
}

ResultTable regional_table(const std::vector<decomposition::RegionalCapitalOutput>& rows) {
    ResultTable t{"regional_capital_output", {"region", "year", "weighted_ky"}, {}};
    for (const auto& r : rows) {
        for (const auto& [region, ky] : r.weighted_ky) {
            t.rows.push_back({region, static_cast<long long>(r.year), ky});
        }
    }
    std::stable_sort(t.rows.begin(), t.rows.end(), [](const auto& a, const auto& b) {
        return std::get<std::string>(a[0]) < std::get<std::string>(b[0]);
    });
    return t;
}

ResultTable capital_table(const capital::UndepreciatedReport& rep, const std::vector<int>& years) {
    ResultTable t{"undepreciated_capital_share", {"countrycode", "year", "share"}, {}};
    for (const auto& c : rep.countries) {
        for (int y : years) t.rows.push_back({c.country_code, static_cast<long long>(y), c.share_by_year.at(y)});
    }
    for (const auto& [year, mean] : rep.mean_by_year) {
        t.rows.push_back({std::string("MEAN"), static_cast<long long>(year), mean});
    }
    return t;
}

ResultTable exclusion_table(const ingest::Panel& panel) {
    ResultTable t{"exclusions", {"countrycode", "reason"}, {}};
    for (const auto& e : panel.exclusions()) t.rows.push_back({e.country_code, e.reason});
    return t;
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    std::ostringstream s;
    s << std::hex << std::setw(16) << std::setfill('0') << v;
    return s.str();
}

std::string PipelineConfig::canonical_json() const {
    json j;
    j["pwt"] = pwt.string();
    j["regions"] = regions.string();
    j["oil"] = oil ? json(oil->string()) : json(nullptr);
    j["min_population_millions"] = filter.min_population_millions;
    j["max_oil_rent_pct"] = filter.max_oil_rent_pct;
    j["variance_exclusions"] = filter.variance_exclusions;
    j["income_measure"] = std::string(ingest::to_string(filter.income_measure));
    j["years"] = years;
    j["decomposition_years"] = decomposition_years;
    json periods = json::array();
    for (const auto& [a, b] : beta_periods) periods.push_back({a, b});
    j["beta_periods"] = periods;
    j["grid_step"] = grid_step;
    j["constant_alpha"] = constant_alpha;
    j["variance_alpha"] = variance_alpha;
    j["variance_norm"] = variance_norm == stats::VarianceNorm::Population ? "population" : "sample";
    j["balanced_decomposition"] = balanced_decomposition;
    j["format"] = std::string(to_string(format));
    return j.dump();
}

std::vector<decomposition::DecompositionChange> period_changes(
    const ingest::Panel& panel, const std::vector<int>& years, double p_lo, double p_hi,
    double grid_step, const decomposition::AlphaMode& mode, const ingest::CountryFilter& filter) {
    if (years.size() < 2) throw UsageError(kModule, "need at least two years for period changes");
    const auto grid = decomposition::percentile_grid(p_lo, p_hi, grid_step);
    std::vector<decomposition::GapDecomposition> gaps;
    for (int y : years) {
        gaps.push_back(decomposition::gap_decomposition(
            decomposition::percentile_profile(panel, y, grid, filter), p_lo, p_hi, mode));
    }
    std::vector<decomposition::DecompositionChange> out;
    for (std::size_t i = 1; i < gaps.size(); ++i) out.push_back(decomposition::difference(gaps[i - 1], gaps[i]));
    if (gaps.size() > 2) out.push_back(decomposition::difference(gaps.front(), gaps.back()));
    return out;
}

PipelineResult run_pipeline(const PipelineConfig& cfg, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    PipelineResult result;

    const auto pwt = ingest::load_pwt(cfg.pwt);
    const auto regions = ingest::load_region_map(cfg.regions);
    const auto oil = cfg.oil ? ingest::load_oil_rents(*cfg.oil) : ingest::OilRentSeries{};
    const auto panel = ingest::build_panel(pwt.observations, regions, oil, cfg.filter);
    result.warnings = pwt.warnings;
    result.warnings.insert(result.warnings.end(), panel.warnings().begin(), panel.warnings().end());

    const std::string ext(extension(cfg.format));
    auto emit = [&](const std::string& stem, const ResultTable& table) {
        const std::string file = stem + "." + ext;
        std::ofstream out(out_dir / file, std::ios::binary);
        if (!out) throw DataError(kModule, "cannot write '" + (out_dir / file).string() + "'");
        render(table, cfg.format, out);
        result.artifacts.push_back({file, table.rows.size()});
    };

    // Beta convergence.
    std::vector<LabeledBeta> betas;
    for (bool ex_ssa : {false, true}) {
        for (const auto& [t0, t1] : cfg.beta_periods) {
            const auto sample = ingest::analysis_sample(panel, t0, t1, {ingest::Variable::Income}, ex_ssa);
            betas.push_back({ex_ssa ? "outside-ssa" : "all", convergence::beta_convergence(sample)});
        }
    }
    emit("table1_beta", beta_table(betas));

    // Dispersion.
    for (bool ex_ssa : {true, false}) {
        convergence::DispersionOptions opts;
        opts.exclude_ssa = ex_ssa;
        opts.norm = cfg.variance_norm;
        const auto label = ex_ssa ? std::string("outside-ssa") : std::string("all");
        emit("table2_dispersion_" + std::string(ex_ssa ? "outside_ssa" : "all"),
             dispersion_table(label, convergence::dispersion_table(panel, cfg.years, opts)));
    }

    // Percentile decompositions and variance decompositions per sample.
    const std::vector<std::pair<double, double>> pairs = {{10, 90}, {50, 90}, {10, 50}};
    std::vector<decomposition::GapDecomposition> levels;
    for (bool ex_ssa : {true, false}) {
        ingest::CountryFilter filter;
        filter.exclude_ssa = ex_ssa;
        if (cfg.balanced_decomposition) {
            filter.restrict_to = ingest::balanced_countries(
                panel, cfg.decomposition_years, ingest::VariableSet::decomposition(), filter);
        }
        const std::string tag = ex_ssa ? "outside_ssa" : "all";
        for (const auto& mode : {decomposition::AlphaMode::varying(),
                                 decomposition::AlphaMode::fixed(cfg.constant_alpha)}) {
            std::vector<decomposition::DecompositionChange> changes;
            for (const auto& [lo, hi] : pairs) {
                auto c = period_changes(panel, cfg.decomposition_years, lo, hi, cfg.grid_step, mode, filter);
                changes.insert(changes.end(), c.begin(), c.end());
                const auto grid = decomposition::percentile_grid(lo, hi, cfg.grid_step);
                for (int y : cfg.decomposition_years) {
                    levels.push_back(decomposition::gap_decomposition(
                        decomposition::percentile_profile(panel, y, grid, filter), lo, hi, mode));
                }
            }
            emit("decomposition_" + tag + "_" + (mode.is_varying() ? "varying" : "constant"),
                 decomposition_table(changes));
        }
        emit("gap_levels_" + tag, gap_levels_table(levels));
        levels.clear();

        decomposition::VarianceOptions vopts;
        vopts.alpha_const = cfg.variance_alpha;
        vopts.variance_sensitive = true;
        vopts.norm = cfg.variance_norm;
        vopts.filter = filter;
        std::vector<decomposition::VarianceDecomposition> vrows;
        for (int y : cfg.decomposition_years) vrows.push_back(decomposition::variance_decomposition(panel, y, vopts));
        emit("variance_decomposition_" + tag, variance_table(vrows));
    }

    std::vector<decomposition::RegionalCapitalOutput> regional;
    for (int y = cfg.years.front(); y <= cfg.years.back(); ++y) {
        regional.push_back(decomposition::regional_capital_output(panel, y));
        for (auto& w : regional.back().warnings) result.warnings.push_back(std::move(w));
    }
    emit("regional_capital_output", regional_table(regional));
    emit("exclusions", exclusion_table(panel));

    json manifest;
    manifest["tool"] = "incgap";
    manifest["config"] = json::parse(cfg.canonical_json());
    manifest["config_hash"] = hex64(fnv1a(cfg.canonical_json()));
    json inputs = json::array();
    std::vector<std::filesystem::path> input_paths = {cfg.pwt, cfg.regions};
    if (cfg.oil) input_paths.push_back(*cfg.oil);
    for (const auto& p : input_paths) {
        const std::string bytes = read_bytes(p);
        inputs.push_back({{"path", p.string()}, {"bytes", bytes.size()}, {"fnv1a", hex64(fnv1a(bytes))}});
    }
    manifest["inputs"] = inputs;
    manifest["panel"] = {{"countries", panel.countries().size()},
                         {"records", panel.records().size()},
                         {"excluded", panel.exclusions().size()},
                         {"alpha_out_of_range", panel.alpha_out_of_range()}};
    json artifacts = json::array();
    for (const auto& a : result.artifacts) {
        artifacts.push_back({{"file", a.file}, {"rows", a.rows},
                             {"fnv1a", hex64(fnv1a(read_bytes(out_dir / a.file)))}});
    }
    manifest["artifacts"] = artifacts;
    {
        std::ofstream out(out_dir / "manifest.json", std::ios::binary);
        out << manifest.dump(2) << '\n';
    }
    result.artifacts.push_back({"manifest.json", 0});
    return result;
}

}  // namespace incgap::report
