#include "incgap/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "incgap/capital.hpp"
#include "incgap/convergence.hpp"
#include "incgap/decomposition.hpp"
#include "incgap/error.hpp"

namespace incgap::cli {

namespace {

constexpr const char* kModule = "cli";
constexpr std::size_t kMaxWarningsShown = 20;

using json = nlohmann::json;

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(kModule, "cannot read '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

template <typename T>
T json_get(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw UsageError(kModule, std::string("bad value for key '") + key + "'");
    }
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* what) {
    if (!j.is_object()) throw UsageError(kModule, std::string(what) + " must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) ==
            allowed.end()) {
            throw UsageError(kModule, std::string("unknown ") + what + " key '" + key + "'");
        }
    }
}

oracle::LinearField linear_field(const json& j, oracle::LinearField f) {
    check_keys(j, {"level", "rank_slope", "trend", "rank_trend"}, "field");
    f.level = json_get(j, "level", f.level);
    f.rank_slope = json_get(j, "rank_slope", f.rank_slope);
    f.trend = json_get(j, "trend", f.trend);
    f.rank_trend = json_get(j, "rank_trend", f.rank_trend);
    return f;
}

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError(kModule, std::string(what) + " is not valid JSON: " + e.what());
    }
}

// Shared driver state for one invocation.
class Session {
public:
    Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    RunConfig cfg;

    void warn_all(const std::vector<std::string>& warnings) {
        for (std::size_t i = 0; i < warnings.size() && i < kMaxWarningsShown; ++i) {
            err_ << "incgap: warning: " << warnings[i] << '\n';
        }
        if (warnings.size() > kMaxWarningsShown) {
            err_ << "incgap: warning: ... " << warnings.size() - kMaxWarningsShown
                 << " more warnings\n";
        }
    }

    std::filesystem::path require_path(const std::optional<std::filesystem::path>& p,
                                       const char* flag, const char* file) {
        if (p) return *p;
        if (const char* dir = std::getenv(kDataDirEnv)) {
            auto candidate = std::filesystem::path(dir) / file;
            if (std::filesystem::exists(candidate)) return candidate;
        }
        throw UsageError(kModule, std::string("missing ") + flag + " (or set " + kDataDirEnv + ")");
    }

    std::optional<std::filesystem::path> oil_path() {
        if (cfg.oil) return cfg.oil;
        if (const char* dir = std::getenv(kDataDirEnv)) {
            auto candidate = std::filesystem::path(dir) / "oil.csv";
            if (std::filesystem::exists(candidate)) return candidate;
        }
        return std::nullopt;
    }

    const ingest::Panel& panel() {
        if (panel_) return *panel_;
        const auto pwt_path = require_path(cfg.pwt, "--pwt", "pwt.csv");
        const auto region_path = require_path(cfg.regions, "--regions", "regions.csv");
        for (const auto& p : {pwt_path, region_path}) {
            if (!std::filesystem::exists(p)) throw DataError(kModule, "missing data file '" + p.string() + "'");
        }
        const auto oil = oil_path();
        if (oil && !std::filesystem::exists(*oil)) {
            throw DataError(kModule, "missing data file '" + oil->string() + "'");
        }
        pwt_ = ingest::load_pwt(pwt_path);
        const auto regions = ingest::load_region_map(region_path);
        const auto rents = oil ? ingest::load_oil_rents(*oil) : ingest::OilRentSeries{};
        panel_.emplace(ingest::build_panel(pwt_->observations, regions, rents, cfg.filter));
        warn_all(pwt_->warnings);
        warn_all({panel_->warnings().begin(), panel_->warnings().end()});
        return *panel_;
    }

    std::size_t observation_count() const { return pwt_ ? pwt_->observations.size() : 0; }

    void emit(const report::ResultTable& table) {
        if (cfg.out) {
            std::ofstream file(*cfg.out, std::ios::binary);
            if (!file) throw DataError(kModule, "cannot write '" + cfg.out->string() + "'");
            report::render(table, cfg.format, file);
        } else {
            report::render(table, cfg.format, out_);
        }
    }

    void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
        std::ofstream file(path, std::ios::binary);
        if (!file) throw DataError(kModule, "cannot write '" + path.string() + "'");
        body(file);
    }

    std::ostream& out() { return out_; }

private:
    std::ostream& out_;
    std::ostream& err_;
    std::optional<ingest::PwtData> pwt_;
    std::optional<ingest::Panel> panel_;
};

ingest::CountryFilter sample_filter(const ingest::Panel& panel, const std::vector<int>& years,
                                    bool exclude_ssa, bool balanced) {
    ingest::CountryFilter filter;
    filter.exclude_ssa = exclude_ssa;
    if (balanced) {
        filter.restrict_to =
            ingest::balanced_countries(panel, years, ingest::VariableSet::decomposition(), filter);
    }
    return filter;
}

std::pair<double, double> parse_pair(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw UsageError(kModule, "--pair must look like 90:10");
    try {
        double a = std::stod(text.substr(0, colon));
        double b = std::stod(text.substr(colon + 1));
        if (a < b) std::swap(a, b);
        return {b, a};  // (p_lo, p_hi)
    } catch (const std::exception&) {
        throw UsageError(kModule, "--pair must look like 90:10");
    }
}

}  // namespace

void apply_config_json(RunConfig& cfg, const std::string& text) {
    const json j = parse_json(text, "config file");
    check_keys(j,
               {"pwt", "regions", "oil", "out", "format", "min_population_millions",
                "max_oil_rent_pct", "variance_exclusions", "income_measure", "grid_step",
                "variance_norm"},
               "config");
    if (j.contains("pwt")) cfg.pwt = json_get<std::string>(j, "pwt", "");
    if (j.contains("regions")) cfg.regions = json_get<std::string>(j, "regions", "");
    if (j.contains("oil")) cfg.oil = json_get<std::string>(j, "oil", "");
    if (j.contains("out")) cfg.out = json_get<std::string>(j, "out", "");
    if (j.contains("format")) cfg.format = report::parse_format(json_get<std::string>(j, "format", ""));
    cfg.filter.min_population_millions =
        json_get(j, "min_population_millions", cfg.filter.min_population_millions);
    cfg.filter.max_oil_rent_pct = json_get(j, "max_oil_rent_pct", cfg.filter.max_oil_rent_pct);
    cfg.filter.variance_exclusions = json_get(j, "variance_exclusions", cfg.filter.variance_exclusions);
    if (j.contains("income_measure")) {
        cfg.filter.income_measure = ingest::parse_income_measure(json_get<std::string>(j, "income_measure", ""));
    }
    cfg.grid_step = json_get(j, "grid_step", cfg.grid_step);
    if (j.contains("variance_norm")) {
        const auto norm = json_get<std::string>(j, "variance_norm", "");
        if (norm == "population") {
            cfg.variance_norm = stats::VarianceNorm::Population;
        } else if (norm == "sample") {
            cfg.variance_norm = stats::VarianceNorm::Sample;
        } else {
            throw UsageError(kModule, "variance_norm must be 'population' or 'sample'");
        }
    }
}

SynthRequest synth_request_from_json(const std::string& text) {
    const json j = parse_json(text, "synthetic spec");
    SynthRequest req;
    req.kind = json_get<std::string>(j, "kind", req.kind);
    if (req.kind == "growth") {
        check_keys(j, {"kind", "beta0", "beta", "s", "n", "sigma_eps", "seed", "t0", "ln_y0_lo", "ln_y0_hi"},
                   "growth spec");
        auto& g = req.growth;
        g.beta0 = json_get(j, "beta0", g.beta0);
        g.beta = json_get(j, "beta", g.beta);
        g.s = json_get(j, "s", g.s);
        g.n = json_get(j, "n", g.n);
        g.sigma_eps = json_get(j, "sigma_eps", g.sigma_eps);
        g.seed = json_get(j, "seed", g.seed);
        g.t0 = json_get(j, "t0", g.t0);
        g.ln_y0_lo = json_get(j, "ln_y0_lo", g.ln_y0_lo);
        g.ln_y0_hi = json_get(j, "ln_y0_hi", g.ln_y0_hi);
        return req;
    }
    if (req.kind != "accounting") throw UsageError(kModule, "synthetic spec kind must be accounting or growth");
    check_keys(j,
               {"kind", "n_countries", "years", "ln_a", "ln_ky", "ln_h", "alpha", "noise_sd", "seed",
                "pop_millions", "region", "pairs"},
               "accounting spec");
    auto& s = req.accounting;
    s.n_countries = json_get(j, "n_countries", s.n_countries);
    s.years = json_get(j, "years", s.years);
    if (j.contains("ln_a")) s.ln_a = linear_field(j["ln_a"], s.ln_a);
    if (j.contains("ln_ky")) s.ln_ky = linear_field(j["ln_ky"], s.ln_ky);
    if (j.contains("ln_h")) s.ln_h = linear_field(j["ln_h"], s.ln_h);
    if (j.contains("alpha")) {
        json a = j["alpha"];
        if (!a.is_object()) throw UsageError(kModule, "alpha must be a JSON object");
        s.alpha.hump = json_get(a, "hump", s.alpha.hump);
        a.erase("hump");
        s.alpha.linear = linear_field(a, s.alpha.linear);
    }
    s.noise_sd = json_get(j, "noise_sd", s.noise_sd);
    s.seed = json_get(j, "seed", s.seed);
    s.pop_millions = json_get(j, "pop_millions", s.pop_millions);
    s.region = json_get(j, "region", s.region);
    if (j.contains("pairs")) {
        s.pairs.clear();
        for (const auto& p : j["pairs"]) {
            if (!p.is_array() || p.size() != 2) throw UsageError(kModule, "pairs must be [lo, hi] arrays");
            s.pairs.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
    }
    s.validate();
    return req;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cross-country income convergence and growth-accounting toolkit", "incgap"};
    app.require_subcommand(1);
    app.fallthrough();

    Session session(out, err);

    // Common options; unset flags leave config-file values in place.
    std::string pwt, regions, oil, out_path, config_path, format, income_measure;
    double min_pop = 0.0;
    double max_oil = 0.0;
    double grid_step = 1.0;
    std::vector<std::string> variance_exclusions;
    bool sample_variance = false;

    auto* o_pwt = app.add_option("--pwt", pwt, "Penn World Table csv");
    auto* o_regions = app.add_option("--regions", regions, "Region map csv (countrycode,region)");
    auto* o_oil = app.add_option("--oil", oil, "Oil rents csv (countrycode,year,oil_rents_pct_gdp)");
    auto* o_out = app.add_option("--out", out_path, "Output file (report: output directory)");
    app.add_option("--config", config_path, "JSON config file");
    auto* o_format = app.add_option("--format", format, "csv, json or text");
    auto* o_income = app.add_option("--income-measure", income_measure, "rgdpo or rgdpe");
    auto* o_min_pop = app.add_option("--min-pop", min_pop, "Population threshold, millions");
    auto* o_max_oil = app.add_option("--max-oil", max_oil, "Oil-rent threshold, percent of GDP");
    auto* o_var_ex = app.add_option("--variance-exclusions", variance_exclusions,
                                    "Country codes dropped in variance-sensitive mode")
                         ->delimiter(',');
    auto* o_grid = app.add_option("--grid-step", grid_step, "Percentile grid step");
    auto* o_sample_var = app.add_flag("--sample-variance", sample_variance, "Use 1/(N-1) variances");

    // ingest
    auto* c_ingest = app.add_subcommand("ingest", "Load data, apply sample filters, report the panel");
    std::string exclusions_path;
    c_ingest->add_option("--exclusions", exclusions_path, "Write the exclusion ledger here");

    // beta
    auto* c_beta = app.add_subcommand("beta", "Beta-convergence regression");
    int t0 = 0;
    int t1 = 0;
    bool exclude_ssa = false;
    bool classical = false;
    c_beta->add_option("--t0", t0, "Initial year")->required();
    c_beta->add_option("--t1", t1, "Final year")->required();
    c_beta->add_flag("--exclude-ssa", exclude_ssa, "Drop Sub-Saharan Africa");
    c_beta->add_flag("--classical", classical, "Classical instead of HC1 standard errors");

    // sigma
    auto* c_sigma = app.add_subcommand("sigma", "Income dispersion table");
    std::vector<int> years;
    bool variance_sensitive = false;
    c_sigma->add_option("--years", years, "Comma-separated years")->delimiter(',')->required();
    c_sigma->add_flag("--exclude-ssa", exclude_ssa, "Drop Sub-Saharan Africa");
    c_sigma->add_flag("--variance-sensitive", variance_sensitive, "Drop variance exclusions");

    // decompose
    auto* c_dec = app.add_subcommand("decompose", "Percentile gap decomposition");
    std::string pair = "90:10";
    std::string alpha = "varying";
    std::string plot_data;
    bool unbalanced = false;
    c_dec->add_option("--pair", pair, "Percentile pair hi:lo")->capture_default_str();
    c_dec->add_option("--years", years, "Comma-separated years")->delimiter(',')->required();
    c_dec->add_option("--alpha", alpha, "varying or const:<value>")->capture_default_str();
    c_dec->add_flag("--exclude-ssa", exclude_ssa, "Drop Sub-Saharan Africa");
    c_dec->add_flag("--unbalanced", unbalanced, "Use every ready country per year");
    c_dec->add_option("--plot-data", plot_data, "Write per-year levels csv here");

    // vardecomp
    auto* c_var = app.add_subcommand("vardecomp", "Variance decomposition");
    double alpha_const = decomposition::kDefaultVarianceAlpha;
    bool per_worker = false;
    c_var->add_option("--years", years, "Comma-separated years")->delimiter(',')->required();
    c_var->add_option("--alpha-const", alpha_const, "Constant capital share")->capture_default_str();
    c_var->add_flag("--variance-sensitive", variance_sensitive, "Drop variance exclusions");
    c_var->add_flag("--exclude-ssa", exclude_ssa, "Drop Sub-Saharan Africa");
    c_var->add_flag("--per-worker", per_worker, "Income per person engaged (needs emp)");
    c_var->add_flag("--unbalanced", unbalanced, "Use every ready country per year");

    // regions
    auto* c_regions = app.add_subcommand("regions", "Population-weighted capital-output by region");
    c_regions->add_option("--years", years, "Comma-separated years")->delimiter(',')->required();

    // capital-diagnostics
    auto* c_cap = app.add_subcommand("capital-diagnostics", "Undepreciated initial-capital shares");
    std::string investment_path;
    capital::DiagnosticsConfig cap_cfg;
    double growth = 0.0;
    c_cap->add_option("--investment", investment_path, "csv: countrycode,year,investment")->required();
    c_cap->add_option("--delta", cap_cfg.delta, "Depreciation rate")->capture_default_str();
    c_cap->add_option("--base", cap_cfg.base_year, "Base year")->capture_default_str();
    auto* o_cap_years = c_cap->add_option("--years", years, "Comma-separated years")->delimiter(',');
    auto* o_growth = c_cap->add_option("--growth", growth, "Steady-state investment growth");

    // synth
    auto* c_synth = app.add_subcommand("synth", "Write a synthetic panel in the raw-file schema");
    std::string spec_path, regions_out, truth_out;
    c_synth->add_option("--spec", spec_path, "JSON synthetic spec")->required();
    c_synth->add_option("--regions-out", regions_out, "Also write a region map");
    c_synth->add_option("--truth-out", truth_out, "Also write analytic decompositions");

    // report
    auto* c_report = app.add_subcommand("report", "Run the full pipeline into --out");

    std::vector<std::string> argv_store = {"incgap"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return kExitOk;
        } catch (const CLI::ParseError& e) {
            err << "incgap: usage error: " << e.what() << '\n';
            return kExitUsage;
        }

        RunConfig& cfg = session.cfg;
        if (!config_path.empty()) apply_config_json(cfg, read_text(config_path));
        if (*o_pwt) cfg.pwt = pwt;
        if (*o_regions) cfg.regions = regions;
        if (*o_oil) cfg.oil = oil;
        if (*o_out) cfg.out = out_path;
        if (*o_format) cfg.format = report::parse_format(format);
        if (*o_income) cfg.filter.income_measure = ingest::parse_income_measure(income_measure);
        if (*o_min_pop) cfg.filter.min_population_millions = min_pop;
        if (*o_max_oil) cfg.filter.max_oil_rent_pct = max_oil;
        if (*o_var_ex) cfg.filter.variance_exclusions = variance_exclusions;
        if (*o_grid) cfg.grid_step = grid_step;
        if (*o_sample_var) cfg.variance_norm = stats::VarianceNorm::Sample;
        cfg.filter.validate();

        if (c_ingest->parsed()) {
            const auto& panel = session.panel();
            report::ResultTable t{"panel_summary", {"metric", "value"}, {}};
            auto add = [&](const char* k, std::size_t v) {
                t.rows.push_back({std::string(k), static_cast<long long>(v)});
            };
            add("observations", session.observation_count());
            add("countries", panel.countries().size());
            add("records", panel.records().size());
            add("excluded_countries", panel.exclusions().size());
            add("alpha_out_of_range", panel.alpha_out_of_range());
            add("warnings", panel.warnings().size());
            session.emit(t);
            if (!exclusions_path.empty()) {
                session.write_file(exclusions_path, [&](std::ostream& o) { ingest::write_exclusions(o, panel); });
            }
        } else if (c_beta->parsed()) {
            const auto& panel = session.panel();
            const auto sample = ingest::analysis_sample(panel, t0, t1, {ingest::Variable::Income}, exclude_ssa);
            const auto est = convergence::beta_convergence(sample, !classical);
            session.emit(report::beta_table({{exclude_ssa ? "outside-ssa" : "all", est}}));
        } else if (c_sigma->parsed()) {
            convergence::DispersionOptions opts{exclude_ssa, variance_sensitive, cfg.variance_norm};
            const auto rows = convergence::dispersion_table(session.panel(), years, opts);
            session.emit(report::dispersion_table(exclude_ssa ? "outside-ssa" : "all", rows));
        } else if (c_dec->parsed()) {
            const auto& panel = session.panel();
            const auto [p_lo, p_hi] = parse_pair(pair);
            const auto mode = decomposition::AlphaMode::parse(alpha);
            const auto filter = sample_filter(panel, years, exclude_ssa, !unbalanced);
            session.emit(report::decomposition_table(
                report::period_changes(panel, years, p_lo, p_hi, cfg.grid_step, mode, filter)));
            if (!plot_data.empty()) {
                const auto grid = decomposition::percentile_grid(p_lo, p_hi, cfg.grid_step);
                std::vector<decomposition::GapDecomposition> levels;
                for (int y : years) {
                    levels.push_back(decomposition::gap_decomposition(
                        decomposition::percentile_profile(panel, y, grid, filter), p_lo, p_hi, mode));
                }
                session.write_file(plot_data, [&](std::ostream& o) {
                    report::write_csv(report::gap_levels_table(levels), o);
                });
            }
        } else if (c_var->parsed()) {
            const auto& panel = session.panel();
            decomposition::VarianceOptions opts;
            opts.alpha_const = alpha_const;
            opts.variance_sensitive = variance_sensitive;
            opts.per_worker = per_worker;
            opts.norm = cfg.variance_norm;
            opts.filter = sample_filter(panel, years, exclude_ssa, !unbalanced);
            std::vector<decomposition::VarianceDecomposition> rows;
            for (int y : years) rows.push_back(decomposition::variance_decomposition(panel, y, opts));
            session.emit(report::variance_table(rows));
        } else if (c_regions->parsed()) {
            const auto& panel = session.panel();
            std::vector<decomposition::RegionalCapitalOutput> rows;
            for (int y : years) {
                rows.push_back(decomposition::regional_capital_output(panel, y));
                session.warn_all(rows.back().warnings);
            }
            session.emit(report::regional_table(rows));
        } else if (c_cap->parsed()) {
            if (*o_cap_years) cap_cfg.years = years;
            if (*o_growth) cap_cfg.growth = growth;
            const auto series = capital::investment_from_table(csv::read_file(investment_path), investment_path);
            const auto rep = capital::undepreciated_diagnostics(series, cap_cfg);
            session.warn_all(rep.warnings);
            session.emit(report::capital_table(rep, cap_cfg.years));
        } else if (c_synth->parsed()) {
            if (!cfg.out) throw UsageError(kModule, "synth needs --out");
            const auto req = synth_request_from_json(read_text(spec_path));
            std::vector<ingest::Observation> obs;
            std::vector<decomposition::GapDecomposition> truth;
            if (req.kind == "growth") {
                const auto sample = oracle::synth_growth_sample(req.growth);
                for (const auto& u : sample.units) {
                    for (const auto* rec : {&u.start, &u.end}) {
                        ingest::Observation o;
                        o.country_code = u.country_code;
                        o.year = rec->year;
                        o.pop = 1.0;
                        o.rgdpo = o.rgdpe = o.rgdpna = *rec->y;
                        o.rnna = 3.0 * *rec->y;
                        o.hc = 1.0;
                        o.labsh = 0.6;
                        obs.push_back(std::move(o));
                    }
                }
                std::stable_sort(obs.begin(), obs.end(), [](const auto& a, const auto& b) { return a.year < b.year; });
            } else {
                auto panel = oracle::synth_panel(req.accounting);
                obs = std::move(panel.observations);
                truth = std::move(panel.truth);
            }
            session.write_file(*cfg.out, [&](std::ostream& o) { oracle::write_pwt(o, obs); });
            if (!regions_out.empty()) {
                const std::string label = req.kind == "growth" ? "Synthetic" : req.accounting.region;
                session.write_file(regions_out, [&](std::ostream& o) { oracle::write_regions(o, obs, label); });
            }
            if (!truth_out.empty()) {
                session.write_file(truth_out, [&](std::ostream& o) {
                    report::write_csv(report::gap_levels_table(truth), o);
                });
            }
        } else if (c_report->parsed()) {
            if (!cfg.out) throw UsageError(kModule, "report needs --out <directory>");
            report::PipelineConfig pc;
            pc.pwt = session.require_path(cfg.pwt, "--pwt", "pwt.csv");
            pc.regions = session.require_path(cfg.regions, "--regions", "regions.csv");
            pc.oil = session.oil_path();
            for (const auto& p : {pc.pwt, pc.regions}) {
                if (!std::filesystem::exists(p)) throw DataError(kModule, "missing data file '" + p.string() + "'");
            }
            if (pc.oil && !std::filesystem::exists(*pc.oil)) {
                throw DataError(kModule, "missing data file '" + pc.oil->string() + "'");
            }
            pc.filter = cfg.filter;
            pc.grid_step = cfg.grid_step;
            pc.variance_norm = cfg.variance_norm;
            pc.format = *o_format ? cfg.format : report::Format::Csv;
            const auto result = report::run_pipeline(pc, *cfg.out);
            session.warn_all(result.warnings);
            report::ResultTable t{"artifacts", {"file", "rows"}, {}};
            for (const auto& a : result.artifacts) {
                t.rows.push_back({a.file, static_cast<long long>(a.rows)});
            }
            report::write_text(t, out);
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "incgap: error: " << e.what() << '\n';
        switch (e.kind()) {
            case ErrorKind::Usage: return kExitUsage;
            case ErrorKind::Data: return kExitData;
            case ErrorKind::Numerical: return kExitNumerical;
        }
        return kExitData;
    } catch (const std::exception& e) {
        err << "incgap: error: " << e.what() << '\n';
        return kExitData;
    }
}

}  // namespace incgap::cli
