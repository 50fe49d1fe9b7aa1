#include "incgap/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "incgap/csv.hpp"
#include "incgap/error.hpp"

namespace incgap::oracle {

namespace {

constexpr const char* kModule = "oracle";

double odds(double alpha) { return alpha / (1.0 - alpha); }

}  // namespace

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double LinearField::at(double p, double t) const {
    const double q = p / 100.0;
    return level + rank_slope * q + trend * t + rank_trend * q * t;
}

double LinearField::dp(double /*p*/, double t) const { return (rank_slope + rank_trend * t) / 100.0; }

double AlphaField::at(double p, double t) const {
    const double q = p / 100.0;
    return linear.at(p, t) + hump * q * (1.0 - q);
}

bool AlphaField::is_constant() const {
    return linear.rank_slope == 0.0 && linear.rank_trend == 0.0 && hump == 0.0;
}

void SyntheticSpec::validate() const {
    if (n_countries < 3) throw UsageError(kModule, "synthetic spec needs at least 3 countries");
    if (years.empty()) throw UsageError(kModule, "synthetic spec needs at least one year");
    for (std::size_t i = 1; i < years.size(); ++i) {
        if (years[i] <= years[i - 1]) throw UsageError(kModule, "synthetic years must increase");
    }
    if (years.front() < ingest::kMinYear || years.back() > ingest::kMaxYear) {
        throw UsageError(kModule, "synthetic years outside the supported range");
    }
    if (!(noise_sd >= 0.0)) throw UsageError(kModule, "noise_sd must be non-negative");
    if (!(pop_millions > 0.0)) throw UsageError(kModule, "pop_millions must be positive");
    for (const auto& [lo, hi] : pairs) {
        if (!(lo >= 0.0 && hi <= 100.0 && lo < hi)) {
            throw UsageError(kModule, "percentile pairs need 0 <= lo < hi <= 100");
        }
    }
}

std::string synthetic_code(std::size_t i) {
    if (i >= 26 * 26 * 26) throw UsageError(kModule, "too many synthetic countries");
    std::string code(3, 'A');
    code[2] = static_cast<char>('A' + i % 26);
    code[1] = static_cast<char>('A' + (i / 26) % 26);
    code[0] = static_cast<char>('A' + i / 676);
    return code;
}

decomposition::GapDecomposition ground_truth(const SyntheticSpec& spec, int year, double p_lo,
                                             double p_hi, double step) {
    const double t = year - spec.years.front();
    auto ln_y = [&](double p) {
        return spec.ln_a.at(p, t) + odds(spec.alpha.at(p, t)) * spec.ln_ky.at(p, t) +
               spec.ln_h.at(p, t);
    };
    auto integrand = [&](double p) { return odds(spec.alpha.at(p, t)) * spec.ln_ky.dp(p, t); };

    // Composite Simpson; an even number of panels no coarser than `step`.
    auto panels = static_cast<long>(std::ceil((p_hi - p_lo) / step));
    if (panels % 2) ++panels;
    const double h = (p_hi - p_lo) / static_cast<double>(panels);
    double sum = integrand(p_lo) + integrand(p_hi);
    for (long k = 1; k < panels; ++k) {
        sum += (k % 2 ? 4.0 : 2.0) * integrand(p_lo + static_cast<double>(k) * h);
    }

    decomposition::GapDecomposition g;
    g.year = year;
    g.p_lo = p_lo;
    g.p_hi = p_hi;
    g.total = ln_y(p_hi) - ln_y(p_lo);
    g.contrib_ky = sum * h / 3.0;
    g.contrib_h = spec.ln_h.at(p_hi, t) - spec.ln_h.at(p_lo, t);
    g.contrib_tfp = g.total - g.contrib_ky - g.contrib_h;
    return g;
}

SyntheticPanel synth_panel(const SyntheticSpec& spec) {
    spec.validate();
    SplitMix64 rng(spec.seed);
    const std::size_t n = spec.n_countries;

    std::vector<ingest::Observation> obs;
    obs.reserve(n * spec.years.size());
    for (int year : spec.years) {
        const double t = year - spec.years.front();
        double prev_y = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double p = 100.0 * static_cast<double>(i) / static_cast<double>(n - 1);
            const double alpha = spec.alpha.at(p, t);
            if (!(alpha > 0.0 && alpha < 1.0)) {
                throw DataError(kModule, "generated capital share " + csv::format_full(alpha) +
                                             " outside (0, 1) at p=" + csv::format_full(p));
            }
            const double ln_h = spec.ln_h.at(p, t);
            if (ln_h < 0.0) throw DataError(kModule, "generated human capital below 1");
            const double ln_ky = spec.ln_ky.at(p, t);
            double ln_a = spec.ln_a.at(p, t);
            if (spec.noise_sd > 0.0) ln_a += spec.noise_sd * rng.normal();
            const double y = std::exp(ln_a + odds(alpha) * ln_ky + ln_h);
            if (!(y > 0.0) || !std::isfinite(y)) {
                throw DataError(kModule, "generated income is not positive and finite");
            }
            if (spec.noise_sd == 0.0 && i > 0 && !(y > prev_y)) {
                throw DataError(kModule, "generated income is not increasing in rank in " +
                                             std::to_string(year));
            }
            prev_y = y;

            const double gdp = y * spec.pop_millions;
            ingest::Observation o;
            o.country_code = synthetic_code(i);
            o.year = year;
            o.pop = spec.pop_millions;
            o.emp = spec.pop_millions / 2.0;
            o.rgdpo = gdp;
            o.rgdpe = gdp;
            o.rgdpna = gdp;
            o.rnna = std::exp(ln_ky) * gdp;
            o.hc = std::exp(ln_h);
            o.labsh = 1.0 - alpha;
            obs.push_back(std::move(o));
        }
    }

    ingest::RegionMap regions;
    for (std::size_t i = 0; i < n; ++i) regions.add(synthetic_code(i), {spec.region, {}});

    ingest::Panel panel = ingest::build_panel(obs, regions, ingest::OilRentSeries{}, ingest::FilterConfig{});

    std::vector<decomposition::GapDecomposition> truth;
    for (int year : spec.years) {
        for (const auto& [lo, hi] : spec.pairs) truth.push_back(ground_truth(spec, year, lo, hi));
    }
    return {std::move(obs), std::move(regions), std::move(panel), std::move(truth)};
}

void write_pwt(std::ostream& out, const std::vector<ingest::Observation>& observations) {
    csv::write_row(out, {"countrycode", "year", "rgdpo", "rgdpe", "rgdpna", "rnna", "pop", "hc",
                         "labsh", "emp"});
    auto cell = [](const std::optional<double>& v) { return v ? csv::format_full(*v) : std::string{}; };
    for (const auto& o : observations) {
        csv::write_row(out, {o.country_code, std::to_string(o.year), cell(o.rgdpo), cell(o.rgdpe),
                             cell(o.rgdpna), cell(o.rnna), cell(o.pop), cell(o.hc), cell(o.labsh),
                             cell(o.emp)});
    }
}

void write_regions(std::ostream& out, const std::vector<ingest::Observation>& observations,
                   const std::string& region) {
    csv::write_row(out, {"countrycode", "region"});
    std::string last;
    for (const auto& o : observations) {
        if (o.country_code == last) continue;
        if (o.year != observations.front().year) break;
        csv::write_row(out, {o.country_code, region});
        last = o.country_code;
    }
}

ingest::AnalysisSample synth_growth_sample(const GrowthSampleSpec& spec) {
    if (spec.n < 3) throw UsageError(kModule, "growth sample needs n >= 3");
    if (!(spec.sigma_eps >= 0.0)) throw UsageError(kModule, "sigma_eps must be non-negative");
    if (spec.s < 1) throw UsageError(kModule, "horizon must be at least one year");

    SplitMix64 rng(spec.seed);
    const double s = spec.s;
    const double coef = -std::expm1(spec.beta * s) / s;

    ingest::AnalysisSample sample{spec.t0, spec.t0 + spec.s, {}};
    sample.units.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double ln_y0 = rng.uniform(spec.ln_y0_lo, spec.ln_y0_hi);
        double g = spec.beta0 - coef * ln_y0;
        if (spec.sigma_eps > 0.0) g += spec.sigma_eps * rng.normal();
        ingest::SampleUnit u;
        u.country_code = synthetic_code(i % (26 * 26 * 26));
        u.region = "Synthetic";
        u.start.country_code = u.end.country_code = u.country_code;
        u.start.year = sample.t0;
        u.end.year = sample.t1;
        u.start.y = std::exp(ln_y0);
        u.end.y = std::exp(ln_y0 + g * s);
        sample.units.push_back(std::move(u));
    }
    return sample;
}

convergence::BetaEstimate brute_force_beta(const ingest::AnalysisSample& sample, double beta_lo,
                                           double beta_hi, double step) {
    if (!(step > 0.0)) throw UsageError(kModule, "grid step must be positive");
    if (!(beta_lo <= beta_hi)) throw UsageError(kModule, "empty beta grid");
    const double s = static_cast<double>(sample.t1 - sample.t0);
    std::vector<double> x;
    std::vector<double> g;
    for (const auto& u : sample.units) {
        x.push_back(std::log(*u.start.y));
        g.push_back(std::log(*u.end.y / *u.start.y) / s);
    }
    if (x.empty()) throw UsageError(kModule, "empty sample");

    convergence::BetaEstimate best;
    best.ssr = std::numeric_limits<double>::infinity();
    const auto points = static_cast<long>(std::floor((beta_hi - beta_lo) / step + 1e-9));
    for (long k = 0; k <= points; ++k) {
        const double beta = beta_lo + static_cast<double>(k) * step;
        const double coef = -std::expm1(beta * s) / s;
        double beta0 = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) beta0 += g[i] + coef * x[i];
        beta0 /= static_cast<double>(x.size());
        double ssr = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = g[i] - beta0 + coef * x[i];
            ssr += r * r;
        }
        if (ssr < best.ssr) {
            best.ssr = ssr;
            best.beta = beta;
            best.beta0 = beta0;
        }
    }
    best.n = x.size();
    best.s = s;
    best.t0 = sample.t0;
    best.t1 = sample.t1;
    best.converged = true;
    return best;
}

}  // namespace incgap::oracle
