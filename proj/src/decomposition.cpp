#include "incgap/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "incgap/csv.hpp"
#include "incgap/error.hpp"

namespace incgap::decomposition {

namespace {

constexpr const char* kModule = "decomposition";
constexpr double kGridTol = 1e-9;

double odds(double alpha) { return alpha / (1.0 - alpha); }

double lerp(double a, double b, double t) { return t == 0.0 ? a : a + t * (b - a); }

}  // namespace

void PercentileProfile::validate() const {
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        if (!(pt.alpha > 0.0 && pt.alpha < 1.0)) {
            throw NumericalError(kModule, "profile alpha " + csv::format_full(pt.alpha) +
                                              " at p=" + csv::format_full(pt.p) + " outside (0, 1)");
        }
        if (i == 0) continue;
        if (!(pt.p > points[i - 1].p)) {
            throw UsageError(kModule, "percentile grid must be strictly increasing");
        }
        if (pt.ln_y < points[i - 1].ln_y) {
            throw NumericalError(kModule, "profile ln y decreases along the grid");
        }
    }
}

std::optional<std::size_t> PercentileProfile::index_of(double p) const {
    auto it = std::lower_bound(points.begin(), points.end(), p - kGridTol,
                               [](const ProfilePoint& pt, double v) { return pt.p < v; });
    if (it == points.end() || std::abs(it->p - p) > kGridTol) return std::nullopt;
    return static_cast<std::size_t>(it - points.begin());
}

std::vector<double> percentile_grid(double lo, double hi, double step) {
    if (!(step > 0.0)) throw UsageError(kModule, "grid step must be positive");
    if (!(lo >= 0.0 && hi <= 100.0 && lo < hi)) {
        throw UsageError(kModule, "grid bounds must satisfy 0 <= lo < hi <= 100");
    }
    std::vector<double> grid;
    // Index-based to avoid accumulating rounding in lo + k*step.
    const auto steps = static_cast<long>(std::floor((hi - lo) / step + kGridTol));
    for (long k = 0; k <= steps; ++k) grid.push_back(lo + static_cast<double>(k) * step);
    if (hi - grid.back() > kGridTol) {
        grid.push_back(hi);
    } else {
        grid.back() = hi;
    }
    return grid;
}

PercentileProfile profile_from_countries(int year, std::vector<CountryInputs> countries,
                                         std::span<const double> grid) {
    if (countries.empty()) throw DataError(kModule, "year " + std::to_string(year) + " has no countries");
    if (grid.empty()) throw UsageError(kModule, "empty percentile grid");
    for (const auto& c : countries) {
        if (!(c.y > 0.0 && c.ky > 0.0 && c.h > 0.0)) {
            throw DataError(kModule, c.country_code + ": y, k/y and h must be positive");
        }
        if (!(c.alpha > 0.0 && c.alpha < 1.0)) {
            throw DataError(kModule, c.country_code + ": capital share outside (0, 1)");
        }
    }
    std::sort(countries.begin(), countries.end(), [](const auto& a, const auto& b) {
        return std::tie(a.y, a.country_code) < std::tie(b.y, b.country_code);
    });

    PercentileProfile profile;
    profile.year = year;
    profile.n_countries = countries.size();
    profile.points.reserve(grid.size());
    for (double p : grid) {
        const auto [lo, frac] = stats::percentile_rank(countries.size(), p);
        const auto& a = countries[lo];
        const auto& b = frac == 0.0 ? a : countries[lo + 1];
        profile.points.push_back({p, lerp(std::log(a.y), std::log(b.y), frac),
                                  lerp(std::log(a.ky), std::log(b.ky), frac),
                                  lerp(std::log(a.h), std::log(b.h), frac),
                                  lerp(a.alpha, b.alpha, frac)});
    }
    profile.validate();
    return profile;
}

PercentileProfile percentile_profile(const ingest::Panel& panel, int year,
                                     std::span<const double> grid,
                                     const ingest::CountryFilter& filter) {
    std::vector<CountryInputs> inputs;
    for (const auto* r : panel.records_in_year(year)) {
        if (!r->decomposition_ready() || !filter.admits(*r)) continue;
        inputs.push_back({r->country_code, *r->y, *r->ky, *r->h, *r->alpha});
    }
    if (inputs.size() < kMinProfileCountries) {
        throw DataError(kModule, "year " + std::to_string(year) + " has " +
                                     std::to_string(inputs.size()) +
                                     " decomposition-ready countries; need " +
                                     std::to_string(kMinProfileCountries));
    }
    return profile_from_countries(year, std::move(inputs), grid);
}

AlphaMode AlphaMode::fixed(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw UsageError(kModule, "constant capital share must lie in (0, 1)");
    }
    return AlphaMode{alpha};
}

std::string AlphaMode::label() const {
    return constant ? "const:" + csv::format_full(*constant) : std::string("varying");
}

AlphaMode AlphaMode::parse(std::string_view text) {
    if (text == "varying") return varying();
    constexpr std::string_view prefix = "const:";
    if (text.substr(0, prefix.size()) == prefix) {
        const std::string_view value = text.substr(prefix.size());
        std::optional<double> v;
        if (value == "1/3") {
            v = 1.0 / 3.0;
        } else {
            try {
                v = csv::parse_number(value);
            } catch (const Error&) {
                v.reset();
            }
        }
        if (v) return fixed(*v);
    }
    throw UsageError(kModule, "alpha mode must be 'varying' or 'const:<value>', got '" +
                                  std::string(text) + "'");
}

GapDecomposition gap_decomposition(const PercentileProfile& profile, double p_lo, double p_hi,
                                   AlphaMode mode) {
    if (!(p_lo < p_hi)) throw UsageError(kModule, "need p_lo < p_hi");
    const auto lo = profile.index_of(p_lo);
    const auto hi = profile.index_of(p_hi);
    if (!lo || !hi) {
        throw UsageError(kModule, "percentiles " + csv::format_full(p_lo) + " and " +
                                      csv::format_full(p_hi) + " must both be grid points");
    }
    const auto& pts = profile.points;
    auto weight = [&](std::size_t k) { return odds(mode.constant ? *mode.constant : pts[k].alpha); };

    double ky = 0.0;
    for (std::size_t k = *lo; k < *hi; ++k) {
        ky += 0.5 * (weight(k + 1) + weight(k)) * (pts[k + 1].ln_ky - pts[k].ln_ky);
    }

    GapDecomposition g;
    g.year = profile.year;
    g.p_lo = p_lo;
    g.p_hi = p_hi;
    g.total = pts[*hi].ln_y - pts[*lo].ln_y;
    g.contrib_ky = ky;
    g.contrib_h = pts[*hi].ln_h - pts[*lo].ln_h;
    g.contrib_tfp = g.total - g.contrib_ky - g.contrib_h;
    g.alpha_mode = mode;
    return g;
}

DecompositionChange difference(const GapDecomposition& earlier, const GapDecomposition& later) {
    DecompositionChange c;
    c.year1 = earlier.year;
    c.year2 = later.year;
    c.p_lo = earlier.p_lo;
    c.p_hi = earlier.p_hi;
    c.delta_total = later.total - earlier.total;
    c.delta_ky = later.contrib_ky - earlier.contrib_ky;
    c.delta_h = later.contrib_h - earlier.contrib_h;
    c.delta_tfp = later.contrib_tfp - earlier.contrib_tfp;
    c.alpha_mode = earlier.alpha_mode;
    return c;
}

DecompositionChange gap_change(const ingest::Panel& panel, int year1, int year2,
                               const GapChangeOptions& opts) {
    const auto grid = percentile_grid(opts.p_lo, opts.p_hi, opts.grid_step);
    const auto first = percentile_profile(panel, year1, grid, opts.filter);
    const auto second = percentile_profile(panel, year2, grid, opts.filter);
    return difference(gap_decomposition(first, opts.p_lo, opts.p_hi, opts.alpha_mode),
                      gap_decomposition(second, opts.p_lo, opts.p_hi, opts.alpha_mode));
}

VarianceDecomposition variance_decomposition_of(int year, double alpha_const,
                                                std::span<const double> ln_y,
                                                std::span<const double> ln_ky,
                                                std::span<const double> ln_h,
                                                stats::VarianceNorm norm) {
    if (!(alpha_const > 0.0 && alpha_const < 1.0)) {
        throw UsageError(kModule, "alpha_const must lie in (0, 1)");
    }
    const std::size_t n = ln_y.size();
    if (n == 0) throw DataError(kModule, "empty variance-decomposition sample");
    if (ln_ky.size() != n || ln_h.size() != n) {
        throw UsageError(kModule, "variance inputs differ in length");
    }
    const double w = odds(alpha_const);
    std::vector<double> ln_ykh(n);
    std::vector<double> ln_a(n);
    for (std::size_t i = 0; i < n; ++i) {
        ln_ykh[i] = w * ln_ky[i] + ln_h[i];
        ln_a[i] = ln_y[i] - ln_ykh[i];
    }
    VarianceDecomposition v;
    v.year = year;
    v.n = n;
    v.alpha_const = alpha_const;
    v.var_ln_y = stats::variance(ln_y, norm);
    v.var_ln_a = stats::variance(ln_a, norm);
    v.var_ln_ykh = stats::variance(ln_ykh, norm);
    v.cov_term = 2.0 * stats::covariance(ln_a, ln_ykh, norm);
    return v;
}

VarianceDecomposition variance_decomposition(const ingest::Panel& panel, int year,
                                             const VarianceOptions& opts) {
    ingest::CountryFilter filter = opts.filter;
    if (opts.variance_sensitive) {
        filter.exclude_codes.insert(panel.config().variance_exclusions.begin(),
                                    panel.config().variance_exclusions.end());
    }
    std::vector<double> ln_y;
    std::vector<double> ln_ky;
    std::vector<double> ln_h;
    for (const auto* r : panel.records_in_year(year)) {
        const auto& income = opts.per_worker ? r->y_per_worker : r->y;
        if (!income || !r->ky || !r->h || !filter.admits(*r)) continue;
        ln_y.push_back(std::log(*income));
        ln_ky.push_back(std::log(*r->ky));
        ln_h.push_back(std::log(*r->h));
    }
    if (ln_y.empty()) {
        throw DataError(kModule, "no countries with income, k/y and h in " + std::to_string(year) +
                                     (opts.per_worker ? " (per-worker income needs an emp column)" : ""));
    }
    return variance_decomposition_of(year, opts.alpha_const, ln_y, ln_ky, ln_h, opts.norm);
}

RegionalCapitalOutput regional_capital_output(const ingest::Panel& panel, int year) {
    std::set<std::string> regions;
    std::map<std::string, std::pair<double, double>> sums;  // region -> (sum pop*ky, sum pop)
    for (const auto& r : panel.records()) {
        regions.insert(r.region);
        if (r.year != year || !r.ky || !r.pop) continue;
        auto& [num, den] = sums[r.region];
        num += *r.pop * *r.ky;
        den += *r.pop;
    }
    RegionalCapitalOutput out;
    out.year = year;
    for (const auto& region : regions) {
        auto it = sums.find(region);
        if (it == sums.end() || !(it->second.second > 0.0)) {
            out.warnings.push_back("region '" + region + "' has no capital-output coverage in " +
                                   std::to_string(year) + "; omitted");
            continue;
        }
        out.weighted_ky[region] = it->second.first / it->second.second;
    }
    return out;
}

}  // namespace incgap::decomposition
