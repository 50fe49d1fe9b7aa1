#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "incgap/ingest.hpp"
#include "incgap/stats.hpp"

namespace incgap::decomposition {

/// Values read off the income-sorted cross-section at one percentile.
struct ProfilePoint {
    double p = 0.0;
    double ln_y = 0.0;
    double ln_ky = 0.0;
    double ln_h = 0.0;
    double alpha = 0.0;
};

/// ln y, ln(k/y), ln h and the capital share as functions of the income
/// percentile for one year. Points are strictly increasing in p.
struct PercentileProfile {
    int year = 0;
    std::size_t n_countries = 0;
    std::vector<ProfilePoint> points;

    /// Throws when the grid is not strictly increasing, ln_y decreases, or an
    /// alpha leaves (0, 1).
    void validate() const;
    /// Index of the grid point equal to p (within 1e-9), or nullopt.
    [[nodiscard]] std::optional<std::size_t> index_of(double p) const;
};

inline constexpr std::size_t kMinProfileCountries = 10;

/// Percentiles lo, lo + step, ..., hi. `hi` is always included.
[[nodiscard]] std::vector<double> percentile_grid(double lo, double hi, double step = 1.0);

/// One country's inputs to a profile.
struct CountryInputs {
    std::string country_code;
    double y = 0.0;
    double ky = 0.0;
    double h = 0.0;
    double alpha = 0.0;
};

/// Sorts by income (ties by code) and interpolates every variable at rank (p/100)(N-1)
/// along that single ordering.
[[nodiscard]] PercentileProfile profile_from_countries(int year, std::vector<CountryInputs> countries,
                                                       std::span<const double> grid);

/// Profile over the decomposition-ready countries of `year` admitted by `filter`.
[[nodiscard]] PercentileProfile percentile_profile(const ingest::Panel& panel, int year,
                                                   std::span<const double> grid,
                                                   const ingest::CountryFilter& filter = {});

/// Either the profile's own alpha(p) or one constant share everywhere.
struct AlphaMode {
    std::optional<double> constant;

    [[nodiscard]] static AlphaMode varying() { return {}; }
    [[nodiscard]] static AlphaMode fixed(double alpha);
    [[nodiscard]] bool is_varying() const noexcept { return !constant.has_value(); }
    [[nodiscard]] std::string label() const;
    /// "varying" or "const:<value>".
    [[nodiscard]] static AlphaMode parse(std::string_view text);
};

struct GapDecomposition {
    int year = 0;
    double p_lo = 0.0;
    double p_hi = 0.0;
    double total = 0.0;        // ln y(p_hi) - ln y(p_lo)
    double contrib_ky = 0.0;   // trapezoid sum of alpha/(1-alpha) d ln(k/y)
    double contrib_h = 0.0;    // ln h(p_hi) - ln h(p_lo)
    double contrib_tfp = 0.0;  // residual
    AlphaMode alpha_mode;
};

/// Splits the log gap between two grid percentiles. TFP is the residual, so
/// total == contrib_ky + contrib_h + contrib_tfp holds by construction.
[[nodiscard]] GapDecomposition gap_decomposition(const PercentileProfile& profile, double p_lo,
                                                 double p_hi, AlphaMode mode = AlphaMode::varying());

struct DecompositionChange {
    int year1 = 0;
    int year2 = 0;
    double p_lo = 0.0;
    double p_hi = 0.0;
    double delta_total = 0.0;
    double delta_ky = 0.0;
    double delta_h = 0.0;
    double delta_tfp = 0.0;
    AlphaMode alpha_mode;
};

/// later - earlier, field by field.
[[nodiscard]] DecompositionChange difference(const GapDecomposition& earlier,
                                             const GapDecomposition& later);

struct GapChangeOptions {
    double p_lo = 10.0;
    double p_hi = 90.0;
    double grid_step = 1.0;
    AlphaMode alpha_mode;
    ingest::CountryFilter filter;
};

[[nodiscard]] DecompositionChange gap_change(const ingest::Panel& panel, int year1, int year2,
                                             const GapChangeOptions& opts);

/// Var(ln y) = Var(ln A) + Var(ln y^kh) + 2 Cov(ln A, ln y^kh) with
/// ln y^kh = alpha/(1-alpha) ln(k/y) + ln h.
struct VarianceDecomposition {
    int year = 0;
    std::size_t n = 0;
    double alpha_const = 0.46;
    double var_ln_y = 0.0;
    double var_ln_a = 0.0;
    double var_ln_ykh = 0.0;
    double cov_term = 0.0;  // 2 Cov(ln A, ln y^kh)
};

inline constexpr double kDefaultVarianceAlpha = 0.46;

[[nodiscard]] VarianceDecomposition variance_decomposition_of(
    int year, double alpha_const, std::span<const double> ln_y, std::span<const double> ln_ky,
    std::span<const double> ln_h, stats::VarianceNorm norm = stats::VarianceNorm::Population);

struct VarianceOptions {
    double alpha_const = kDefaultVarianceAlpha;
    bool variance_sensitive = false;  // drop FilterConfig::variance_exclusions
    bool per_worker = false;          // use GDP per person engaged
    stats::VarianceNorm norm = stats::VarianceNorm::Population;
    ingest::CountryFilter filter;
};

[[nodiscard]] VarianceDecomposition variance_decomposition(const ingest::Panel& panel, int year,
                                                           const VarianceOptions& opts = {});

struct RegionalCapitalOutput {
    int year = 0;
    std::map<std::string, double> weighted_ky;  // region -> population-weighted mean k/y
    std::vector<std::string> warnings;
};

[[nodiscard]] RegionalCapitalOutput regional_capital_output(const ingest::Panel& panel, int year);

}  // namespace incgap::decomposition
