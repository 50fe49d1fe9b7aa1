#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "incgap/ingest.hpp"
#include "incgap/nlls.hpp"
#include "incgap/stats.hpp"

namespace incgap::convergence {

/// Fit of  g_i = beta0 - ((1 - exp(beta*s))/s) ln y_i,t0 + e_i,
/// where g_i is the annualized log growth between t0 and t1 = t0 + s.
/// Negative beta means poorer countries grow faster.
struct BetaEstimate {
    double beta0 = 0.0;
    double beta = 0.0;
    double se_beta0 = 0.0;
    double se_beta = 0.0;
    std::size_t n = 0;
    int t0 = 0;
    int t1 = 0;
    double s = 0.0;
    double ssr = 0.0;
    bool converged = false;
    bool robust = true;
    int iterations = 0;

    /// Coefficient on ln y_t0 implied by beta: -(1 - exp(beta*s))/s.
    [[nodiscard]] double slope() const;
    /// beta / se_beta.
    [[nodiscard]] double t_stat() const { return beta / se_beta; }
};

/// Estimates beta from log initial incomes and annualized growth rates over a
/// horizon of `s` years. HC1 robust standard errors when `robust`, classical
/// otherwise.
[[nodiscard]] BetaEstimate fit_growth_regression(std::span<const double> ln_y0,
                                                 std::span<const double> growth, double s,
                                                 bool robust = true,
                                                 const nlls::Options& opts = {});

[[nodiscard]] BetaEstimate beta_convergence(const ingest::AnalysisSample& sample, bool robust = true,
                                            const nlls::Options& opts = {});

/// Years to close half of an income gap: -ln 2 / ln(1 - (1 - exp(beta*s))/s).
/// Returns +infinity once the implied closure rate underflows; throws for
/// beta >= 0.
[[nodiscard]] double half_life(double beta, double s);

struct DispersionRow {
    int year = 0;
    std::size_t n = 0;
    double p90_p10 = 0.0;
    double p90_p50 = 0.0;
    double p50_p10 = 0.0;
    double var_log = 0.0;
    double income_ratio = 0.0;  // mean of top five y over mean of bottom five
};

inline constexpr std::size_t kMinDispersionCountries = 10;

/// Dispersion measures of one cross-section of incomes (any order).
[[nodiscard]] DispersionRow dispersion_row(int year, std::vector<double> incomes,
                                           stats::VarianceNorm norm = stats::VarianceNorm::Population);

struct DispersionOptions {
    bool exclude_ssa = false;
    /// Drops FilterConfig::variance_exclusions from every measure.
    bool variance_sensitive = false;
    stats::VarianceNorm norm = stats::VarianceNorm::Population;
};

[[nodiscard]] std::vector<DispersionRow> dispersion_table(const ingest::Panel& panel,
                                                          std::span<const int> years,
                                                          const DispersionOptions& opts = {});

}  // namespace incgap::convergence
