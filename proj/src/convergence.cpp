#include "incgap/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "incgap/error.hpp"

namespace incgap::convergence {

namespace {
constexpr const char* kModule = "convergence";
constexpr std::size_t kTailCount = 5;
}  // namespace

double BetaEstimate::slope() const { return std::expm1(beta * s) / s; }

BetaEstimate fit_growth_regression(std::span<const double> ln_y0, std::span<const double> growth,
                                   double s, bool robust, const nlls::Options& opts) {
    const std::size_t n = ln_y0.size();
    if (growth.size() != n) throw UsageError(kModule, "income and growth series differ in length");
    if (n < 3) throw DataError(kModule, "beta regression needs at least 3 countries, got " + std::to_string(n));
    if (!(s >= 1.0)) throw UsageError(kModule, "horizon must be at least one year");

    const double mx = stats::mean(ln_y0);
    const double my = stats::mean(growth);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (ln_y0[i] - mx) * (ln_y0[i] - mx);
        sxy += (ln_y0[i] - mx) * (growth[i] - my);
    }
    if (!(sxx > 1e-12 * static_cast<double>(n) * std::max(1.0, mx * mx))) {
        throw NumericalError(kModule, "beta is unidentified: initial incomes are identical");
    }

    // Start from the linear fit: slope b maps to beta = ln(1 + b s)/s.
    const double b = sxy / sxx;
    const double beta_init = 1.0 + b * s > 0.0 ? std::log1p(b * s) / s : -0.001;
    Eigen::VectorXd theta(2);
    theta << my - b * mx, beta_init;

    const nlls::ResidualFn residual = [&](const Eigen::VectorXd& t, Eigen::VectorXd& r,
                                          Eigen::MatrixXd& jac) {
        const double beta0 = t[0];
        const double beta = t[1];
        const double decay = std::exp(beta * s);
        const double coef = -std::expm1(beta * s) / s;  // (1 - e^{beta s})/s
        r.resize(static_cast<Eigen::Index>(n));
        jac.resize(static_cast<Eigen::Index>(n), 2);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = static_cast<Eigen::Index>(i);
            r[row] = growth[i] - beta0 + coef * ln_y0[i];
            jac(row, 0) = -1.0;
            jac(row, 1) = -decay * ln_y0[i];
        }
    };

    const nlls::Result fit = nlls::levenberg_marquardt(residual, theta, opts);
    if (!fit.theta.allFinite()) throw NumericalError(kModule, "optimizer returned non-finite estimates");

    const Eigen::MatrixXd cov = robust ? nlls::hc1_covariance(fit.jacobian, fit.residuals)
                                       : nlls::classical_covariance(fit.jacobian, fit.residuals);

    BetaEstimate est;
    est.beta0 = fit.theta[0];
    est.beta = fit.theta[1];
    est.se_beta0 = std::sqrt(cov(0, 0));
    est.se_beta = std::sqrt(cov(1, 1));
    est.n = n;
    est.s = s;
    est.ssr = fit.ssr;
    est.converged = fit.converged;
    est.robust = robust;
    est.iterations = fit.iterations;
    return est;
}

BetaEstimate beta_convergence(const ingest::AnalysisSample& sample, bool robust,
                              const nlls::Options& opts) {
    const double s = static_cast<double>(sample.t1 - sample.t0);
    std::vector<double> ln_y0;
    std::vector<double> growth;
    ln_y0.reserve(sample.n());
    growth.reserve(sample.n());
    for (const auto& u : sample.units) {
        if (!u.start.y || !u.end.y) {
            throw DataError(kModule, u.country_code + " lacks income at an endpoint year");
        }
        ln_y0.push_back(std::log(*u.start.y));
        growth.push_back(std::log(*u.end.y / *u.start.y) / s);
    }
    BetaEstimate est = fit_growth_regression(ln_y0, growth, s, robust, opts);
    est.t0 = sample.t0;
    est.t1 = sample.t1;
    return est;
}

double half_life(double beta, double s) {
    if (!(s > 0.0)) throw UsageError(kModule, "horizon must be positive");
    if (!(beta < 0.0)) {
        throw NumericalError(kModule, "undefined half-life: beta = " + csv::format_full(beta) +
                                          " implies no convergence");
    }
    const double rate = -std::expm1(beta * s) / s;
    if (!(rate < 1.0)) {
        throw NumericalError(kModule, "undefined half-life: gap-closure rate " +
                                          csv::format_full(rate) + " is not below 1");
    }
    const double log_keep = std::log1p(-rate);
    if (log_keep == 0.0) return std::numeric_limits<double>::infinity();
    return -std::log(2.0) / log_keep;
}

DispersionRow dispersion_row(int year, std::vector<double> incomes, stats::VarianceNorm norm) {
    if (incomes.size() < kMinDispersionCountries) {
        throw DataError(kModule, "year " + std::to_string(year) + " has " +
                                     std::to_string(incomes.size()) + " countries with income; need " +
                                     std::to_string(kMinDispersionCountries));
    }
    std::sort(incomes.begin(), incomes.end());
    const double p10 = stats::percentile_value(incomes, 10.0);
    const double p50 = stats::percentile_value(incomes, 50.0);
    const double p90 = stats::percentile_value(incomes, 90.0);

    std::vector<double> logs(incomes.size());
    std::transform(incomes.begin(), incomes.end(), logs.begin(), [](double v) { return std::log(v); });

    const auto bottom = std::span<const double>(incomes).first(kTailCount);
    const auto top = std::span<const double>(incomes).last(kTailCount);

    DispersionRow row;
    row.year = year;
    row.n = incomes.size();
    row.p90_p10 = p90 / p10;
    row.p90_p50 = p90 / p50;
    row.p50_p10 = p50 / p10;
    row.var_log = stats::variance(logs, norm);
    row.income_ratio = stats::mean(top) / stats::mean(bottom);
    return row;
}

std::vector<DispersionRow> dispersion_table(const ingest::Panel& panel, std::span<const int> years,
                                            const DispersionOptions& opts) {
    ingest::CountryFilter filter;
    filter.exclude_ssa = opts.exclude_ssa;
    if (opts.variance_sensitive) {
        filter.exclude_codes.insert(panel.config().variance_exclusions.begin(),
                                    panel.config().variance_exclusions.end());
    }
    std::vector<DispersionRow> rows;
    for (int year : years) {
        std::vector<double> incomes;
        for (const auto* r : panel.records_in_year(year)) {
            if (r->y && filter.admits(*r)) incomes.push_back(*r->y);
        }
        rows.push_back(dispersion_row(year, std::move(incomes), opts.norm));
    }
    return rows;
}

}  // namespace incgap::convergence
