#include "incgap/stats.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "incgap/csv.hpp"
#include "incgap/error.hpp"

namespace incgap::stats {

namespace {
constexpr const char* kModule = "stats";

double divisor(std::size_t n, VarianceNorm norm) {
    if (norm == VarianceNorm::Sample) {
        if (n < 2) throw NumericalError(kModule, "sample variance needs at least two values");
        return static_cast<double>(n - 1);
    }
    if (n == 0) throw NumericalError(kModule, "variance of an empty series");
    return static_cast<double>(n);
}
}  // namespace

Rank percentile_rank(std::size_t n, double p) {
    if (!(p >= 0.0 && p <= 100.0)) {
        throw UsageError(kModule, "percentile " + csv::format_full(p) + " outside [0, 100]");
    }
    if (n == 0) throw UsageError(kModule, "percentile of an empty series");
    const double r = p / 100.0 * static_cast<double>(n - 1);
    auto lower = static_cast<std::size_t>(std::floor(r));
    if (lower >= n - 1) return {n - 1, 0.0};
    return {lower, r - static_cast<double>(lower)};
}

double percentile_value(std::span<const double> sorted, double p) {
    const auto [lo, frac] = percentile_rank(sorted.size(), p);
    if (frac == 0.0) return sorted[lo];
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double mean(std::span<const double> x) {
    if (x.empty()) throw NumericalError(kModule, "mean of an empty series");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x, VarianceNorm norm) {
    return covariance(x, x, norm);
}

double covariance(std::span<const double> x, std::span<const double> y, VarianceNorm norm) {
    if (x.size() != y.size()) throw UsageError(kModule, "covariance of unequal-length series");
    const double d = divisor(x.size(), norm);
    const double mx = mean(x);
    const double my = mean(y);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
    return s / d;
}

}  // namespace incgap::stats
