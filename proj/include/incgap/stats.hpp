#pragma once

#include <cstddef>
#include <span>

namespace incgap::stats {

enum class VarianceNorm { Population, Sample };  // 1/N or 1/(N-1)

/// Linear interpolation on order statistics at rank (p/100)(N-1).
/// `sorted` must be non-empty and ascending; p in [0, 100].
[[nodiscard]] double percentile_value(std::span<const double> sorted, double p);

/// Position of percentile p on a series of length n: lower index and weight
/// of the upper neighbour.
struct Rank {
    std::size_t lower;
    double frac;
};
[[nodiscard]] Rank percentile_rank(std::size_t n, double p);

[[nodiscard]] double mean(std::span<const double> x);
[[nodiscard]] double variance(std::span<const double> x, VarianceNorm norm = VarianceNorm::Population);
[[nodiscard]] double covariance(std::span<const double> x, std::span<const double> y,
                                VarianceNorm norm = VarianceNorm::Population);

}  // namespace incgap::stats
