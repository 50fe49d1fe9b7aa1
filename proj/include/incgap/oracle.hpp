#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "incgap/convergence.hpp"
#include "incgap/decomposition.hpp"
#include "incgap/ingest.hpp"

namespace incgap::oracle {

/// SplitMix64 (Steele, Lea & Flood 2014). Fixed algorithm so that seeds
/// reproduce across platforms and implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    /// Uniform on [0, 1) from the top 53 bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal via the cosine branch of Box-Muller on two uniforms:
    /// sqrt(-2 ln(1 - u1)) cos(2 pi u2).
    double normal();

private:
    std::uint64_t state_;
};

/// level + rank_slope q + trend t + rank_trend q t, with q = p/100 the income
/// rank in [0, 1] and t the years elapsed since the first synthetic year.
struct LinearField {
    double level = 0.0;
    double rank_slope = 0.0;
    double trend = 0.0;
    double rank_trend = 0.0;

    [[nodiscard]] double at(double p, double t) const;
    /// d/dp at (p, t).
    [[nodiscard]] double dp(double p, double t) const;
};

/// Capital share as a smooth function of rank: the linear part plus
/// hump * q (1 - q), which gives an inverse-U profile when hump > 0.
struct AlphaField {
    LinearField linear{0.4, 0.0, 0.0, 0.0};
    double hump = 0.0;

    [[nodiscard]] double at(double p, double t) const;
    [[nodiscard]] bool is_constant() const;
};

struct SyntheticSpec {
    std::size_t n_countries = 101;
    std::vector<int> years = {1980, 2000, 2019};
    LinearField ln_a{8.0, 3.0, 0.0, 0.0};
    LinearField ln_ky{0.5, 0.8, 0.0, 0.0};
    LinearField ln_h{0.2, 1.0, 0.0, 0.0};
    AlphaField alpha;
    double noise_sd = 0.0;  // iid normal shock on ln A per country-year
    std::uint64_t seed = 1;
    double pop_millions = 10.0;
    std::string region = "Synthetic";
    std::vector<std::pair<double, double>> pairs = {{10.0, 90.0}, {50.0, 90.0}, {10.0, 50.0}};

    void validate() const;
};

struct SyntheticPanel {
    std::vector<ingest::Observation> observations;
    ingest::RegionMap regions;
    ingest::Panel panel;
    /// Analytic decomposition per (year, pair), contributions integrated at
    /// step 0.01 with composite Simpson.
    std::vector<decomposition::GapDecomposition> truth;
};

/// Three-letter codes AAA, AAB, ... for synthetic country i.
[[nodiscard]] std::string synthetic_code(std::size_t i);

/// Deterministic given spec.seed. Country i sits at income rank
/// p_i = 100 i / (n - 1) and y = A (k/y)^(alpha/(1-alpha)) h.
[[nodiscard]] SyntheticPanel synth_panel(const SyntheticSpec& spec);

/// Ground truth for one gap, integrating alpha/(1-alpha) d ln(k/y) at `step`.
[[nodiscard]] decomposition::GapDecomposition ground_truth(const SyntheticSpec& spec, int year,
                                                           double p_lo, double p_hi,
                                                           double step = 0.01);

/// Writes observations in the default raw-file schema.
void write_pwt(std::ostream& out, const std::vector<ingest::Observation>& observations);
void write_regions(std::ostream& out, const std::vector<ingest::Observation>& observations,
                   const std::string& region);

struct GrowthSampleSpec {
    double beta0 = 0.02;
    double beta = -0.01;
    int s = 20;
    std::size_t n = 100;
    double sigma_eps = 0.0;
    std::uint64_t seed = 1;
    int t0 = 2000;
    double ln_y0_lo = 6.0;  // initial log incomes drawn uniformly on [lo, hi]
    double ln_y0_hi = 11.0;
};

/// Two-period sample following the growth regression exactly, plus iid
/// N(0, sigma_eps^2) shocks to annualized growth.
[[nodiscard]] ingest::AnalysisSample synth_growth_sample(const GrowthSampleSpec& spec);

/// Grid search over beta in [beta_lo, beta_hi] at `step` with beta0 profiled
/// out analytically. Only beta0, beta, ssr, n, s, t0, t1 are filled.
[[nodiscard]] convergence::BetaEstimate brute_force_beta(const ingest::AnalysisSample& sample,
                                                         double beta_lo = -0.1, double beta_hi = 0.1,
                                                         double step = 1e-4);

}  // namespace incgap::oracle
