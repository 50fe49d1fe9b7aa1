#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "incgap/capital.hpp"
#include "incgap/convergence.hpp"
#include "incgap/decomposition.hpp"
#include "incgap/ingest.hpp"

namespace incgap::report {

using Cell = std::variant<std::monostate, std::string, long long, double>;

/// A named rectangular result, rendered as csv, json or an aligned text table.
struct ResultTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

enum class Format { Csv, Json, Text };

[[nodiscard]] Format parse_format(std::string_view text);
[[nodiscard]] std::string_view to_string(Format f);
[[nodiscard]] std::string_view extension(Format f);

/// csv and json carry full round-trip precision; text uses six significant digits.
void render(const ResultTable& table, Format format, std::ostream& out);
void write_csv(const ResultTable& table, std::ostream& out);
void write_json(const ResultTable& table, std::ostream& out);
void write_text(const ResultTable& table, std::ostream& out);

struct LabeledBeta {
    std::string sample;  // "all" or "outside-ssa"
    convergence::BetaEstimate estimate;
};

[[nodiscard]] ResultTable beta_table(const std::vector<LabeledBeta>& estimates);
[[nodiscard]] ResultTable dispersion_table(const std::string& sample,
                                           const std::vector<convergence::DispersionRow>& rows);
[[nodiscard]] ResultTable decomposition_table(const std::vector<decomposition::DecompositionChange>& changes);
[[nodiscard]] ResultTable gap_levels_table(const std::vector<decomposition::GapDecomposition>& levels);
[[nodiscard]] ResultTable variance_table(const std::vector<decomposition::VarianceDecomposition>& rows);
[[nodiscard]] ResultTable regional_table(const std::vector<decomposition::RegionalCapitalOutput>& rows);
[[nodiscard]] ResultTable capital_table(const capital::UndepreciatedReport& report,
                                        const std::vector<int>& years);
[[nodiscard]] ResultTable exclusion_table(const ingest::Panel& panel);

/// 64-bit FNV-1a.
[[nodiscard]] std::uint64_t fnv1a(std::string_view bytes);
[[nodiscard]] std::string hex64(std::uint64_t v);

/// Settings of the full reproduction pipeline.
struct PipelineConfig {
    std::filesystem::path pwt;
    std::filesystem::path regions;
    std::optional<std::filesystem::path> oil;
    ingest::FilterConfig filter;
    std::vector<int> years = {1980, 1990, 2000, 2010, 2019};
    std::vector<int> decomposition_years = {1980, 2000, 2019};
    std::vector<std::pair<int, int>> beta_periods = {{1980, 2000}, {2000, 2019}};
    double grid_step = 1.0;
    double constant_alpha = 1.0 / 3.0;
    double variance_alpha = decomposition::kDefaultVarianceAlpha;
    stats::VarianceNorm variance_norm = stats::VarianceNorm::Population;
    bool balanced_decomposition = true;
    Format format = Format::Csv;

    /// Canonical JSON text; hashed into the manifest.
    [[nodiscard]] std::string canonical_json() const;
};

struct ArtifactInfo {
    std::string file;
    std::size_t rows = 0;
};

struct PipelineResult {
    std::vector<ArtifactInfo> artifacts;
    std::vector<std::string> warnings;
};

/// Loads inputs, runs every analysis and writes one file per table plus
/// manifest.json into `out_dir`.
PipelineResult run_pipeline(const PipelineConfig& cfg, const std::filesystem::path& out_dir);

/// Decomposition changes for consecutive years and first-to-last.
[[nodiscard]] std::vector<decomposition::DecompositionChange> period_changes(
    const ingest::Panel& panel, const std::vector<int>& years, double p_lo, double p_hi,
    double grid_step, const decomposition::AlphaMode& mode, const ingest::CountryFilter& filter);

}  // namespace incgap::report
