#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "incgap/ingest.hpp"
#include "incgap/oracle.hpp"
#include "incgap/report.hpp"
#include "incgap/stats.hpp"

namespace incgap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumerical = 4;

/// Environment variable naming a directory with pwt.csv, regions.csv and
/// (optionally) oil.csv, used when the path flags are absent.
inline constexpr const char* kDataDirEnv = "INCGAP_DATA_DIR";

/// Settings shared by all subcommands. Precedence: command-line flags, then
/// config-file keys, then these defaults.
struct RunConfig {
    std::optional<std::filesystem::path> pwt;
    std::optional<std::filesystem::path> regions;
    std::optional<std::filesystem::path> oil;
    std::optional<std::filesystem::path> out;
    ingest::FilterConfig filter;
    report::Format format = report::Format::Text;
    double grid_step = 1.0;
    stats::VarianceNorm variance_norm = stats::VarianceNorm::Population;
};

/// Applies the keys of a JSON config document on top of `cfg`. Unknown keys
/// are a usage error.
void apply_config_json(RunConfig& cfg, const std::string& text);

/// Parses a synthetic-data spec. `kind` is "accounting" (default) or "growth".
struct SynthRequest {
    std::string kind = "accounting";
    oracle::SyntheticSpec accounting;
    oracle::GrowthSampleSpec growth;
};
[[nodiscard]] SynthRequest synth_request_from_json(const std::string& text);

/// Runs one command line (args excludes the program name). Diagnostics go to
/// `err` as single lines; results go to `out` or the --out file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace incgap::cli
