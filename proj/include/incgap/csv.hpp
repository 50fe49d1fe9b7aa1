#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace incgap::csv {

/// In-memory comma-separated table. Quoted fields (RFC 4180) are supported
/// so that files with country names such as "Korea, Republic of" parse.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a header column, or nullopt.
    [[nodiscard]] std::optional<std::size_t> column(std::string_view name) const;
    /// Same, but throws DataError naming the missing column.
    [[nodiscard]] std::size_t require_column(std::string_view name) const;
};

[[nodiscard]] Table parse(std::string_view text, const std::string& source = "<memory>");
[[nodiscard]] Table read_file(const std::filesystem::path& path);

/// Parse an optional numeric cell. Blank cells and the usual missing-value
/// markers ("NA", "NaN", ".") map to nullopt; anything else must parse fully.
[[nodiscard]] std::optional<double> parse_number(std::string_view cell);

[[nodiscard]] std::string escape(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Shortest decimal that round-trips to the same double.
[[nodiscard]] std::string format_full(double value);
/// Fixed six significant digits for human-readable tables.
[[nodiscard]] std::string format_short(double value);

}  // namespace incgap::csv
