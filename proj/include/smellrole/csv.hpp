#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace smellrole::csv {

using Row = std::vector<std::string>;

/// A parsed CSV document. Leading lines starting with '#' are kept as
/// preamble (artifact schema lines) and are not part of the header.
struct Table {
  std::vector<std::string> preamble;
  Row header;
  std::vector<Row> rows;

  /// Index of a header column, or nullopt.
  [[nodiscard]] std::optional<std::size_t> column(std::string_view name) const;
};

/// RFC 4180 reader. Quoted fields may contain commas, quotes and newlines.
Table read(std::istream &in);
Table read_string(std::string_view text);
Table read_file(const std::string &path);

void write_row(std::ostream &out, const Row &row);
std::string quote(std::string_view field);

/// Shortest round-trip decimal text for a double ("9" stays "9").
std::string format_number(double value);
/// Fixed two-decimal presentation ("33.33").
std::string format_percent(double value);

double parse_number(std::string_view text);

}  // namespace smellrole::csv
