#include <smellrole/csv.hpp>

#include <smellrole/error.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace smellrole::csv {

std::optional<std::size_t> Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) {
      return i;
    }
  }
  return std::nullopt;
}

namespace {

// Reads one record; returns false at end of input.
bool read_record(std::istream &in, Row &row) {
  row.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  char c = 0;
  while (in.get(c)) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (!any) {
    return false;
  }
  if (in_quotes) {
    throw Error("SchemaMismatch", "unterminated quoted CSV field");
  }
  row.push_back(std::move(field));
  return true;
}

bool is_blank(const Row &row) { return row.size() == 1 && row[0].empty(); }

}  // namespace

Table read(std::istream &in) {
  Table table;
  Row row;
  bool header_seen = false;
  while (true) {
    if (!header_seen && in.peek() == '#') {
      std::string line;
      std::getline(in, line);
      if (!line.empty() && line.back() == '\r') {
        line.pop_back();
      }
      table.preamble.push_back(line);
      continue;
    }
    if (!read_record(in, row)) {
      break;
    }
    if (is_blank(row)) {
      continue;
    }
    if (!header_seen) {
      table.header = row;
      header_seen = true;
    } else {
      table.rows.push_back(row);
    }
  }
  return table;
}

Table read_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read(in);
}

Table read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("FileNotFound", "cannot open " + path);
  }
  return read(in);
}

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') {
      out += "\"\"";
    } else {
      out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream &out, const Row &row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i != 0) {
      out << ',';
    }
    out << quote(row[i]);
  }
  out << '\n';
}

std::string format_number(double value) {
  if (value == 0.0) {
    return "0";  // also folds -0
  }
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) {
    throw Error("FormatError", "cannot format number");
  }
  return std::string(buffer, end);
}

std::string format_percent(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.2f", value);
  return buffer;
}

double parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') {
    text.remove_prefix(1);
  }
  while (!text.empty() && text.back() == ' ') {
    text.remove_suffix(1);
  }
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error("SchemaMismatch",
                "not a number: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace smellrole::csv
