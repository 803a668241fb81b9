#include <smellrole/mining/matrix.hpp>

#include <smellrole/error.hpp>

#include <set>

namespace smellrole::mining {

namespace {

void check_unique(const std::vector<std::string> &labels, const char *what) {
  std::set<std::string> seen;
  for (const auto &label : labels) {
    if (!seen.insert(label).second) {
      throw Error("BadMatrix", std::string("duplicate ") + what + " label " + label);
    }
  }
}

std::vector<std::string> smell_columns() {
  std::vector<std::string> out;
  for (auto name : smells::smell_names()) {
    out.emplace_back(name);
  }
  return out;
}

std::vector<std::uint8_t> presence(const smells::SmellCounts &counts) {
  std::vector<std::uint8_t> row(counts.size());
  for (std::size_t s = 0; s < counts.size(); ++s) {
    row[s] = counts[s] >= 1 ? 1 : 0;
  }
  return row;
}

}  // namespace

void validate(const BinaryMatrix &m) {
  if (m.row_labels.size() != m.cells.size()) {
    throw Error("BadMatrix", "row label count differs from row count");
  }
  for (const auto &row : m.cells) {
    if (row.size() != m.column_labels.size()) {
      throw Error("BadMatrix", "ragged matrix");
    }
    for (auto cell : row) {
      if (cell > 1) {
        throw Error("BadMatrix", "cell outside {0,1}");
      }
    }
  }
  check_unique(m.row_labels, "row");
  check_unique(m.column_labels, "column");
}

BinaryMatrix binarize(const smells::SmellCountTable &table) {
  BinaryMatrix m;
  m.column_labels = smell_columns();
  for (const auto &[key, counts] : table.rows) {
    m.row_labels.push_back(key);
    m.cells.push_back(presence(counts));
  }
  return m;
}

BinaryMatrix binarize(const std::vector<dataset::FineGrainedRecord> &records) {
  BinaryMatrix m;
  m.column_labels = smell_columns();
  for (const auto &record : records) {
    m.row_labels.push_back(record.canonical_key);
    m.cells.push_back(presence(record.counts));
  }
  return m;
}

}  // namespace smellrole::mining
