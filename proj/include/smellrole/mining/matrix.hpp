#pragma once

#include <smellrole/dataset/records.hpp>
#include <smellrole/smells/catalog.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace smellrole::mining {

/// 0/1 cells with unique row and column labels.
struct BinaryMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;
  std::vector<std::vector<std::uint8_t>> cells;

  std::size_t rows() const { return cells.size(); }
  std::size_t cols() const { return column_labels.size(); }
  bool operator==(const BinaryMatrix &) const = default;
};

/// Throws Error{"BadMatrix"} for ragged rows, non 0/1 cells or duplicate labels.
void validate(const BinaryMatrix &m);

/// One row per class, one column per smell; cell 1 iff the count is at least 1.
BinaryMatrix binarize(const smells::SmellCountTable &table);
BinaryMatrix binarize(const std::vector<dataset::FineGrainedRecord> &records);

}  // namespace smellrole::mining
