#include <smellrole/smells/catalog.hpp>

#include <smellrole/csv.hpp>
#include <smellrole/error.hpp>

#include <algorithm>
#include <cmath>

namespace smellrole::smells {

const std::array<std::string_view, kSmellCount> &smell_names() {
  static const std::array<std::string_view, kSmellCount> names = {
      "Blob",
      "LongMethod",
      "LazyClass",
      "AntiSingleton",
      "BaseClassKnowsDerivedClass",
      "BaseClassShouldBeAbstract",
      "ClassDataShouldBePrivate",
      "ComplexClass",
      "FunctionalDecomposition",
      "LargeClass",
      "LongParameterList",
      "ManyFieldAttributesButNotComplex",
      "MessageChains",
      "RefusedParentBequest",
      "SpaghettiCode",
      "SpeculativeGenerality",
      "SwissArmyKnife",
      "TraditionBreaker",
  };
  return names;
}

std::optional<std::size_t> smell_index(std::string_view name) {
  const auto &names = smell_names();
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - names.begin());
}

bool is_per_method(std::string_view smell) {
  return smell == "LongMethod" || smell == "LongParameterList" ||
         smell == "MessageChains" || smell == "ComplexClass";
}

SmellCounts &SmellCountTable::row(const std::string &key) {
  return rows.try_emplace(key, SmellCounts{}).first->second;
}

std::string simple_class_name(std::string_view canonical_key) {
  const auto cut = canonical_key.find_last_of(".$");
  return std::string(cut == std::string_view::npos
                         ? canonical_key
                         : canonical_key.substr(cut + 1));
}

void write_smell_csv(std::ostream &out, const SmellCountTable &table) {
  csv::Row header{"FullClassPath", "Classname"};
  for (auto name : smell_names()) {
    header.emplace_back(name);
  }
  csv::write_row(out, header);
  for (const auto &[key, counts] : table.rows) {
    csv::Row row{key + ".java", simple_class_name(key)};
    for (auto count : counts) {
      row.push_back(std::to_string(count));
    }
    csv::write_row(out, row);
  }
}

SmellCountTable read_smell_csv(std::istream &in) {
  const csv::Table table = csv::read(in);
  const auto path_col = table.column("FullClassPath");
  if (!path_col) {
    throw Error("SchemaMismatch", "smell table lacks FullClassPath");
  }
  std::array<std::size_t, kSmellCount> columns{};
  for (std::size_t s = 0; s < kSmellCount; ++s) {
    const auto col = table.column(smell_names()[s]);
    if (!col) {
      throw Error("SchemaMismatch",
                  "smell table lacks column " + std::string(smell_names()[s]));
    }
    columns[s] = *col;
  }
  SmellCountTable result;
  for (const auto &row : table.rows) {
    if (row.size() != table.header.size()) {
      throw Error("SchemaMismatch", "ragged smell table row");
    }
    std::string key = row[*path_col];
    if (key.size() > 5 && key.ends_with(".java")) {
      key.resize(key.size() - 5);
    }
    SmellCounts &counts = result.row(key);
    for (std::size_t s = 0; s < kSmellCount; ++s) {
      const double value = csv::parse_number(row[columns[s]]);
      if (value < 0 || value != std::floor(value)) {
        throw Error("SchemaMismatch", "smell count must be a non-negative integer");
      }
      counts[s] = static_cast<std::uint32_t>(value);
    }
  }
  return result;
}

}  // namespace smellrole::smells
