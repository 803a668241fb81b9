#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace smellrole::smells {

inline constexpr std::size_t kSmellCount = 18;

/// The 18 smell names in table column order (Blob, LongMethod, LazyClass,
/// then the rest alphabetically).
const std::array<std::string_view, kSmellCount> &smell_names();
std::optional<std::size_t> smell_index(std::string_view name);

/// LongMethod, LongParameterList, MessageChains and ComplexClass count
/// offending methods rather than classes.
bool is_per_method(std::string_view smell);

using SmellCounts = std::array<std::uint32_t, kSmellCount>;

/// Occurrence counts per class, ordered by canonical key.
struct SmellCountTable {
  std::map<std::string, SmellCounts> rows;

  /// Adds a zero row for `key` if absent and returns it.
  SmellCounts &row(const std::string &key);
  bool operator==(const SmellCountTable &) const = default;
};

/// "a.b.C$D" -> "D"; "a.b.C" -> "C".
std::string simple_class_name(std::string_view canonical_key);

/// FullClassPath (key + ".java"), Classname, then one column per smell.
void write_smell_csv(std::ostream &out, const SmellCountTable &table);
SmellCountTable read_smell_csv(std::istream &in);

}  // namespace smellrole::smells
