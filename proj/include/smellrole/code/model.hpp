#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace smellrole::code {

enum class TypeKind { Class, Interface, Enum };
enum class Visibility { Public, Protected, Package, Private };

const char *to_string(TypeKind kind);
const char *to_string(Visibility visibility);

struct FieldModel {
  std::string name;
  Visibility visibility = Visibility::Package;
  bool is_static = false;
  bool is_final = false;
  std::string type_name;
  bool has_getter = false;
  bool has_setter = false;

  bool operator==(const FieldModel &) const = default;
};

struct MethodModel {
  std::string name;
  std::size_t param_count = 0;
  std::size_t loc = 0;
  std::size_t cyclomatic = 1;
  bool is_static = false;
  bool is_abstract = false;
  bool is_override = false;  // carries @Override
  bool is_final = false;
  bool is_constructor = false;
  Visibility visibility = Visibility::Package;
  std::string return_type;  // empty for constructors
  std::vector<std::string> invoked_names;
  std::size_t max_chain_length = 0;
  std::set<std::string> reads_fields;
  std::set<std::string> writes_fields;
  std::size_t conditionals = 0;  // if, switch, ternary
  std::size_t loops = 0;         // for, while, do
  std::size_t returns = 0;

  bool operator==(const MethodModel &) const = default;
};

/// Structural digest of one top-level Java type. Member and anonymous types
/// declared inside it are folded in: their fields and methods appear here.
struct ClassModel {
  std::string name;
  std::string canonical_key;
  TypeKind kind = TypeKind::Class;
  bool is_abstract = false;  // explicit `abstract`, or an interface
  std::optional<std::string> extends_name;
  std::vector<std::string> implements_names;
  std::vector<FieldModel> fields;
  std::vector<MethodModel> methods;
  std::size_t loc = 1;
  /// Every identifier appearing anywhere inside the declaration.
  std::set<std::string> mentioned_names;
  /// `Qualifier.member` accesses that are not invocations.
  std::set<std::pair<std::string, std::string>> qualified_accesses;

  bool operator==(const ClassModel &) const = default;
};

struct SourceUnit {
  std::string path;
  std::vector<ClassModel> types;

  bool operator==(const SourceUnit &) const = default;
};

}  // namespace smellrole::code
