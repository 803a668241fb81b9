#pragma once

#include <smellrole/code/model.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace smellrole::code {

/// Corpus-wide inheritance structure. Nodes are canonical keys; supertypes
/// that do not resolve inside the corpus are kept by simple name.
class TypeGraph {
 public:
  struct Edge {
    std::string from;  // subtype key
    std::string to;    // supertype key, or the external simple name
    bool external = false;

    bool operator==(const Edge &) const = default;
  };

  /// Per-node facts that metric computation needs about *other* classes.
  struct NodeInfo {
    std::string name;
    TypeKind kind = TypeKind::Class;
    std::size_t loc = 0;
    std::set<std::string> public_static_mutable_fields;
    /// (name, paramCount) of non-private, non-static, non-final,
    /// non-constructor methods.
    std::set<std::pair<std::string, std::size_t>> overridable_methods;
  };

  [[nodiscard]] const std::vector<std::string> &nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<Edge> &extends_edges() const {
    return extends_;
  }
  [[nodiscard]] const std::vector<Edge> &implements_edges() const {
    return implements_;
  }
  [[nodiscard]] const std::set<std::string> &external_names() const {
    return external_;
  }

  [[nodiscard]] const NodeInfo *info(const std::string &key) const;
  /// Corpus-local parent via `extends`, if any.
  [[nodiscard]] std::optional<std::string> parent(const std::string &key) const;
  /// Length of the corpus-local extends chain.
  [[nodiscard]] std::size_t depth(const std::string &key) const;
  /// Direct subtypes: extending classes, or implementors / extending
  /// interfaces of an interface.
  [[nodiscard]] std::vector<std::string> children(const std::string &key) const;
  /// All transitive subtypes.
  [[nodiscard]] std::set<std::string> descendants(const std::string &key) const;
  /// Keys of corpus classes with this simple name.
  [[nodiscard]] std::vector<std::string> keys_named(
      const std::string &simple_name) const;

  friend TypeGraph build_type_graph(const std::vector<SourceUnit> &units);

 private:
  std::vector<std::string> nodes_;
  std::vector<Edge> extends_;
  std::vector<Edge> implements_;
  std::set<std::string> external_;
  std::map<std::string, NodeInfo> info_;
  std::map<std::string, std::string> parent_;
  std::map<std::string, std::vector<std::string>> children_;
  std::map<std::string, std::vector<std::string>> by_name_;
};

/// Resolves supertypes by simple name, preferring the candidate sharing the
/// longest dotted key prefix with the subtype. Throws Error{"CycleError"} if
/// extends edges form a cycle and Error{"DuplicateKey"} on key collisions.
TypeGraph build_type_graph(const std::vector<SourceUnit> &units);

}  // namespace smellrole::code
