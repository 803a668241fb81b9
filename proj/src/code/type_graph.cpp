#include <smellrole/code/type_graph.hpp>

#include <smellrole/error.hpp>

#include <algorithm>

namespace smellrole::code {

namespace {

std::size_t shared_prefix_segments(const std::string &a, const std::string &b) {
  std::size_t segments = 0;
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) {
    if (a[i] == '.') {
      ++segments;
    }
    ++i;
  }
  return segments;
}

}  // namespace

const TypeGraph::NodeInfo *TypeGraph::info(const std::string &key) const {
  auto it = info_.find(key);
  return it == info_.end() ? nullptr : &it->second;
}

std::optional<std::string> TypeGraph::parent(const std::string &key) const {
  auto it = parent_.find(key);
  if (it == parent_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::size_t TypeGraph::depth(const std::string &key) const {
  std::size_t depth = 0;
  std::string current = key;
  while (auto up = parent(current)) {
    current = *up;
    ++depth;
  }
  return depth;
}

std::vector<std::string> TypeGraph::children(const std::string &key) const {
  auto it = children_.find(key);
  return it == children_.end() ? std::vector<std::string>{} : it->second;
}

std::set<std::string> TypeGraph::descendants(const std::string &key) const {
  std::set<std::string> seen;
  std::vector<std::string> stack = children(key);
  while (!stack.empty()) {
    std::string next = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(next).second) {
      continue;
    }
    for (auto &child : children(next)) {
      stack.push_back(std::move(child));
    }
  }
  return seen;
}

std::vector<std::string> TypeGraph::keys_named(
    const std::string &simple_name) const {
  auto it = by_name_.find(simple_name);
  return it == by_name_.end() ? std::vector<std::string>{} : it->second;
}

TypeGraph build_type_graph(const std::vector<SourceUnit> &units) {
  TypeGraph graph;
  std::vector<const ClassModel *> classes;
  for (const auto &unit : units) {
    for (const auto &type : unit.types) {
      classes.push_back(&type);
    }
  }
  std::sort(classes.begin(), classes.end(),
            [](const ClassModel *a, const ClassModel *b) {
              return a->canonical_key < b->canonical_key;
            });

  for (const ClassModel *c : classes) {
    if (!graph.info_.empty() && graph.info_.count(c->canonical_key) != 0) {
      throw Error("DuplicateKey", "duplicate canonical key " + c->canonical_key);
    }
    graph.nodes_.push_back(c->canonical_key);
    graph.by_name_[c->name].push_back(c->canonical_key);

    TypeGraph::NodeInfo node;
    node.name = c->name;
    node.kind = c->kind;
    node.loc = c->loc;
    for (const auto &field : c->fields) {
      if (field.visibility == Visibility::Public && field.is_static &&
          !field.is_final) {
        node.public_static_mutable_fields.insert(field.name);
      }
    }
    for (const auto &method : c->methods) {
      if (!method.is_constructor && !method.is_static && !method.is_final &&
          method.visibility != Visibility::Private) {
        node.overridable_methods.emplace(method.name, method.param_count);
      }
    }
    graph.info_.emplace(c->canonical_key, std::move(node));
  }

  auto resolve = [&](const ClassModel &from,
                     const std::string &name) -> std::optional<std::string> {
    auto candidates = graph.keys_named(name);
    candidates.erase(std::remove(candidates.begin(), candidates.end(),
                                 from.canonical_key),
                     candidates.end());
    if (candidates.empty()) {
      return std::nullopt;
    }
    // keys_named is sorted, so max_element keeps the smallest key on ties.
    return *std::max_element(
        candidates.begin(), candidates.end(),
        [&](const std::string &a, const std::string &b) {
          return shared_prefix_segments(from.canonical_key, a) <
                 shared_prefix_segments(from.canonical_key, b);
        });
  };

  for (const ClassModel *c : classes) {
    if (c->extends_name) {
      if (auto target = resolve(*c, *c->extends_name)) {
        graph.extends_.push_back({c->canonical_key, *target, false});
        graph.parent_[c->canonical_key] = *target;
        graph.children_[*target].push_back(c->canonical_key);
      } else {
        graph.extends_.push_back({c->canonical_key, *c->extends_name, true});
        graph.external_.insert(*c->extends_name);
      }
    }
    for (const auto &name : c->implements_names) {
      if (auto target = resolve(*c, name)) {
        graph.implements_.push_back({c->canonical_key, *target, false});
        graph.children_[*target].push_back(c->canonical_key);
      } else {
        graph.implements_.push_back({c->canonical_key, name, true});
        graph.external_.insert(name);
      }
    }
  }

  for (const auto &key : graph.nodes_) {
    std::set<std::string> chain{key};
    std::string current = key;
    while (auto up = graph.parent(current)) {
      if (!chain.insert(*up).second) {
        throw Error("CycleError", "inheritance cycle through " + key);
      }
      current = *up;
    }
  }
  return graph;
}

}  // namespace smellrole::code
