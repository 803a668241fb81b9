#include <smellrole/code/metrics.hpp>

#include <smellrole/csv.hpp>
#include <smellrole/error.hpp>

#include <algorithm>
#include <cctype>
#include <set>

namespace smellrole::code {

const std::vector<MetricField> &metric_fields() {
  using M = MetricVector;
  static const std::vector<MetricField> fields = {
      {"loc", &M::loc},
      {"nom", &M::nom},
      {"nof", &M::nof},
      {"maxParams", &M::max_params},
      {"avgParams", &M::avg_params},
      {"maxCC", &M::max_cc},
      {"totalCC", &M::total_cc},
      {"avgCC", &M::avg_cc},
      {"lcomFraction", &M::lcom_fraction},
      {"dit", &M::dit},
      {"noChildren", &M::no_children},
      {"numInterfaces", &M::num_interfaces},
      {"numPublicInstanceFields", &M::num_public_instance_fields},
      {"numPublicStaticMutableFields", &M::num_public_static_mutable_fields},
      {"maxChainLength", &M::max_chain_length},
      {"numOverridden", &M::num_overridden},
      {"numAccessors", &M::num_accessors},
      {"numLongNoParamMethods", &M::num_long_no_param_methods},
      {"usesForeignGlobals", nullptr, &M::uses_foreign_globals},
      {"referencesDerivedType", nullptr, &M::references_derived_type},
      {"isAbstract", nullptr, &M::is_abstract},
      {"parentLoc", &M::parent_loc},
      {"maxMethodLoc", &M::max_method_loc},
      {"overriddenRatio", &M::overridden_ratio},
  };
  return fields;
}

std::optional<MetricField> find_metric(std::string_view name) {
  static const std::vector<std::pair<std::string_view, std::string_view>>
      aliases = {{"NOParam", "maxParams"}, {"LOC_CLASS", "loc"},
                 {"LOC_METHOD", "maxMethodLoc"}, {"NMD", "nom"},
                 {"NAD", "nof"}, {"DIT", "dit"}};
  for (const auto &[alias, target] : aliases) {
    if (alias == name) {
      name = target;
      break;
    }
  }
  for (const auto &field : metric_fields()) {
    if (field.name == name) {
      return field;
    }
  }
  return std::nullopt;
}

MetricVector with_method_values(MetricVector mv, const MethodModel &method) {
  mv.max_params = static_cast<double>(method.param_count);
  mv.max_cc = static_cast<double>(method.cyclomatic);
  mv.max_chain_length = static_cast<double>(method.max_chain_length);
  mv.max_method_loc = static_cast<double>(method.loc);
  return mv;
}

std::string accessor_target(std::string_view name) {
  for (std::string_view prefix : {"get", "set", "is"}) {
    if (name.size() > prefix.size() && name.substr(0, prefix.size()) == prefix &&
        std::isupper(static_cast<unsigned char>(name[prefix.size()]))) {
      std::string target(name.substr(prefix.size()));
      target[0] = static_cast<char>(
          std::tolower(static_cast<unsigned char>(target[0])));
      return target;
    }
  }
  return {};
}

bool is_getter(const MethodModel &method) {
  if (method.is_constructor || method.is_static || method.param_count != 0 ||
      method.return_type == "void") {
    return false;
  }
  const std::string_view name = method.name;
  return !accessor_target(name).empty() && name.substr(0, 3) != "set";
}

bool is_setter(const MethodModel &method) {
  return !method.is_constructor && !method.is_static &&
         method.param_count == 1 && method.name.substr(0, 3) == "set" &&
         !accessor_target(method.name).empty();
}

namespace {

std::set<std::string> touched_fields(const MethodModel &method) {
  std::set<std::string> touched = method.reads_fields;
  touched.insert(method.writes_fields.begin(), method.writes_fields.end());
  return touched;
}

bool share_any(const std::set<std::string> &a, const std::set<std::string> &b) {
  return std::any_of(a.begin(), a.end(),
                     [&](const std::string &x) { return b.count(x) != 0; });
}

double lcom_fraction(const ClassModel &model) {
  const std::size_t n = model.methods.size();
  if (n < 2) {
    return 0.0;
  }
  std::vector<std::set<std::string>> touched;
  touched.reserve(n);
  for (const auto &method : model.methods) {
    touched.push_back(touched_fields(method));
  }
  std::size_t disjoint = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!share_any(touched[i], touched[j])) {
        ++disjoint;
      }
    }
  }
  return static_cast<double>(disjoint) / (static_cast<double>(n * (n - 1)) / 2.0);
}

}  // namespace

MetricVector compute_metrics(const ClassModel &model, const TypeGraph &graph) {
  MetricVector mv;
  const std::string &key = model.canonical_key;
  mv.loc = static_cast<double>(model.loc);
  mv.nom = static_cast<double>(model.methods.size());
  mv.nof = static_cast<double>(model.fields.size());

  double param_sum = 0;
  for (const auto &method : model.methods) {
    const auto params = static_cast<double>(method.param_count);
    const auto cc = static_cast<double>(method.cyclomatic);
    const auto loc = static_cast<double>(method.loc);
    param_sum += params;
    mv.max_params = std::max(mv.max_params, params);
    mv.max_cc = std::max(mv.max_cc, cc);
    mv.total_cc += cc;
    mv.max_chain_length = std::max(
        mv.max_chain_length, static_cast<double>(method.max_chain_length));
    mv.max_method_loc = std::max(mv.max_method_loc, loc);
    if (is_getter(method) || is_setter(method)) {
      mv.num_accessors += 1;
    }
    if (method.loc >= 60 && method.param_count == 0) {
      mv.num_long_no_param_methods += 1;
    }
  }
  if (!model.methods.empty()) {
    mv.avg_params = param_sum / mv.nom;
    mv.avg_cc = mv.total_cc / mv.nom;
  }
  mv.lcom_fraction = lcom_fraction(model);

  for (const auto &field : model.fields) {
    if (field.visibility != Visibility::Public || field.is_final) {
      continue;
    }
    if (field.is_static) {
      mv.num_public_static_mutable_fields += 1;
    } else {
      mv.num_public_instance_fields += 1;
    }
  }

  mv.dit = static_cast<double>(graph.depth(key));
  mv.no_children = static_cast<double>(graph.children(key).size());
  mv.num_interfaces = static_cast<double>(model.implements_names.size());
  mv.is_abstract = model.is_abstract;

  // Overrides: @Override, or a signature inherited from a corpus ancestor.
  std::set<std::pair<std::string, std::size_t>> inherited;
  const TypeGraph::NodeInfo *parent_info = nullptr;
  if (auto parent = graph.parent(key)) {
    parent_info = graph.info(*parent);
    mv.parent_loc = static_cast<double>(parent_info->loc);
    std::optional<std::string> ancestor = parent;
    while (ancestor) {
      const auto &methods = graph.info(*ancestor)->overridable_methods;
      inherited.insert(methods.begin(), methods.end());
      ancestor = graph.parent(*ancestor);
    }
  }
  std::size_t parent_overridden = 0;
  for (const auto &method : model.methods) {
    if (method.is_constructor || method.is_static) {
      continue;
    }
    const std::pair<std::string, std::size_t> signature{method.name,
                                                        method.param_count};
    if (method.is_override || inherited.count(signature) != 0) {
      mv.num_overridden += 1;
    }
    if (parent_info != nullptr &&
        parent_info->overridable_methods.count(signature) != 0) {
      ++parent_overridden;
    }
  }
  if (parent_info != nullptr && !parent_info->overridable_methods.empty()) {
    mv.overridden_ratio =
        static_cast<double>(parent_overridden) /
        static_cast<double>(parent_info->overridable_methods.size());
  }

  for (const auto &[qualifier, member] : model.qualified_accesses) {
    for (const auto &owner : graph.keys_named(qualifier)) {
      if (owner != key &&
          graph.info(owner)->public_static_mutable_fields.count(member) != 0) {
        mv.uses_foreign_globals = true;
      }
    }
  }
  for (const auto &descendant : graph.descendants(key)) {
    if (model.mentioned_names.count(graph.info(descendant)->name) != 0) {
      mv.references_derived_type = true;
    }
  }
  return mv;
}

void write_metrics_csv(std::ostream &out, const KeyedMetrics &rows) {
  csv::Row header{"canonicalKey"};
  for (const auto &field : metric_fields()) {
    header.emplace_back(field.name);
  }
  csv::write_row(out, header);
  for (const auto &[key, mv] : rows) {
    csv::Row row{key};
    for (const auto &field : metric_fields()) {
      row.push_back(csv::format_number(field.get(mv)));
    }
    csv::write_row(out, row);
  }
}

KeyedMetrics read_metrics_csv(std::istream &in) {
  const csv::Table table = csv::read(in);
  const auto &fields = metric_fields();
  if (table.header.size() != fields.size() + 1 ||
      table.header[0] != "canonicalKey") {
    throw Error("SchemaMismatch", "unexpected metrics header");
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (table.header[i + 1] != fields[i].name) {
      throw Error("SchemaMismatch",
                  "unexpected metrics column " + table.header[i + 1]);
    }
  }
  KeyedMetrics rows;
  for (const auto &row : table.rows) {
    if (row.size() != table.header.size()) {
      throw Error("SchemaMismatch", "ragged metrics row");
    }
    MetricVector mv;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const double value = csv::parse_number(row[i + 1]);
      if (fields[i].number != nullptr) {
        mv.*(fields[i].number) = value;
      } else {
        mv.*(fields[i].flag) = value != 0.0;
      }
    }
    rows.emplace_back(row[0], mv);
  }
  return rows;
}

}  // namespace smellrole::code
