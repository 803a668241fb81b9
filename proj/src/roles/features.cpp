#include <smellrole/roles/features.hpp>

#include <smellrole/csv.hpp>
#include <smellrole/error.hpp>
#include <smellrole/rng.hpp>
#include <smellrole/smells/catalog.hpp>

#include <set>

namespace smellrole::roles {

const std::array<std::string_view, kFeatureCount> &feature_names() {
  static const std::array<std::string_view, kFeatureCount> names = {
      "loc",           "nom",
      "numAttr",       "numPublicMethods",
      "numPrivateAttrs", "numStaticMethods",
      "numStaticAttrs", "numGetters",
      "numSetters",    "avgParams",
      "maxParams",     "totalCC",
      "avgCC",         "numInvocations",
      "numDistinctInvokedNames", "numConditionals",
      "numLoops",      "numReturns",
      "dit",           "numInterfaces",
      "isAbstract",    "accessorRatio",
      "numOverridden"};
  return names;
}

std::uint64_t feature_order_hash() {
  std::string joined;
  for (auto name : feature_names()) {
    joined += joined.empty() ? "" : ",";
    joined += name;
  }
  return fnv1a(joined);
}

FeatureVector extract_features(const code::ClassModel &model,
                               const code::MetricVector &mv) {
  double public_methods = 0;
  double static_methods = 0;
  double getters = 0;
  double setters = 0;
  double invocations = 0;
  double conditionals = 0;
  double loops = 0;
  double returns = 0;
  std::set<std::string> invoked;
  for (const auto &method : model.methods) {
    public_methods += method.visibility == code::Visibility::Public ? 1 : 0;
    static_methods += method.is_static ? 1 : 0;
    getters += code::is_getter(method) ? 1 : 0;
    setters += code::is_setter(method) ? 1 : 0;
    invocations += static_cast<double>(method.invoked_names.size());
    invoked.insert(method.invoked_names.begin(), method.invoked_names.end());
    conditionals += static_cast<double>(method.conditionals);
    loops += static_cast<double>(method.loops);
    returns += static_cast<double>(method.returns);
  }
  double private_attrs = 0;
  double static_attrs = 0;
  for (const auto &field : model.fields) {
    private_attrs += field.visibility == code::Visibility::Private ? 1 : 0;
    static_attrs += field.is_static ? 1 : 0;
  }
  const double nom = static_cast<double>(model.methods.size());
  return {mv.loc,
          nom,
          static_cast<double>(model.fields.size()),
          public_methods,
          private_attrs,
          static_methods,
          static_attrs,
          getters,
          setters,
          mv.avg_params,
          mv.max_params,
          mv.total_cc,
          mv.avg_cc,
          invocations,
          static_cast<double>(invoked.size()),
          conditionals,
          loops,
          returns,
          mv.dit,
          mv.num_interfaces,
          mv.is_abstract ? 1.0 : 0.0,
          nom == 0 ? 0.0 : (getters + setters) / nom,
          mv.num_overridden};
}

std::string strip_java_suffix(std::string_view full_class_path) {
  if (full_class_path.size() > 5 && full_class_path.ends_with(".java")) {
    full_class_path.remove_suffix(5);
  }
  return std::string(full_class_path);
}

namespace {

std::array<std::size_t, kFeatureCount> feature_columns(const csv::Table &table) {
  std::array<std::size_t, kFeatureCount> columns{};
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    const auto col = table.column(feature_names()[f]);
    if (!col) {
      throw Error("SchemaMismatch",
                  "missing feature column " + std::string(feature_names()[f]));
    }
    columns[f] = *col;
  }
  return columns;
}

std::size_t required_column(const csv::Table &table, std::string_view name) {
  const auto col = table.column(name);
  if (!col) {
    throw Error("SchemaMismatch", "missing column " + std::string(name));
  }
  return *col;
}

FeatureVector read_vector(const csv::Row &row,
                          const std::array<std::size_t, kFeatureCount> &columns) {
  FeatureVector values{};
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    values[f] = csv::parse_number(row[columns[f]]);
  }
  return values;
}

void write_header(std::ostream &out, bool with_label) {
  csv::Row header{"FullClassPath", "Classname"};
  for (auto name : feature_names()) {
    header.emplace_back(name);
  }
  if (with_label) {
    header.emplace_back("label");
  }
  csv::write_row(out, header);
}

csv::Row feature_row(const std::string &key, const FeatureVector &values) {
  csv::Row row{key + ".java", smells::simple_class_name(key)};
  for (double v : values) {
    row.push_back(csv::format_number(v));
  }
  return row;
}

}  // namespace

void write_features_csv(std::ostream &out, const std::vector<KeyedFeatures> &rows) {
  write_header(out, false);
  for (const auto &row : rows) {
    csv::write_row(out, feature_row(row.canonical_key, row.features));
  }
}

std::vector<KeyedFeatures> read_features_csv(std::istream &in) {
  const csv::Table table = csv::read(in);
  const std::size_t path = required_column(table, "FullClassPath");
  const auto columns = feature_columns(table);
  std::vector<KeyedFeatures> rows;
  for (const auto &row : table.rows) {
    if (row.size() != table.header.size()) {
      throw Error("SchemaMismatch", "ragged feature row");
    }
    rows.push_back({strip_java_suffix(row[path]), read_vector(row, columns)});
  }
  return rows;
}

std::vector<LabeledExample> read_labeled_csv(std::istream &in) {
  const csv::Table table = csv::read(in);
  const std::size_t path = required_column(table, "FullClassPath");
  const std::size_t label = required_column(table, "label");
  const auto columns = feature_columns(table);
  std::vector<LabeledExample> rows;
  for (const auto &row : table.rows) {
    if (row.size() != table.header.size()) {
      throw Error("SchemaMismatch", "ragged labeled row");
    }
    rows.push_back({strip_java_suffix(row[path]), read_vector(row, columns),
                    require_stereotype(row[label])});
  }
  return rows;
}

void write_labeled_csv(std::ostream &out, const std::vector<LabeledExample> &rows) {
  write_header(out, true);
  for (const auto &row : rows) {
    csv::Row cells = feature_row(row.canonical_key, row.features);
    cells.emplace_back(display_name(row.label));
    csv::write_row(out, cells);
  }
}

}  // namespace smellrole::roles
