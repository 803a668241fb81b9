#include <smellrole/dataset/records.hpp>

#include <smellrole/csv.hpp>
#include <smellrole/error.hpp>
#include <smellrole/roles/features.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace smellrole::dataset {

bool FineGrainedRecord::has_smell() const {
  return std::any_of(counts.begin(), counts.end(), [](std::uint32_t c) { return c != 0; });
}

Integration integrate(const smells::SmellCountTable &smell_table,
                      const std::vector<RoleRow> &role_table) {
  std::map<std::string, roles::Stereotype> labels;
  for (const auto &row : role_table) {
    labels.emplace(row.canonical_key, row.label);
  }
  Integration result;
  for (const auto &[key, counts] : smell_table.rows) {
    auto it = labels.find(key);
    if (it == labels.end()) {
      result.smell_only.push_back(key);
      continue;
    }
    FineGrainedRecord record;
    record.canonical_key = key;
    record.class_name = smells::simple_class_name(key);
    record.label = it->second;
    record.counts = counts;
    result.records.push_back(std::move(record));
  }
  for (const auto &[key, label] : labels) {
    if (smell_table.rows.count(key) == 0) {
      result.role_only.push_back(key);
    }
  }
  return result;
}

const Project *project_for_key(const CorpusManifest &manifest, std::string_view key) {
  const std::string_view head = key.substr(0, key.find('.'));
  for (const auto &project : manifest.projects) {
    std::string_view root = project.root_path;
    while (!root.empty() && (root.back() == '/' || root.back() == '\\')) {
      root.remove_suffix(1);
    }
    const auto slash = root.find_last_of("/\\");
    if ((slash == std::string_view::npos ? root : root.substr(slash + 1)) == head) {
      return &project;
    }
  }
  return nullptr;
}

void assign_projects(std::vector<FineGrainedRecord> &records,
                     const CorpusManifest &manifest) {
  for (auto &record : records) {
    if (const Project *project = project_for_key(manifest, record.canonical_key)) {
      record.project = project->name;
      record.kind = project->kind;
    }
  }
}

std::vector<FineGrainedRecord> smelly_only(const std::vector<FineGrainedRecord> &records) {
  std::vector<FineGrainedRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [](const FineGrainedRecord &r) { return r.has_smell(); });
  return out;
}

void write_records_csv(std::ostream &out, const std::vector<FineGrainedRecord> &records) {
  csv::Row header{"FullClassPath", "Classname", "label"};
  for (auto name : smells::smell_names()) {
    header.emplace_back(name);
  }
  header.emplace_back("project");
  header.emplace_back("kind");
  csv::write_row(out, header);
  for (const auto &r : records) {
    csv::Row row{r.canonical_key + ".java", r.class_name,
                 std::string(roles::display_name(r.label))};
    for (auto c : r.counts) {
      row.push_back(std::to_string(c));
    }
    row.push_back(r.project);
    row.emplace_back(r.kind ? to_string(*r.kind) : "");
    csv::write_row(out, row);
  }
}

namespace {

std::size_t required(const csv::Table &table, std::string_view name) {
  const auto col = table.column(name);
  if (!col) {
    throw Error("SchemaMismatch", "missing column " + std::string(name));
  }
  return *col;
}

}  // namespace

std::vector<FineGrainedRecord> read_records_csv(std::istream &in) {
  const csv::Table table = csv::read(in);
  const std::size_t path = required(table, "FullClassPath");
  const std::size_t label = required(table, "label");
  const auto name_col = table.column("Classname");
  const auto project_col = table.column("project");
  const auto kind_col = table.column("kind");
  std::array<std::size_t, smells::kSmellCount> smell_cols{};
  for (std::size_t s = 0; s < smells::kSmellCount; ++s) {
    smell_cols[s] = required(table, smells::smell_names()[s]);
  }
  std::vector<FineGrainedRecord> records;
  for (const auto &row : table.rows) {
    if (row.size() != table.header.size()) {
      throw Error("SchemaMismatch", "ragged record row");
    }
    FineGrainedRecord r;
    r.canonical_key = roles::strip_java_suffix(row[path]);
    r.class_name = name_col ? row[*name_col] : smells::simple_class_name(r.canonical_key);
    r.label = roles::require_stereotype(row[label]);
    for (std::size_t s = 0; s < smells::kSmellCount; ++s) {
      const double value = csv::parse_number(row[smell_cols[s]]);
      if (value < 0 || value != std::floor(value)) {
        throw Error("SchemaMismatch", "smell count must be a non-negative integer");
      }
      r.counts[s] = static_cast<std::uint32_t>(value);
    }
    if (project_col) {
      r.project = row[*project_col];
    }
    if (kind_col && !row[*kind_col].empty()) {
      r.kind = parse_kind(row[*kind_col]);
    }
    records.push_back(std::move(r));
  }
  return records;
}

void write_roles_csv(std::ostream &out, const std::vector<RoleRow> &rows,
                     const std::vector<std::array<double, roles::kLabelCount>> &probabilities) {
  csv::Row header{"FullClassPath", "label"};
  for (std::size_t k = 0; k < roles::kLabelCount; ++k) {
    header.push_back("p" + std::to_string(k));
  }
  csv::write_row(out, header);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv::Row row{rows[i].canonical_key + ".java",
                 std::string(roles::display_name(rows[i].label))};
    for (std::size_t k = 0; k < roles::kLabelCount; ++k) {
      row.push_back(i < probabilities.size() ? csv::format_number(probabilities[i][k]) : "");
    }
    csv::write_row(out, row);
  }
}

std::vector<RoleRow> read_roles_csv(std::istream &in) {
  const csv::Table table = csv::read(in);
  const std::size_t path = required(table, "FullClassPath");
  const std::size_t label = required(table, "label");
  std::vector<RoleRow> rows;
  for (const auto &row : table.rows) {
    if (row.size() != table.header.size()) {
      throw Error("SchemaMismatch", "ragged role row");
    }
    rows.push_back({roles::strip_java_suffix(row[path]), roles::require_stereotype(row[label])});
  }
  return rows;
}

void write_unmatched(std::ostream &out, const Integration &integration) {
  out << "# keys present in only one table\n";
  for (const auto &key : integration.smell_only) {
    out << "smells-only\t" << key << "\n";
  }
  for (const auto &key : integration.role_only) {
    out << "roles-only\t" << key << "\n";
  }
}

}  // namespace smellrole::dataset
