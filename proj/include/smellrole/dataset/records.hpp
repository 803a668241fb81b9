#pragma once

#include <smellrole/dataset/manifest.hpp>
#include <smellrole/roles/stereotype.hpp>
#include <smellrole/smells/catalog.hpp>

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace smellrole::dataset {

/// One class carrying both its role stereotype and its smell counts.
struct FineGrainedRecord {
  std::string canonical_key;
  std::string class_name;
  std::string project;
  std::optional<Kind> kind;
  roles::Stereotype label = roles::Stereotype::Coordinator;
  smells::SmellCounts counts{};

  [[nodiscard]] bool has_smell() const;
  bool operator==(const FineGrainedRecord &) const = default;
};

struct RoleRow {
  std::string canonical_key;
  roles::Stereotype label = roles::Stereotype::Coordinator;

  bool operator==(const RoleRow &) const = default;
};

struct Integration {
  std::vector<FineGrainedRecord> records;  // sorted by canonical key
  std::vector<std::string> smell_only;     // keys without a role
  std::vector<std::string> role_only;      // keys without smell data
};

/// Inner join on canonical key. Classes with no smell are kept. For
/// repeated role keys the first row wins.
Integration integrate(const smells::SmellCountTable &smell_table,
                      const std::vector<RoleRow> &role_table);

/// Project whose root directory name is the first segment of `key`.
const Project *project_for_key(const CorpusManifest &manifest, std::string_view key);

/// Fills project and kind from the project whose root directory name is
/// the first key segment. Records of unknown projects are left untouched.
void assign_projects(std::vector<FineGrainedRecord> &records,
                     const CorpusManifest &manifest);

/// Records with at least one smell.
std::vector<FineGrainedRecord> smelly_only(const std::vector<FineGrainedRecord> &records);

/// FullClassPath, Classname, label, the 18 smells, project, kind. On
/// import, project and kind are optional.
void write_records_csv(std::ostream &out, const std::vector<FineGrainedRecord> &records);
std::vector<FineGrainedRecord> read_records_csv(std::istream &in);

/// FullClassPath, label, then one probability column per stereotype.
void write_roles_csv(std::ostream &out, const std::vector<RoleRow> &rows,
                     const std::vector<std::array<double, roles::kLabelCount>> &probabilities);
std::vector<RoleRow> read_roles_csv(std::istream &in);

void write_unmatched(std::ostream &out, const Integration &integration);

}  // namespace smellrole::dataset
