#pragma once

#include <smellrole/code/metrics.hpp>
#include <smellrole/code/model.hpp>
#include <smellrole/roles/stereotype.hpp>

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace smellrole::roles {

inline constexpr std::size_t kFeatureCount = 23;

using FeatureVector = std::array<double, kFeatureCount>;

/// Column names in feature order: loc, nom, numAttr, numPublicMethods, ...
const std::array<std::string_view, kFeatureCount> &feature_names();

/// FNV-1a over the comma-joined feature names.
std::uint64_t feature_order_hash();

FeatureVector extract_features(const code::ClassModel &model,
                               const code::MetricVector &mv);

struct KeyedFeatures {
  std::string canonical_key;
  FeatureVector features{};

  bool operator==(const KeyedFeatures &) const = default;
};

struct LabeledExample {
  std::string canonical_key;
  FeatureVector features{};
  Stereotype label = Stereotype::Coordinator;

  bool operator==(const LabeledExample &) const = default;
};

/// FullClassPath (key + ".java"), Classname, then the 23 features.
void write_features_csv(std::ostream &out, const std::vector<KeyedFeatures> &rows);
std::vector<KeyedFeatures> read_features_csv(std::istream &in);

/// FullClassPath, the 23 feature columns (any order, extra columns
/// ignored) and "label". Throws SchemaMismatch or UnknownLabel.
std::vector<LabeledExample> read_labeled_csv(std::istream &in);
void write_labeled_csv(std::ostream &out, const std::vector<LabeledExample> &rows);

/// FullClassPath without ".java", for joins against canonical keys.
std::string strip_java_suffix(std::string_view full_class_path);

}  // namespace smellrole::roles
