#pragma once

#include <smellrole/roles/features.hpp>
#include <smellrole/roles/stereotype.hpp>

#include <json.hpp>

#include <array>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace smellrole::roles {

using Distribution = std::array<double, kLabelCount>;

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0;  // x <= threshold goes left
  std::size_t left = 0;
  std::size_t right = 0;
  Distribution distribution{};  // leaves only

  bool operator==(const TreeNode &) const = default;
};

/// Nodes in preorder; nodes[0] is the root.
struct DecisionTree {
  std::vector<TreeNode> nodes;

  bool operator==(const DecisionTree &) const = default;
};

struct Hyperparams {
  std::size_t trees = 100;
  std::size_t max_depth = 0;  // 0 is unlimited
  std::uint64_t seed = 0;
  std::size_t candidate_features = 4;
};

struct ForestModel {
  std::vector<DecisionTree> trees;
  std::uint64_t seed = 0;
  std::size_t tree_count = 0;
  std::size_t max_depth = 0;
  bool oversampled = false;
  std::uint64_t feature_hash = 0;

  bool operator==(const ForestModel &) const = default;
};

/// Bagged CART trees with Gini splits. With one distinct label the result
/// is a constant model and "DegenerateLabels" is added to `warnings`.
/// Throws Error{"InsufficientData"} for an empty example set.
ForestModel train(const std::vector<LabeledExample> &examples,
                  const Hyperparams &params, bool oversample,
                  std::vector<std::string> *warnings = nullptr);

/// Minority labels are topped up to the majority count by drawing
/// duplicates uniformly from their own examples.
std::vector<LabeledExample> oversample(const std::vector<LabeledExample> &examples,
                                       std::uint64_t seed);

struct Prediction {
  Stereotype label = Stereotype::Coordinator;
  Distribution probabilities{};
};

/// Mean of the leaf distributions. Throws Error{"ModelFeatureMismatch"}
/// when the model was trained on a different feature order.
Prediction predict(const ForestModel &model, const FeatureVector &features);

void to_json(nlohmann::json &out, const ForestModel &model);
void from_json(const nlohmann::json &in, ForestModel &model);
std::string serialize(const ForestModel &model);
ForestModel deserialize(const std::string &text);

struct Scores {
  std::array<std::array<std::size_t, kLabelCount>, kLabelCount> confusion{};  // [truth][predicted]
  Distribution precision{};
  Distribution recall{};
  Distribution f1{};
  std::array<std::size_t, kLabelCount> support{};
  double accuracy = 0;
  /// Mean F1 over labels that occur in the truth or the predictions.
  double macro_f1 = 0;
};

Scores score(const std::vector<Stereotype> &truth,
             const std::vector<Stereotype> &predicted);

/// Throws Error{"InsufficientData"} for an empty held-out set.
Scores evaluate(const ForestModel &model, const std::vector<LabeledExample> &heldout);

void write_scores(std::ostream &out, const Scores &scores);

}  // namespace smellrole::roles
