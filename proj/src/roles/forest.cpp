#include <smellrole/roles/forest.hpp>

#include <smellrole/error.hpp>
#include <smellrole/rng.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <utility>

namespace smellrole::roles {

namespace {

using Counts = std::array<double, kLabelCount>;

std::size_t label_index(Stereotype label) { return static_cast<std::size_t>(label); }

bool is_pure(const Counts &counts) {
  return std::count_if(counts.begin(), counts.end(), [](double c) { return c > 0; }) <= 1;
}

// n * gini(n) = n - sum(c^2) / n
double weighted_gini(const Counts &counts, double n) {
  if (n == 0) {
    return 0;
  }
  double squares = 0;
  for (double c : counts) {
    squares += c * c;
  }
  return n - squares / n;
}

struct Split {
  bool found = false;
  int feature = -1;
  double threshold = 0;
  double impurity = 0;
};

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<LabeledExample> &data, const Hyperparams &params,
              std::uint64_t seed)
      : data_(data), params_(params), rng_(seed) {}

  DecisionTree build(std::vector<std::size_t> samples) {
    grow(std::move(samples), 0);
    return std::move(tree_);
  }

 private:
  Counts count(const std::vector<std::size_t> &samples) const {
    Counts counts{};
    for (auto s : samples) {
      counts[label_index(data_[s].label)] += 1;
    }
    return counts;
  }

  // Best threshold on one feature; found == false if the feature is constant.
  Split best_on(const std::vector<std::size_t> &samples, std::size_t feature) const {
    std::vector<std::pair<double, std::size_t>> column;
    column.reserve(samples.size());
    for (auto s : samples) {
      column.emplace_back(data_[s].features[feature], label_index(data_[s].label));
    }
    std::sort(column.begin(), column.end());
    Counts left{};
    Counts right{};
    for (const auto &[value, label] : column) {
      right[label] += 1;
    }
    Split best;
    const double n = static_cast<double>(column.size());
    for (std::size_t i = 0; i + 1 < column.size(); ++i) {
      left[column[i].second] += 1;
      right[column[i].second] -= 1;
      const double lo = column[i].first;
      const double hi = column[i + 1].first;
      if (lo == hi) {
        continue;
      }
      const double nl = static_cast<double>(i + 1);
      const double impurity = weighted_gini(left, nl) + weighted_gini(right, n - nl);
      if (!best.found || impurity < best.impurity) {
        double threshold = lo + (hi - lo) / 2;
        if (!(threshold < hi)) {
          threshold = lo;
        }
        best = {true, static_cast<int>(feature), threshold, impurity};
      }
    }
    return best;
  }

  Split choose(const std::vector<std::size_t> &samples) {
    std::array<std::size_t, kFeatureCount> order{};
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = kFeatureCount - 1; i > 0; --i) {
      std::swap(order[i], order[rng_.below(i + 1)]);
    }
    // Constant features do not use up a candidate slot.
    Split best;
    std::size_t informative = 0;
    const std::size_t wanted = std::max<std::size_t>(1, params_.candidate_features);
    for (std::size_t feature : order) {
      Split split = best_on(samples, feature);
      if (!split.found) {
        continue;
      }
      if (!best.found || split.impurity < best.impurity) {
        best = split;
      }
      if (++informative == wanted) {
        break;
      }
    }
    return best;
  }

  std::size_t grow(std::vector<std::size_t> samples, std::size_t depth) {
    const std::size_t index = tree_.nodes.size();
    tree_.nodes.emplace_back();
    const Counts counts = count(samples);
    const bool depth_limited = params_.max_depth != 0 && depth >= params_.max_depth;
    Split split;
    if (!depth_limited && samples.size() >= 2 && !is_pure(counts)) {
      split = choose(samples);
    }
    if (!split.found) {
      TreeNode &leaf = tree_.nodes[index];
      const double n = static_cast<double>(samples.size());
      for (std::size_t k = 0; k < kLabelCount; ++k) {
        leaf.distribution[k] = counts[k] / n;
      }
      return index;
    }
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (auto s : samples) {
      (data_[s].features[static_cast<std::size_t>(split.feature)] <= split.threshold ? left : right)
          .push_back(s);
    }
    samples.clear();
    samples.shrink_to_fit();
    const std::size_t l = grow(std::move(left), depth + 1);
    const std::size_t r = grow(std::move(right), depth + 1);
    TreeNode &node = tree_.nodes[index];
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.left = l;
    node.right = r;
    return index;
  }

  const std::vector<LabeledExample> &data_;
  const Hyperparams &params_;
  Rng rng_;
  DecisionTree tree_;
};

nlohmann::json node_to_json(const DecisionTree &tree, std::size_t index) {
  const TreeNode &node = tree.nodes[index];
  if (node.feature < 0) {
    return {{"leaf", node.distribution}};
  }
  return {{"feature", node.feature},
          {"threshold", node.threshold},
          {"left", node_to_json(tree, node.left)},
          {"right", node_to_json(tree, node.right)}};
}

std::size_t node_from_json(const nlohmann::json &in, DecisionTree &tree) {
  const std::size_t index = tree.nodes.size();
  tree.nodes.emplace_back();
  if (in.contains("leaf")) {
    const auto distribution = in.at("leaf").get<std::vector<double>>();
    if (distribution.size() != kLabelCount) {
      throw Error("ModelFormat", "leaf distribution must have 6 entries");
    }
    double sum = 0;
    for (std::size_t k = 0; k < kLabelCount; ++k) {
      tree.nodes[index].distribution[k] = distribution[k];
      sum += distribution[k];
    }
    if (std::fabs(sum - 1.0) > 1e-9) {
      throw Error("ModelFormat", "leaf distribution does not sum to 1");
    }
    return index;
  }
  const int feature = in.at("feature").get<int>();
  if (feature < 0 || feature >= static_cast<int>(kFeatureCount)) {
    throw Error("ModelFormat", "split feature index out of range");
  }
  const double threshold = in.at("threshold").get<double>();
  const std::size_t left = node_from_json(in.at("left"), tree);
  const std::size_t right = node_from_json(in.at("right"), tree);
  TreeNode &node = tree.nodes[index];
  node.feature = feature;
  node.threshold = threshold;
  node.left = left;
  node.right = right;
  return index;
}

}  // namespace

std::vector<LabeledExample> oversample(const std::vector<LabeledExample> &examples,
                                       std::uint64_t seed) {
  std::array<std::vector<std::size_t>, kLabelCount> by_label;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    by_label[label_index(examples[i].label)].push_back(i);
  }
  std::size_t majority = 0;
  for (const auto &members : by_label) {
    majority = std::max(majority, members.size());
  }
  Rng rng(seed);
  std::vector<LabeledExample> out = examples;
  for (const auto &members : by_label) {
    if (members.empty()) {
      continue;
    }
    for (std::size_t k = members.size(); k < majority; ++k) {
      out.push_back(examples[members[rng.below(members.size())]]);
    }
  }
  return out;
}

ForestModel train(const std::vector<LabeledExample> &examples,
                  const Hyperparams &params, bool oversample_minority,
                  std::vector<std::string> *warnings) {
  if (examples.empty()) {
    throw Error("InsufficientData", "no labeled examples");
  }
  if (params.trees == 0) {
    throw Error("InsufficientData", "a forest needs at least one tree");
  }
  std::array<std::size_t, kLabelCount> present{};
  for (const auto &e : examples) {
    present[label_index(e.label)] = 1;
  }
  if (std::accumulate(present.begin(), present.end(), std::size_t{0}) < 2 &&
      warnings != nullptr) {
    warnings->push_back("DegenerateLabels: only one label in the training data; "
                        "the model is constant");
  }

  const std::vector<LabeledExample> data =
      oversample_minority ? oversample(examples, stage_seed(params.seed, "oversample"))
                          : examples;
  ForestModel model;
  model.seed = params.seed;
  model.tree_count = params.trees;
  model.max_depth = params.max_depth;
  model.oversampled = oversample_minority;
  model.feature_hash = feature_order_hash();
  const std::uint64_t base = stage_seed(params.seed, "forest");
  for (std::size_t t = 0; t < params.trees; ++t) {
    const std::uint64_t tree_seed = base + t;
    Rng bootstrap(tree_seed);
    std::vector<std::size_t> samples(data.size());
    for (auto &s : samples) {
      s = bootstrap.below(data.size());
    }
    // Split draws use a stream distinct from the bootstrap draws.
    TreeBuilder builder(data, params, fnv1a("split") ^ tree_seed);
    model.trees.push_back(builder.build(std::move(samples)));
  }
  return model;
}

Prediction predict(const ForestModel &model, const FeatureVector &features) {
  if (model.feature_hash != feature_order_hash()) {
    throw Error("ModelFeatureMismatch",
                "model was trained on a different feature order");
  }
  if (model.trees.empty()) {
    throw Error("ModelFormat", "model has no trees");
  }
  Prediction prediction;
  for (const auto &tree : model.trees) {
    std::size_t index = 0;
    while (tree.nodes[index].feature >= 0) {
      const TreeNode &node = tree.nodes[index];
      index = features[static_cast<std::size_t>(node.feature)] <= node.threshold
                  ? node.left
                  : node.right;
    }
    for (std::size_t k = 0; k < kLabelCount; ++k) {
      prediction.probabilities[k] += tree.nodes[index].distribution[k];
    }
  }
  std::size_t best = 0;
  for (std::size_t k = 0; k < kLabelCount; ++k) {
    prediction.probabilities[k] /= static_cast<double>(model.trees.size());
    if (prediction.probabilities[k] > prediction.probabilities[best]) {
      best = k;
    }
  }
  prediction.label = static_cast<Stereotype>(best);
  return prediction;
}

void to_json(nlohmann::json &out, const ForestModel &model) {
  std::vector<std::string> labels;
  for (auto label : all_stereotypes()) {
    labels.emplace_back(identifier(label));
  }
  std::vector<std::string> features(feature_names().begin(), feature_names().end());
  nlohmann::json trees = nlohmann::json::array();
  for (const auto &tree : model.trees) {
    trees.push_back(node_to_json(tree, 0));
  }
  out = {{"format", "smellrole-forest"},
         {"version", 1},
         {"seed", model.seed},
         {"treeCount", model.tree_count},
         {"maxDepth", model.max_depth},
         {"oversampled", model.oversampled},
         {"featureOrderHash", model.feature_hash},
         {"features", features},
         {"labels", labels},
         {"trees", trees}};
}

void from_json(const nlohmann::json &in, ForestModel &model) {
  if (in.value("format", "") != "smellrole-forest") {
    throw Error("ModelFormat", "not a forest model document");
  }
  model = ForestModel{};
  model.seed = in.at("seed").get<std::uint64_t>();
  model.tree_count = in.at("treeCount").get<std::size_t>();
  model.max_depth = in.at("maxDepth").get<std::size_t>();
  model.oversampled = in.at("oversampled").get<bool>();
  model.feature_hash = in.at("featureOrderHash").get<std::uint64_t>();
  for (const auto &tree_json : in.at("trees")) {
    DecisionTree tree;
    node_from_json(tree_json, tree);
    model.trees.push_back(std::move(tree));
  }
}

std::string serialize(const ForestModel &model) {
  nlohmann::json document;
  to_json(document, model);
  return document.dump() + "\n";
}

ForestModel deserialize(const std::string &text) {
  nlohmann::json document;
  try {
    document = nlohmann::json::parse(text);
    return document.get<ForestModel>();
  } catch (const nlohmann::json::exception &error) {
    throw Error("ModelFormat", std::string("malformed model: ") + error.what());
  }
}

Scores score(const std::vector<Stereotype> &truth,
             const std::vector<Stereotype> &predicted) {
  if (truth.empty() || truth.size() != predicted.size()) {
    throw Error("InsufficientData", "score needs equally sized, non-empty label lists");
  }
  Scores s;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++s.confusion[label_index(truth[i])][label_index(predicted[i])];
    correct += truth[i] == predicted[i] ? 1 : 0;
  }
  s.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
  double f1_sum = 0;
  std::size_t labels_seen = 0;
  for (std::size_t k = 0; k < kLabelCount; ++k) {
    std::size_t predicted_k = 0;
    for (std::size_t t = 0; t < kLabelCount; ++t) {
      s.support[k] += s.confusion[k][t];
      predicted_k += s.confusion[t][k];
    }
    const double tp = static_cast<double>(s.confusion[k][k]);
    s.precision[k] = predicted_k == 0 ? 0 : tp / static_cast<double>(predicted_k);
    s.recall[k] = s.support[k] == 0 ? 0 : tp / static_cast<double>(s.support[k]);
    const double pr = s.precision[k] + s.recall[k];
    s.f1[k] = pr == 0 ? 0 : 2 * s.precision[k] * s.recall[k] / pr;
    if (s.support[k] != 0 || predicted_k != 0) {
      f1_sum += s.f1[k];
      ++labels_seen;
    }
  }
  s.macro_f1 = f1_sum / static_cast<double>(labels_seen);
  return s;
}

Scores evaluate(const ForestModel &model, const std::vector<LabeledExample> &heldout) {
  if (heldout.empty()) {
    throw Error("InsufficientData", "empty held-out set");
  }
  std::vector<Stereotype> truth;
  std::vector<Stereotype> predicted;
  for (const auto &example : heldout) {
    truth.push_back(example.label);
    predicted.push_back(predict(model, example.features).label);
  }
  return score(truth, predicted);
}

void write_scores(std::ostream &out, const Scores &scores) {
  char line[160];
  std::snprintf(line, sizeof line, "%-20s %9s %9s %9s %8s\n", "label", "precision",
                "recall", "f1", "support");
  out << line;
  for (std::size_t k = 0; k < kLabelCount; ++k) {
    std::snprintf(line, sizeof line, "%-20s %9.4f %9.4f %9.4f %8zu\n",
                  std::string(display_name(static_cast<Stereotype>(k))).c_str(),
                  scores.precision[k], scores.recall[k], scores.f1[k], scores.support[k]);
    out << line;
  }
  std::snprintf(line, sizeof line, "accuracy %.4f\nmacro-F1 %.4f\n", scores.accuracy,
                scores.macro_f1);
  out << line;
}

}  // namespace smellrole::roles
