#include <doctest.h>

#include <smellrole/code/metrics.hpp>
#include <smellrole/code/parser.hpp>
#include <smellrole/code/type_graph.hpp>
#include <smellrole/rng.hpp>
#include <smellrole/roles/features.hpp>
#include <smellrole/roles/forest.hpp>
#include <smellrole/roles/stereotype.hpp>

#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

using namespace smellrole;
using namespace smellrole::roles;

namespace {

// 33 lines of code, six constants, no other fields.
const char *kAuthType = R"(package com.fsck.k9.mail;

public enum AuthType {
    /*
     * The names of these authentication types are saved as strings when
     * settings are exported and are also saved as part of the Server URI.
     */
    PLAIN,
    CRAM_MD5,
    EXTERNAL,
    XOAUTH2,
    AUTOMATIC,
    LOGIN;

    public static AuthType parse(String value) {
        if (value == null) {
            return null;
        }
        for (AuthType type : values()) {
            if (type.name().equalsIgnoreCase(value)) {
                return type;
            }
        }
        throw new IllegalArgumentException(
                "Unknown auth type " + value);
    }

    public boolean isPasswordBased() {
        switch (this) {
            case PLAIN:
            case CRAM_MD5:
            case LOGIN:
                return true;
            default:
                return false;
        }
    }

    public boolean requiresCertificate() {
        return this == EXTERNAL;
    }
}
)";

FeatureVector features_of(const std::string &text, const std::string &path = "p/X.java") {
  std::vector<code::SourceUnit> units{code::parse_source(text, path)};
  const code::TypeGraph graph = code::build_type_graph(units);
  const auto &model = units[0].types[0];
  return extract_features(model, code::compute_metrics(model, graph));
}

std::size_t feature(std::string_view name) {
  const auto &names = feature_names();
  return static_cast<std::size_t>(std::find(names.begin(), names.end(), name) - names.begin());
}

// Two clusters split on feature 0; the other features are noise.
std::vector<LabeledExample> separable(std::uint64_t seed, std::size_t per_side) {
  Rng rng(seed);
  std::vector<LabeledExample> out;
  for (std::size_t i = 0; i < 2 * per_side; ++i) {
    LabeledExample e;
    const bool right = i >= per_side;
    e.canonical_key = "s.C" + std::to_string(i);
    for (auto &v : e.features) v = static_cast<double>(rng.below(1000)) / 10.0;
    e.features[0] = (right ? 100.0 : 0.0) + static_cast<double>(rng.below(50));
    e.label = right ? Stereotype::Controller : Stereotype::InformationHolder;
    out.push_back(e);
  }
  return out;
}

double training_accuracy(const ForestModel &model, const std::vector<LabeledExample> &data) {
  std::size_t correct = 0;
  for (const auto &e : data) correct += predict(model, e.features).label == e.label ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

// Tree topology and split features, ignoring thresholds.
std::vector<int> shape(const ForestModel &model) {
  std::vector<int> out;
  for (const auto &tree : model.trees) {
    for (const auto &node : tree.nodes) {
      out.push_back(node.feature);
      out.push_back(static_cast<int>(node.left));
      out.push_back(static_cast<int>(node.right));
    }
    out.push_back(-9);
  }
  return out;
}

}  // namespace

TEST_CASE("stereotype labels") {
  CHECK(all_stereotypes().size() == 6);
  CHECK(parse_stereotype("Service Provider") == Stereotype::ServiceProvider);
  CHECK(parse_stereotype("ServiceProvider") == Stereotype::ServiceProvider);
  CHECK(parse_stereotype(" information holder ") == Stereotype::InformationHolder);
  CHECK(parse_stereotype("IT") == Stereotype::Interfacer);
  CHECK(parse_stereotype("CT") == Stereotype::Controller);
  CHECK_FALSE(parse_stereotype("Manager").has_value());
  CHECK_THROWS_AS(require_stereotype("Manager"), Error);
  for (auto label : all_stereotypes()) {
    CHECK(parse_stereotype(display_name(label)) == label);
    CHECK(parse_stereotype(identifier(label)) == label);
    CHECK(parse_stereotype(abbreviation(label)) == label);
  }
}

TEST_CASE("extract_features") {
  CHECK(feature_names().size() == 23);
  CHECK(std::set<std::string_view>(feature_names().begin(), feature_names().end()).size() == 23);
  CHECK(feature_names()[0] == "loc");
  CHECK(feature_names()[2] == "numAttr");

  SUBCASE("empty class") {
    const FeatureVector f = features_of("class X {}");
    for (std::size_t i = 1; i < kFeatureCount; ++i) CHECK(f[i] == 0);
  }
  SUBCASE("AuthType-shaped enum") {
    const FeatureVector f = features_of(kAuthType, "k9mail-library/AuthType.java");
    CHECK(f[0] == 33);
    CHECK(f[2] == 6);
    CHECK(f[feature("numStaticAttrs")] == 6);
    CHECK(f[feature("nom")] == 3);
    CHECK(f[feature("numPublicMethods")] == 3);
    CHECK(f[feature("numStaticMethods")] == 1);
  }
  SUBCASE("four getters and two setters among ten methods") {
    const FeatureVector f = features_of(R"(class Bean {
      private int a; private int b; private String c; private boolean d;
      public int getA() { return a; }
      public int getB() { return b; }
      public String getC() { return c; }
      public boolean isD() { return d; }
      public void setA(int v) { a = v; }
      public void setB(int v) { b = v; }
      public void reset() { a = 0; b = 0; }
      public int sum(int x) { return a + b + x; }
      void log() { System.out.println(c); }
      private boolean check() { if (d) { return a > b; } return false; }
    })");
    CHECK(f[feature("nom")] == 10);
    CHECK(f[feature("numGetters")] == 4);
    CHECK(f[feature("numSetters")] == 2);
    CHECK(f[feature("accessorRatio")] == doctest::Approx(0.6));
    CHECK(f[feature("numPrivateAttrs")] == 4);
    CHECK(f[feature("numPublicMethods")] == 8);
    CHECK(f[feature("numConditionals")] == 1);
    CHECK(f[feature("numReturns")] == 7);
  }
  SUBCASE("invocations") {
    const FeatureVector f = features_of(
        "class X { void a() { b(); b(); c(); } void b() { c(); } void c() {} }");
    CHECK(f[feature("numInvocations")] == 4);
    CHECK(f[feature("numDistinctInvokedNames")] == 2);
  }
  SUBCASE("deterministic") {
    CHECK(features_of(kAuthType) == features_of(kAuthType));
  }
}

TEST_CASE("feature and labeled CSV round trips") {
  std::vector<LabeledExample> rows = separable(3, 4);
  rows[0].features[9] = 1.0 / 3.0;
  std::stringstream labeled;
  write_labeled_csv(labeled, rows);
  CHECK(labeled.str().find("Information Holder") != std::string::npos);
  CHECK(read_labeled_csv(labeled) == rows);

  std::vector<KeyedFeatures> keyed;
  for (const auto &r : rows) keyed.push_back({r.canonical_key, r.features});
  std::stringstream plain;
  write_features_csv(plain, keyed);
  CHECK(read_features_csv(plain) == keyed);

  std::stringstream bad("FullClassPath,loc,label\na.B.java,3,Controller\n");
  CHECK_THROWS_AS(read_labeled_csv(bad), Error);
}

TEST_CASE("train") {
  SUBCASE("single label gives a constant model") {
    std::vector<LabeledExample> data = separable(1, 5);
    for (auto &e : data) e.label = Stereotype::ServiceProvider;
    std::vector<std::string> warnings;
    const ForestModel model = train(data, {10, 0, 7}, false, &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("DegenerateLabels") == 0);
    Rng rng(4);
    for (int i = 0; i < 20; ++i) {
      FeatureVector probe{};
      for (auto &v : probe) v = static_cast<double>(rng.below(500));
      const Prediction p = predict(model, probe);
      CHECK(p.label == Stereotype::ServiceProvider);
      CHECK(p.probabilities[static_cast<std::size_t>(Stereotype::ServiceProvider)] == 1.0);
    }
  }
  SUBCASE("separable clusters are learned exactly") {
    const auto data = separable(2, 20);
    const ForestModel model = train(data, {100, 0, 42}, false);
    CHECK(training_accuracy(model, data) == 1.0);
    CHECK(model.trees.size() == 100);
    for (const auto &tree : model.trees) {
      for (const auto &node : tree.nodes) {
        CHECK(node.feature < static_cast<int>(kFeatureCount));
        if (node.feature < 0) {
          CHECK(std::accumulate(node.distribution.begin(), node.distribution.end(), 0.0) ==
                doctest::Approx(1.0).epsilon(1e-12));
        }
      }
    }
  }
  SUBCASE("same data and seed give byte-identical models") {
    const auto data = separable(9, 15);
    CHECK(serialize(train(data, {30, 0, 5}, true)) == serialize(train(data, {30, 0, 5}, true)));
    CHECK(serialize(train(data, {30, 0, 5}, false)) != serialize(train(data, {30, 0, 6}, false)));
  }
  SUBCASE("empty input") {
    try {
      train({}, {}, false);
      FAIL("expected InsufficientData");
    } catch (const Error &error) {
      CHECK(error.code() == "InsufficientData");
    }
  }
  SUBCASE("depth limit") {
    const auto data = separable(2, 20);
    const ForestModel stump = train(data, {5, 1, 1}, false);
    for (const auto &tree : stump.trees) CHECK(tree.nodes.size() <= 3);
  }
}

TEST_CASE("training accuracy is 1 on noise-free, duplicate-free data") {
  Rng rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<LabeledExample> data;
    std::set<FeatureVector> seen;
    while (data.size() < 60) {
      LabeledExample e;
      for (auto &v : e.features) v = static_cast<double>(rng.below(20));
      if (!seen.insert(e.features).second) continue;
      // label is a fixed function of three features
      const auto code = static_cast<std::size_t>(e.features[1] + e.features[5] * 2 + e.features[11]) % 6;
      e.label = static_cast<Stereotype>(code);
      e.canonical_key = "n.C" + std::to_string(data.size());
      data.push_back(e);
    }
    const ForestModel model = train(data, {100, 0, static_cast<std::uint64_t>(trial)}, false);
    CHECK(training_accuracy(model, data) == 1.0);
  }
}

TEST_CASE("oversampling balances labels") {
  std::vector<LabeledExample> data = separable(6, 10);
  data.resize(14);  // 10 InformationHolder, 4 Controller
  const auto balanced = oversample(data, 3);
  std::size_t ih = 0;
  std::size_t ct = 0;
  for (const auto &e : balanced) {
    ih += e.label == Stereotype::InformationHolder ? 1 : 0;
    ct += e.label == Stereotype::Controller ? 1 : 0;
  }
  CHECK(ih == 10);
  CHECK(ct == 10);
  CHECK(oversample(data, 3) == balanced);
}

TEST_CASE("predict") {
  const auto data = separable(11, 12);
  const ForestModel model = train(data, {40, 0, 8}, true);
  SUBCASE("training points keep their labels") {
    for (const auto &e : data) CHECK(predict(model, e.features).label == e.label);
  }
  SUBCASE("probabilities sum to one and calls are pure") {
    Rng rng(12);
    for (int i = 0; i < 100; ++i) {
      FeatureVector probe{};
      for (auto &v : probe) v = static_cast<double>(rng.below(2000)) / 10.0 - 20.0;
      const Prediction a = predict(model, probe);
      const Prediction b = predict(model, probe);
      CHECK(a.label == b.label);
      CHECK(a.probabilities == b.probabilities);
      CHECK(std::accumulate(a.probabilities.begin(), a.probabilities.end(), 0.0) ==
            doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("ties go to the earlier label") {
    ForestModel tie;
    tie.feature_hash = feature_order_hash();
    DecisionTree tree;
    TreeNode leaf;
    leaf.distribution = {0, 0, 0, 0.5, 0, 0.5};
    tree.nodes.push_back(leaf);
    tie.trees.push_back(tree);
    CHECK(predict(tie, FeatureVector{}).label == Stereotype::InformationHolder);
  }
  SUBCASE("serialization preserves predictions") {
    const ForestModel restored = deserialize(serialize(model));
    CHECK(restored == model);
    Rng rng(13);
    for (int i = 0; i < 50; ++i) {
      FeatureVector probe{};
      for (auto &v : probe) v = static_cast<double>(rng.below(1500)) / 10.0;
      CHECK(predict(restored, probe).probabilities == predict(model, probe).probabilities);
    }
  }
  SUBCASE("feature order mismatch") {
    ForestModel other = model;
    other.feature_hash ^= 1;
    try {
      predict(other, FeatureVector{});
      FAIL("expected ModelFeatureMismatch");
    } catch (const Error &error) {
      CHECK(error.code() == "ModelFeatureMismatch");
    }
    CHECK_THROWS_AS(deserialize("{\"format\": \"other\"}"), Error);
    CHECK_THROWS_AS(deserialize("not json"), Error);
  }
}

TEST_CASE("monotone rescaling of the split feature keeps the tree structure") {
  const auto data = separable(21, 15);
  auto rescaled = data;
  for (auto &e : rescaled) e.features[0] = std::exp(e.features[0] / 40.0) * 3.0 + 1.0;
  const ForestModel a = train(data, {25, 0, 99}, false);
  const ForestModel b = train(rescaled, {25, 0, 99}, false);
  CHECK(shape(a) == shape(b));
  for (std::size_t i = 0; i < data.size(); ++i) {
    CHECK(predict(a, data[i].features).label == predict(b, rescaled[i].features).label);
  }
}

TEST_CASE("score and evaluate") {
  SUBCASE("perfect predictions") {
    const auto data = separable(2, 10);
    const ForestModel model = train(data, {20, 0, 1}, false);
    const Scores s = evaluate(model, data);
    CHECK(s.accuracy == 1.0);
    CHECK(s.macro_f1 == 1.0);
    CHECK(s.f1[static_cast<std::size_t>(Stereotype::Controller)] == 1.0);
  }
  SUBCASE("constant predictor on balanced two-label data") {
    std::vector<Stereotype> truth{Stereotype::Coordinator, Stereotype::Interfacer,
                                  Stereotype::Coordinator, Stereotype::Interfacer};
    std::vector<Stereotype> predicted(4, Stereotype::Coordinator);
    CHECK(score(truth, predicted).accuracy == 0.5);
  }
  SUBCASE("four-example confusion matrix") {
    using S = Stereotype;
    const Scores s = score({S::Coordinator, S::Coordinator, S::ServiceProvider, S::ServiceProvider},
                           {S::Coordinator, S::ServiceProvider, S::ServiceProvider, S::ServiceProvider});
    const auto co = static_cast<std::size_t>(S::Coordinator);
    const auto sp = static_cast<std::size_t>(S::ServiceProvider);
    // CO: tp 1 of 1 predicted, 2 actual; SP: tp 2 of 3 predicted, 2 actual
    CHECK(s.confusion[co][co] == 1);
    CHECK(s.confusion[co][sp] == 1);
    CHECK(s.confusion[sp][sp] == 2);
    CHECK(s.precision[co] == 1.0);
    CHECK(s.recall[co] == 0.5);
    CHECK(s.f1[co] == doctest::Approx(2.0 / 3.0));
    CHECK(s.precision[sp] == doctest::Approx(2.0 / 3.0));
    CHECK(s.recall[sp] == 1.0);
    CHECK(s.f1[sp] == doctest::Approx(0.8));
    CHECK(s.accuracy == 0.75);
    CHECK(s.macro_f1 == doctest::Approx((2.0 / 3.0 + 0.8) / 2.0));
    std::ostringstream out;
    write_scores(out, s);
    CHECK(out.str().find("accuracy 0.7500") != std::string::npos);
  }
  SUBCASE("empty held-out set") {
    CHECK_THROWS_AS(evaluate(ForestModel{}, {}), Error);
  }
}
