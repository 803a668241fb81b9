#include <smellrole/smells/detect.hpp>

#include <smellrole/error.hpp>

#include <algorithm>
#include <cctype>

namespace smellrole::smells {

namespace {

double metric_sum(const MetricLeaf &leaf, const code::MetricVector &mv) {
  double sum = 0;
  for (const auto &name : leaf.metrics) {
    sum += code::find_metric(name)->get(mv);
  }
  return sum;
}

bool compare(Level level, double value, double threshold) {
  switch (level) {
    case Level::VeryHigh:
    case Level::High:
      return value >= threshold;
    case Level::Low:
    case Level::VeryLow:
      return value <= threshold;
    case Level::Equal:
      return value == threshold;
  }
  return false;
}

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }

bool contains_word(const std::string &name, const std::string &word) {
  if (word.empty()) {
    return false;
  }
  for (auto p = name.find(word); p != std::string::npos; p = name.find(word, p + 1)) {
    const bool starts = p == 0 || !is_upper(name[p - 1]) || !is_upper(word[0]);
    const std::size_t end = p + word.size();
    const bool ends = end == name.size() || !is_lower(name[end]);
    if (starts && ends) {
      return true;
    }
  }
  return false;
}

void collect(const Predicate &p, const code::MetricVector &mv,
             const std::string &class_name, std::vector<Witness> &out) {
  switch (p.kind) {
    case Predicate::Kind::Metric:
      if (holds(p, mv, class_name)) {
        out.push_back({p.metric.label, metric_sum(p.metric, mv), p.metric.level,
                       p.metric.threshold});
      }
      break;
    case Predicate::Kind::Inter:
    case Predicate::Kind::Union:
      for (const auto &child : p.children) {
        if (holds(child, mv, class_name)) {
          collect(child, mv, class_name, out);
        }
      }
      break;
    default:
      break;
  }
}

}  // namespace

bool holds(const Predicate &predicate, const code::MetricVector &mv,
           const std::string &class_name) {
  switch (predicate.kind) {
    case Predicate::Kind::Metric:
      return compare(predicate.metric.level, metric_sum(predicate.metric, mv),
                     predicate.metric.threshold);
    case Predicate::Kind::Struct:
      return (code::find_metric(predicate.flag.flag)->get(mv) != 0.0) ==
             predicate.flag.expected;
    case Predicate::Kind::Lexicon:
      return std::any_of(predicate.lexicon.words.begin(),
                         predicate.lexicon.words.end(),
                         [&](const std::string &w) { return contains_word(class_name, w); });
    case Predicate::Kind::Inter:
      return std::all_of(predicate.children.begin(), predicate.children.end(),
                         [&](const Predicate &c) { return holds(c, mv, class_name); });
    case Predicate::Kind::Union:
      return std::any_of(predicate.children.begin(), predicate.children.end(),
                         [&](const Predicate &c) { return holds(c, mv, class_name); });
  }
  return false;
}

std::optional<SmellDetection> evaluate(const RuleCard &card,
                                       const code::MetricVector &mv,
                                       const code::ClassModel &model) {
  if (!holds(card.rule, mv, model.name)) {
    return std::nullopt;
  }
  SmellDetection detection;
  detection.canonical_key = model.canonical_key;
  detection.smell_name = card.smell_name;
  if (is_per_method(card.smell_name)) {
    for (const auto &method : model.methods) {
      const code::MetricVector local = code::with_method_values(mv, method);
      if (holds(card.rule, local, model.name)) {
        collect(card.rule, local, model.name, detection.witnesses.emplace_back());
      }
    }
  }
  if (detection.witnesses.empty()) {
    collect(card.rule, mv, model.name, detection.witnesses.emplace_back());
  }
  detection.count = detection.witnesses.size();
  return detection;
}

std::vector<SmellDetection> detect(const std::vector<RuleCard> &cards,
                                   const std::vector<Subject> &subjects) {
  std::vector<const RuleCard *> by_column(kSmellCount, nullptr);
  for (const auto &card : cards) {
    const auto index = smell_index(card.smell_name);
    if (!index) {
      throw Error("UnknownSmell", "no smell named " + card.smell_name);
    }
    if (by_column[*index] != nullptr) {
      throw Error("DuplicateCard", "two rule cards for " + card.smell_name);
    }
    by_column[*index] = &card;
  }
  std::vector<const Subject *> ordered;
  for (const auto &subject : subjects) {
    ordered.push_back(&subject);
  }
  std::sort(ordered.begin(), ordered.end(), [](const Subject *a, const Subject *b) {
    return a->model->canonical_key < b->model->canonical_key;
  });
  std::vector<SmellDetection> detections;
  for (const Subject *subject : ordered) {
    for (const RuleCard *card : by_column) {
      if (card == nullptr) {
        continue;
      }
      if (auto found = evaluate(*card, subject->metrics, *subject->model)) {
        detections.push_back(std::move(*found));
      }
    }
  }
  return detections;
}

SmellCountTable tabulate(const std::vector<SmellDetection> &detections,
                         const std::vector<Subject> &subjects) {
  SmellCountTable table;
  for (const auto &subject : subjects) {
    table.row(subject.model->canonical_key);
  }
  for (const auto &detection : detections) {
    const auto index = smell_index(detection.smell_name);
    if (!index) {
      throw Error("UnknownSmell", "no smell named " + detection.smell_name);
    }
    table.row(detection.canonical_key)[*index] +=
        static_cast<std::uint32_t>(detection.count);
  }
  return table;
}

SmellCountTable detect_all(const std::vector<RuleCard> &cards,
                           const std::vector<Subject> &subjects) {
  return tabulate(detect(cards, subjects), subjects);
}

}  // namespace smellrole::smells
