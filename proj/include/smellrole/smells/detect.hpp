#pragma once

#include <smellrole/code/metrics.hpp>
#include <smellrole/code/model.hpp>
#include <smellrole/smells/catalog.hpp>
#include <smellrole/smells/rule_card.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace smellrole::smells {

/// A metric leaf that held, with the value it saw.
struct Witness {
  std::string label;
  double value = 0;
  Level level = Level::VeryHigh;
  double threshold = 0;

  bool operator==(const Witness &) const = default;
};

struct SmellDetection {
  std::string canonical_key;
  std::string smell_name;
  std::size_t count = 1;
  /// One witness list per occurrence; size() == count.
  std::vector<std::vector<Witness>> witnesses;

  bool operator==(const SmellDetection &) const = default;
};

/// A class to examine: its model (name and methods) and metrics.
struct Subject {
  const code::ClassModel *model = nullptr;
  code::MetricVector metrics;
};

bool holds(const Predicate &predicate, const code::MetricVector &mv,
           const std::string &class_name);

std::optional<SmellDetection> evaluate(const RuleCard &card,
                                       const code::MetricVector &mv,
                                       const code::ClassModel &model);

/// All detections ordered by (canonical key, smell column). Throws
/// Error{"DuplicateCard"} when two cards share a smell name and
/// Error{"UnknownSmell"} for a card outside the 18 names.
std::vector<SmellDetection> detect(const std::vector<RuleCard> &cards,
                                   const std::vector<Subject> &subjects);

/// Count table with a row for every subject.
SmellCountTable tabulate(const std::vector<SmellDetection> &detections,
                         const std::vector<Subject> &subjects);

SmellCountTable detect_all(const std::vector<RuleCard> &cards,
                           const std::vector<Subject> &subjects);

}  // namespace smellrole::smells
