#pragma once

#include <smellrole/error.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace smellrole::smells {

enum class Level { VeryHigh, High, Low, VeryLow, Equal };

const char *to_string(Level level);

/// (METRIC: a+b, LEVEL, threshold): the sum of the named metrics compared
/// against the threshold. `label` is the metric text as written in the card.
struct MetricLeaf {
  std::string label;
  std::vector<std::string> metrics;  // canonical column names
  Level level = Level::VeryHigh;
  double threshold = 0;

  bool operator==(const MetricLeaf &) const = default;
};

/// (STRUCT: flag, true|false) over a boolean metric.
struct StructLeaf {
  std::string flag;
  bool expected = true;

  bool operator==(const StructLeaf &) const = default;
};

/// (LEXIC: CLASSNAME, (Make, Do)): true when one of the words occurs in the
/// class name as a camel-case word.
struct LexiconLeaf {
  std::vector<std::string> words;

  bool operator==(const LexiconLeaf &) const = default;
};

struct Predicate {
  enum class Kind { Metric, Struct, Lexicon, Inter, Union };

  Kind kind = Kind::Metric;
  MetricLeaf metric;
  StructLeaf flag;
  LexiconLeaf lexicon;
  std::vector<Predicate> children;  // Inter and Union only

  static Predicate of(MetricLeaf leaf);
  static Predicate of(StructLeaf leaf);
  static Predicate of(LexiconLeaf leaf);
  static Predicate inter(std::vector<Predicate> children);
  static Predicate unite(std::vector<Predicate> children);

  bool operator==(const Predicate &) const = default;
};

struct RuleCard {
  std::string smell_name;
  Predicate rule;  // rule references are inlined

  bool operator==(const RuleCard &) const = default;
};

class SyntaxError : public PositionedError {
 public:
  SyntaxError(const std::string &message, std::size_t line, std::size_t column)
      : PositionedError("SyntaxError", message, line, column) {}
};

/// Parses every card in `text`. Grammar:
///
///   card  := RULE_CARD : Name { rule (; rule)* ;? } ;
///   rule  := RULE : Name { expr }
///   expr  := leaf | (INTER | UNION) item item*
///   item  := RuleName | leaf
///
/// The first rule of a card is its root. Throws SyntaxError on malformed
/// text or cyclic rule references, Error{"UnknownMetric"} on unknown metric
/// or flag names.
std::vector<RuleCard> parse_rule_cards(std::string_view text);

/// Exactly one card; otherwise SyntaxError.
RuleCard parse_rule_card(std::string_view text);

/// Card text accepted by parse_rule_card, yielding an equal card.
std::string to_text(const RuleCard &card);

/// Text of the 18 built-in cards.
std::string_view default_rule_cards_text();
const std::vector<RuleCard> &default_rule_cards();

/// `base` with every card of the same smell replaced by one from
/// `overrides`; override cards for new names are appended.
std::vector<RuleCard> merge_cards(std::vector<RuleCard> base,
                                  const std::vector<RuleCard> &overrides);

}  // namespace smellrole::smells
