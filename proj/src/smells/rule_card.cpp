#include <smellrole/smells/rule_card.hpp>

#include <smellrole/code/metrics.hpp>
#include <smellrole/csv.hpp>

#include <cctype>
#include <map>
#include <set>

namespace smellrole::smells {

const char *to_string(Level level) {
  switch (level) {
    case Level::VeryHigh: return "VERY_HIGH";
    case Level::High: return "HIGH";
    case Level::Low: return "LOW";
    case Level::VeryLow: return "VERY_LOW";
    case Level::Equal: return "EQUAL";
  }
  return "?";
}

Predicate Predicate::of(MetricLeaf leaf) {
  Predicate p;
  p.kind = Kind::Metric;
  p.metric = std::move(leaf);
  return p;
}

Predicate Predicate::of(StructLeaf leaf) {
  Predicate p;
  p.kind = Kind::Struct;
  p.flag = std::move(leaf);
  return p;
}

Predicate Predicate::of(LexiconLeaf leaf) {
  Predicate p;
  p.kind = Kind::Lexicon;
  p.lexicon = std::move(leaf);
  return p;
}

Predicate Predicate::inter(std::vector<Predicate> children) {
  Predicate p;
  p.kind = Kind::Inter;
  p.children = std::move(children);
  return p;
}

Predicate Predicate::unite(std::vector<Predicate> children) {
  Predicate p;
  p.kind = Kind::Union;
  p.children = std::move(children);
  return p;
}

namespace {

struct Token {
  enum Kind { Word, Number, Punct, End } kind = End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
      while (i < text.size() && text[i] != '\n') {
        advance(1);
      }
      continue;
    }
    Token token;
    token.line = line;
    token.column = column;
    std::size_t end = i + 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      token.kind = Token::Word;
      while (end < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_')) {
        ++end;
      }
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.') {
      token.kind = Token::Number;
      while (end < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '.' ||
              ((text[end] == '-' || text[end] == '+') &&
               (text[end - 1] == 'e' || text[end - 1] == 'E')))) {
        ++end;
      }
    } else if (std::string_view("{}():;,+").find(c) != std::string_view::npos) {
      token.kind = Token::Punct;
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", line, column);
    }
    token.text = std::string(text.substr(i, end - i));
    advance(end - i);
    tokens.push_back(std::move(token));
  }
  Token end_token;
  end_token.line = line;
  end_token.column = column;
  tokens.push_back(end_token);
  return tokens;
}

struct Item {
  bool is_reference = false;
  std::string reference;
  Predicate leaf;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct RawRule {
  std::string name;
  bool combinator = false;
  Predicate::Kind kind = Predicate::Kind::Inter;
  std::vector<Item> items;
};

class CardParser {
 public:
  explicit CardParser(std::string_view text) : tokens_(tokenize(text)) {}

  std::vector<RuleCard> parse_all() {
    std::vector<RuleCard> cards;
    while (peek().kind != Token::End) {
      cards.push_back(parse_card());
    }
    return cards;
  }

 private:
  const Token &peek() const { return tokens_[pos_]; }

  const Token &take() {
    const Token &token = tokens_[pos_];
    if (token.kind != Token::End) {
      ++pos_;
    }
    return token;
  }

  [[noreturn]] void fail(const std::string &message, const Token &at) const {
    throw SyntaxError(message, at.line, at.column);
  }

  void expect(std::string_view text) {
    const Token &token = take();
    if (token.kind == Token::End || token.text != text) {
      fail("expected '" + std::string(text) + "', found '" +
               (token.kind == Token::End ? "end of input" : token.text) + "'",
           token);
    }
  }

  bool accept(std::string_view text) {
    if (peek().kind != Token::End && peek().text == text) {
      take();
      return true;
    }
    return false;
  }

  std::string word() {
    const Token &token = take();
    if (token.kind != Token::Word) {
      fail("expected a name", token);
    }
    return token.text;
  }

  double number() {
    const Token &token = take();
    if (token.kind != Token::Number) {
      fail("expected a number", token);
    }
    try {
      return csv::parse_number(token.text);
    } catch (const Error &) {
      fail("malformed number '" + token.text + "'", token);
    }
  }

  RuleCard parse_card() {
    expect("RULE_CARD");
    expect(":");
    const Token &name_token = peek();
    RuleCard card;
    card.smell_name = word();
    expect("{");
    std::vector<RawRule> rules;
    std::map<std::string, std::size_t> index;
    while (!accept("}")) {
      const Token &at = peek();
      RawRule rule = parse_rule();
      if (!index.emplace(rule.name, rules.size()).second) {
        fail("duplicate rule " + rule.name, at);
      }
      rules.push_back(std::move(rule));
      accept(";");
    }
    if (rules.empty()) {
      fail("rule card " + card.smell_name + " has no rule", name_token);
    }
    accept(";");
    std::set<std::string> active;
    card.rule = resolve(rules, index, 0, active);
    return card;
  }

  RawRule parse_rule() {
    expect("RULE");
    expect(":");
    RawRule rule;
    rule.name = word();
    expect("{");
    if (peek().text == "INTER" || peek().text == "UNION") {
      rule.combinator = true;
      rule.kind = take().text == "INTER" ? Predicate::Kind::Inter
                                          : Predicate::Kind::Union;
      while (peek().text != "}") {
        Item item;
        item.line = peek().line;
        item.column = peek().column;
        if (peek().text == "(") {
          item.leaf = parse_leaf();
        } else {
          item.is_reference = true;
          item.reference = word();
        }
        rule.items.push_back(std::move(item));
      }
      if (rule.items.empty()) {
        fail("empty " + std::string(rule.kind == Predicate::Kind::Inter
                                        ? "INTER"
                                        : "UNION"),
             peek());
      }
    } else {
      Item item;
      item.leaf = parse_leaf();
      rule.items.push_back(std::move(item));
    }
    expect("}");
    return rule;
  }

  Predicate parse_leaf() {
    expect("(");
    const Token &kind_token = peek();
    const std::string kind = word();
    expect(":");
    Predicate leaf;
    if (kind == "METRIC") {
      MetricLeaf metric;
      do {
        const std::string name = word();
        const auto field = code::find_metric(name);
        if (!field) {
          throw Error("UnknownMetric", "unknown metric " + name);
        }
        metric.metrics.emplace_back(field->name);
        metric.label += (metric.label.empty() ? "" : "+") + name;
      } while (accept("+"));
      expect(",");
      const Token &level_token = peek();
      const std::string level = word();
      if (level == "VERY_HIGH") {
        metric.level = Level::VeryHigh;
      } else if (level == "HIGH") {
        metric.level = Level::High;
      } else if (level == "LOW") {
        metric.level = Level::Low;
      } else if (level == "VERY_LOW") {
        metric.level = Level::VeryLow;
      } else if (level == "EQUAL") {
        metric.level = Level::Equal;
      } else {
        fail("unknown level " + level, level_token);
      }
      expect(",");
      metric.threshold = number();
      leaf = Predicate::of(std::move(metric));
    } else if (kind == "STRUCT") {
      StructLeaf flag;
      const std::string name = word();
      const auto field = code::find_metric(name);
      if (!field || field->flag == nullptr) {
        throw Error("UnknownMetric", "unknown structural flag " + name);
      }
      flag.flag = std::string(field->name);
      expect(",");
      const Token &value_token = peek();
      const std::string value = word();
      if (value != "true" && value != "false") {
        fail("expected true or false", value_token);
      }
      flag.expected = value == "true";
      leaf = Predicate::of(std::move(flag));
    } else if (kind == "LEXIC") {
      expect("CLASSNAME");
      expect(",");
      expect("(");
      LexiconLeaf lexicon;
      do {
        lexicon.words.push_back(word());
      } while (accept(","));
      expect(")");
      leaf = Predicate::of(std::move(lexicon));
    } else {
      fail("unknown property kind " + kind, kind_token);
    }
    expect(")");
    return leaf;
  }

  Predicate resolve(const std::vector<RawRule> &rules,
                    const std::map<std::string, std::size_t> &index,
                    std::size_t which, std::set<std::string> &active) const {
    const RawRule &rule = rules[which];
    if (!rule.combinator) {
      return rule.items.front().leaf;
    }
    active.insert(rule.name);
    std::vector<Predicate> children;
    for (const Item &item : rule.items) {
      if (!item.is_reference) {
        children.push_back(item.leaf);
        continue;
      }
      auto it = index.find(item.reference);
      if (it == index.end()) {
        throw SyntaxError("unknown rule " + item.reference, item.line, item.column);
      }
      if (active.count(item.reference) != 0) {
        throw SyntaxError("cyclic reference to rule " + item.reference,
                          item.line, item.column);
      }
      children.push_back(resolve(rules, index, it->second, active));
    }
    active.erase(rule.name);
    return rule.kind == Predicate::Kind::Inter
               ? Predicate::inter(std::move(children))
               : Predicate::unite(std::move(children));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string leaf_text(const Predicate &p) {
  switch (p.kind) {
    case Predicate::Kind::Metric:
      return "(METRIC: " + p.metric.label + ", " + to_string(p.metric.level) +
             ", " + csv::format_number(p.metric.threshold) + ")";
    case Predicate::Kind::Struct:
      return "(STRUCT: " + p.flag.flag + ", " +
             (p.flag.expected ? "true" : "false") + ")";
    case Predicate::Kind::Lexicon: {
      std::string text = "(LEXIC: CLASSNAME, (";
      for (std::size_t i = 0; i < p.lexicon.words.size(); ++i) {
        text += (i == 0 ? "" : ", ") + p.lexicon.words[i];
      }
      return text + "))";
    }
    default:
      return {};
  }
}

void emit_rule(const Predicate &p, const std::string &name,
               const std::string &smell, std::size_t &parts,
               std::string &out) {
  std::string deferred;
  out += "  RULE : " + name + " { ";
  if (p.kind != Predicate::Kind::Inter && p.kind != Predicate::Kind::Union) {
    out += leaf_text(p);
  } else {
    out += p.kind == Predicate::Kind::Inter ? "INTER" : "UNION";
    for (const Predicate &child : p.children) {
      if (child.kind == Predicate::Kind::Inter ||
          child.kind == Predicate::Kind::Union) {
        const std::string part = smell + "Part" + std::to_string(++parts);
        out += " " + part;
        emit_rule(child, part, smell, parts, deferred);
      } else {
        out += " " + leaf_text(child);
      }
    }
  }
  out += " } ;\n" + deferred;
}

constexpr std::string_view kDefaultCards = R"(RULE_CARD : AntiSingleton {
  RULE : AntiSingletonClass { (METRIC: numPublicStaticMutableFields, VERY_HIGH, 1) } ;
};
RULE_CARD : BaseClassKnowsDerivedClass {
  RULE : BaseClassKnowsDerivedClassClass { (STRUCT: referencesDerivedType, true) } ;
};
RULE_CARD : BaseClassShouldBeAbstract {
  RULE : BaseClassShouldBeAbstractClass { INTER ManyChildren Concrete } ;
  RULE : ManyChildren { (METRIC: noChildren, VERY_HIGH, 3) } ;
  RULE : Concrete { (STRUCT: isAbstract, false) } ;
};
RULE_CARD : Blob {
  RULE : BlobClass { INTER LargeClassSize ManyMembers LowCohesion } ;
  RULE : LargeClassSize { (METRIC: LOC_CLASS, VERY_HIGH, 250) } ;
  RULE : ManyMembers { (METRIC: NMD+NAD, VERY_HIGH, 40) } ;
  RULE : LowCohesion { (METRIC: lcomFraction, HIGH, 0.5) } ;
};
RULE_CARD : ClassDataShouldBePrivate {
  RULE : ClassDataShouldBePrivateClass { (METRIC: numPublicInstanceFields, VERY_HIGH, 1) } ;
};
RULE_CARD : ComplexClass {
  RULE : ComplexClassClass { (METRIC: maxCC, VERY_HIGH, 10) } ;
};
RULE_CARD : FunctionalDecomposition {
  RULE : FunctionalDecompositionClass { INTER ProceduralName NoInheritance NoPolymorphism } ;
  RULE : ProceduralName { (LEXIC: CLASSNAME, (Make, Do, Execute, Compute, Handle, Process, Perform, Run, Calc)) } ;
  RULE : NoInheritance { (METRIC: DIT, EQUAL, 0) } ;
  RULE : NoPolymorphism { (METRIC: numOverridden, EQUAL, 0) } ;
};
RULE_CARD : LargeClass {
  RULE : LargeClassClass { (METRIC: LOC_CLASS, VERY_HIGH, 500) } ;
};
RULE_CARD : LazyClass {
  RULE : LazyClassClass { INTER SmallSize FewMethods LowComplexity } ;
  RULE : SmallSize { (METRIC: LOC_CLASS, VERY_LOW, 30) } ;
  RULE : FewMethods { (METRIC: NMD, LOW, 2) } ;
  RULE : LowComplexity { (METRIC: maxCC, LOW, 2) } ;
};
RULE_CARD : LongMethod {
  RULE : LongMethodClass { (METRIC: LOC_METHOD, VERY_HIGH, 60) } ;
};
RULE_CARD : LongParameterList {
  RULE : LongParameterListClass { (METRIC: NOParam, VERY_HIGH, 6) } ;
};
RULE_CARD : ManyFieldAttributesButNotComplex {
  RULE : ManyFieldAttributesButNotComplexClass { INTER ManyFields Simple } ;
  RULE : ManyFields { (METRIC: NAD, VERY_HIGH, 15) } ;
  RULE : Simple { (METRIC: avgCC, LOW, 1.5) } ;
};
RULE_CARD : MessageChains {
  RULE : MessageChainsClass { (METRIC: maxChainLength, VERY_HIGH, 4) } ;
};
RULE_CARD : RefusedParentBequest {
  RULE : RefusedParentBequestClass { INTER HasParent OverridesMuch } ;
  RULE : HasParent { (METRIC: DIT, HIGH, 1) } ;
  RULE : OverridesMuch { (METRIC: overriddenRatio, HIGH, 0.5) } ;
};
RULE_CARD : SpaghettiCode {
  RULE : SpaghettiCodeClass { INTER LongProcedures GlobalVariables } ;
  RULE : LongProcedures { (METRIC: numLongNoParamMethods, VERY_HIGH, 2) } ;
  RULE : GlobalVariables { (STRUCT: usesForeignGlobals, true) } ;
};
RULE_CARD : SpeculativeGenerality {
  RULE : SpeculativeGeneralityClass { INTER Abstract FewChildren } ;
  RULE : Abstract { (STRUCT: isAbstract, true) } ;
  RULE : FewChildren { (METRIC: noChildren, LOW, 1) } ;
};
RULE_CARD : SwissArmyKnife {
  RULE : SwissArmyKnifeClass { INTER ManyInterfaces ManyMethods } ;
  RULE : ManyInterfaces { (METRIC: numInterfaces, VERY_HIGH, 3) } ;
  RULE : ManyMethods { (METRIC: NMD, VERY_HIGH, 20) } ;
};
RULE_CARD : TraditionBreaker {
  RULE : TraditionBreakerClass { INTER HasParent LargeParent FewMethods Leaf } ;
  RULE : HasParent { (METRIC: DIT, HIGH, 1) } ;
  RULE : LargeParent { (METRIC: parentLoc, VERY_HIGH, 250) } ;
  RULE : FewMethods { (METRIC: NMD, LOW, 5) } ;
  RULE : Leaf { (METRIC: noChildren, EQUAL, 0) } ;
};
)";

}  // namespace

std::vector<RuleCard> parse_rule_cards(std::string_view text) {
  return CardParser(text).parse_all();
}

RuleCard parse_rule_card(std::string_view text) {
  std::vector<RuleCard> cards = parse_rule_cards(text);
  if (cards.size() != 1) {
    throw SyntaxError("expected exactly one rule card, found " +
                          std::to_string(cards.size()),
                      1, 1);
  }
  return std::move(cards.front());
}

std::string to_text(const RuleCard &card) {
  std::string out = "RULE_CARD : " + card.smell_name + " {\n";
  std::size_t parts = 0;
  emit_rule(card.rule, card.smell_name + "Class", card.smell_name, parts, out);
  return out + "};\n";
}

std::string_view default_rule_cards_text() { return kDefaultCards; }

const std::vector<RuleCard> &default_rule_cards() {
  static const std::vector<RuleCard> cards = parse_rule_cards(kDefaultCards);
  return cards;
}

std::vector<RuleCard> merge_cards(std::vector<RuleCard> base,
                                  const std::vector<RuleCard> &overrides) {
  for (const RuleCard &card : overrides) {
    bool replaced = false;
    for (RuleCard &existing : base) {
      if (existing.smell_name == card.smell_name) {
        existing = card;
        replaced = true;
      }
    }
    if (!replaced) {
      base.push_back(card);
    }
  }
  return base;
}

}  // namespace smellrole::smells
