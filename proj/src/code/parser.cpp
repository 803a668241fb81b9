#include <smellrole/code/parser.hpp>

#include "lexer.hpp"

#include <smellrole/code/metrics.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

namespace smellrole::code {

const char *to_string(TypeKind kind) {
  switch (kind) {
    case TypeKind::Class:
      return "class";
    case TypeKind::Interface:
      return "interface";
    case TypeKind::Enum:
      return "enum";
  }
  return "class";
}

const char *to_string(Visibility visibility) {
  switch (visibility) {
    case Visibility::Public:
      return "public";
    case Visibility::Protected:
      return "protected";
    case Visibility::Package:
      return "package";
    case Visibility::Private:
      return "private";
  }
  return "package";
}

std::string canonical_key(std::string_view path) {
  constexpr std::string_view kExtension = ".java";
  if (path.size() <= kExtension.size() ||
      path.substr(path.size() - kExtension.size()) != kExtension) {
    throw Error("NotJavaSource", "not a .java file: " + std::string(path));
  }
  path.remove_suffix(kExtension.size());
  while (path.substr(0, 2) == "./") {
    path.remove_prefix(2);
  }
  while (!path.empty() && (path.front() == '/' || path.front() == '\\')) {
    path.remove_prefix(1);
  }
  std::string key(path);
  std::replace(key.begin(), key.end(), '/', '.');
  std::replace(key.begin(), key.end(), '\\', '.');
  return key;
}

namespace {

using detail::Token;
using detail::TokenKind;

const std::set<std::string_view> kPrimitiveTypes = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double",
    "void"};

const std::set<std::string_view> kModifierKeywords = {
    "public",    "protected", "private",      "static",
    "abstract",  "final",     "native",       "synchronized",
    "transient", "volatile",  "strictfp",     "default"};

const std::set<std::string_view> kAssignmentOperators = {
    "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<="};

struct Modifiers {
  std::size_t first_token = 0;
  std::optional<Visibility> visibility;
  bool is_static = false;
  bool is_abstract = false;
  bool is_final = false;
  bool is_default = false;
  bool has_override = false;
};

struct TypeRef {
  std::string text;
  std::string simple_name;
};

// A method whose body still has to be analysed once the folded field set of
// its top-level class is known.
struct PendingBody {
  std::size_t method_index = 0;
  std::size_t begin = 0;  // first token inside the braces
  std::size_t end = 0;    // the closing brace
};

struct BodyContext {
  TypeKind kind = TypeKind::Class;
  std::string type_name;
};

// Token-level measurements of one method body.
class BodyAnalyzer {
 public:
  BodyAnalyzer(const std::vector<Token> &tokens,
               const std::vector<std::size_t> &match)
      : tokens_(tokens), match_(match) {}

  void run(std::size_t begin, std::size_t end,
           const std::set<std::string> &fields, MethodModel &method) {
    method.cyclomatic = 1;
    std::set<std::size_t> do_whiles;
    std::map<std::size_t, std::size_t> chain_memo;
    for (std::size_t i = begin; i < end; ++i) {
      const Token &tok = tokens_[i];
      if (tok.kind == TokenKind::Keyword) {
        count_keyword(i, end, do_whiles, method);
      } else if (tok.kind == TokenKind::Operator) {
        if (tok.text == "&&" || tok.text == "||") {
          ++method.cyclomatic;
        } else if (tok.text == "?" && is_ternary(i)) {
          ++method.cyclomatic;
          ++method.conditionals;
        } else if (tok.text == ".") {
          method.max_chain_length =
              std::max(method.max_chain_length, chain_at(i, end, chain_memo));
        }
      } else if (tok.is_identifier()) {
        record_identifier(i, end, fields, method);
      }
    }
  }

 private:
  void count_keyword(std::size_t i, std::size_t end,
                     std::set<std::size_t> &do_whiles, MethodModel &method) {
    const std::string &word = tokens_[i].text;
    if (word == "if") {
      ++method.cyclomatic;
      ++method.conditionals;
    } else if (word == "switch") {
      ++method.conditionals;
    } else if (word == "case" || word == "catch") {
      ++method.cyclomatic;
    } else if (word == "for") {
      ++method.cyclomatic;
      ++method.loops;
    } else if (word == "while") {
      if (do_whiles.count(i) == 0) {
        ++method.cyclomatic;
        ++method.loops;
      }
    } else if (word == "do") {
      ++method.cyclomatic;
      ++method.loops;
      if (auto trailing = do_trailing_while(i, end)) {
        do_whiles.insert(*trailing);
      }
    } else if (word == "return") {
      ++method.returns;
    }
  }

  // Index of the `while` closing a do-statement, if it can be located.
  [[nodiscard]] std::optional<std::size_t> do_trailing_while(
      std::size_t do_index, std::size_t end) const {
    std::size_t j = do_index + 1;
    if (j < end && tokens_[j].is("{")) {
      j = match_[j] + 1;
    } else {
      while (j < end && !tokens_[j].is(";")) {
        j = (tokens_[j].is("(") || tokens_[j].is("{") || tokens_[j].is("["))
                ? match_[j] + 1
                : j + 1;
      }
      ++j;
    }
    if (j < end && tokens_[j].is("while")) {
      return j;
    }
    return std::nullopt;
  }

  // `?` is a wildcard when it opens a type argument.
  [[nodiscard]] bool is_ternary(std::size_t i) const {
    const Token &prev = tokens_[i - 1];
    return !(prev.is("<") || prev.is(",") || prev.is("(") || prev.is("&"));
  }

  // Index of the `(` when a member invocation `.name(` or `.<T>name(` starts
  // at the dot `i`.
  [[nodiscard]] std::optional<std::size_t> invocation_open(
      std::size_t i, std::size_t end) const {
    std::size_t j = i + 1;
    if (j < end && tokens_[j].is("<")) {
      int depth = 0;
      for (; j < end; ++j) {
        if (tokens_[j].is("<")) {
          ++depth;
        } else if (tokens_[j].is(">") && --depth == 0) {
          break;
        }
      }
      ++j;
    }
    if (j + 1 < end && tokens_[j].is_identifier() && tokens_[j + 1].is("(")) {
      return j + 1;
    }
    return std::nullopt;
  }

  std::size_t chain_at(std::size_t i, std::size_t end,
                       std::map<std::size_t, std::size_t> &memo) const {
    if (auto it = memo.find(i); it != memo.end()) {
      return it->second;
    }
    std::size_t length = 0;
    if (auto open = invocation_open(i, end)) {
      const std::size_t after = match_[*open] + 1;
      length = 1;
      if (after < end && tokens_[after].is(".")) {
        length += chain_at(after, end, memo);
      }
    }
    memo[i] = length;
    return length;
  }

  void record_identifier(std::size_t i, std::size_t end,
                         const std::set<std::string> &fields,
                         MethodModel &method) const {
    const Token &tok = tokens_[i];
    const Token &prev = tokens_[i - 1];
    const Token &next = tokens_[i + 1];
    if (next.is("(") && i + 1 < end) {
      if (!prev.is("new") && !prev.is("@")) {
        method.invoked_names.push_back(tok.text);
      }
      return;
    }
    if (fields.count(tok.text) == 0) {
      return;
    }
    if (prev.is(".") && !tokens_[i - 2].is("this")) {
      return;
    }
    // A local declaration shadowing the field (`int count = 0;`).
    if (prev.is_identifier() || prev.is(">") || prev.is("]") ||
        (prev.kind == TokenKind::Keyword && kPrimitiveTypes.count(prev.text))) {
      return;
    }
    const bool assigned = next.kind == TokenKind::Operator &&
                          kAssignmentOperators.count(next.text) != 0;
    const bool stepped = next.is("++") || next.is("--") ||
                         prev.is("++") || prev.is("--");
    if (assigned || stepped) {
      method.writes_fields.insert(tok.text);
    }
    if (!(assigned && next.text == "=")) {
      method.reads_fields.insert(tok.text);
    }
  }

  const std::vector<Token> &tokens_;
  const std::vector<std::size_t> &match_;
};

class JavaParser {
 public:
  explicit JavaParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
    build_bracket_map();
  }

  std::vector<ClassModel> parse_unit() {
    skip_package_and_imports();
    std::vector<ClassModel> types;
    while (!at_end()) {
      if (accept(";")) {
        continue;
      }
      const Modifiers mods = parse_modifiers();
      if (!is_type_declaration_start()) {
        fail("expected a type declaration");
      }
      pending_.clear();
      ClassModel model = parse_type_declaration(mods);
      finish_top_level(model, mods.first_token, pos_ - 1);
      types.push_back(std::move(model));
    }
    return types;
  }

 private:
  // ---- token access -------------------------------------------------------

  [[nodiscard]] const Token &cur() const { return tokens_[pos_]; }
  [[nodiscard]] const Token &ahead(std::size_t n) const {
    return tokens_[std::min(pos_ + n, tokens_.size() - 1)];
  }
  [[nodiscard]] bool at_end() const { return cur().kind == TokenKind::End; }

  bool accept(std::string_view text) {
    if (cur().is(text)) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(std::string_view text) {
    if (!accept(text)) {
      fail("expected '" + std::string(text) + "'");
    }
  }

  std::string expect_identifier() {
    if (!cur().is_identifier()) {
      fail("expected an identifier");
    }
    return tokens_[pos_++].text;
  }

  [[noreturn]] void fail(const std::string &message) const {
    const Token &tok = cur();
    const std::string found =
        tok.kind == TokenKind::End ? "end of input" : "'" + tok.text + "'";
    throw ParseError(message + ", found " + found, tok.line, tok.column);
  }

  void build_bracket_map() {
    match_.assign(tokens_.size(), 0);
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      const Token &tok = tokens_[i];
      if (tok.kind != TokenKind::Operator) {
        continue;
      }
      if (tok.text == "(" || tok.text == "{" || tok.text == "[") {
        open.push_back(i);
      } else if (tok.text == ")" || tok.text == "}" || tok.text == "]") {
        const char expected = tok.text == ")" ? '(' : tok.text == "}" ? '{' : '[';
        if (open.empty() || tokens_[open.back()].text[0] != expected) {
          throw ParseError("unbalanced '" + tok.text + "'", tok.line,
                           tok.column);
        }
        match_[open.back()] = i;
        match_[i] = open.back();
        open.pop_back();
      }
    }
    if (!open.empty()) {
      const Token &tok = tokens_[open.back()];
      throw ParseError("unclosed '" + tok.text + "'", tok.line, tok.column);
    }
  }

  // Closing `>` of a type argument/parameter list opened at `lt`, or nullopt
  // if the tokens cannot form one (then `<` is a comparison).
  [[nodiscard]] std::optional<std::size_t> generic_close(std::size_t lt) const {
    int depth = 0;
    for (std::size_t j = lt; j < tokens_.size(); ++j) {
      const Token &tok = tokens_[j];
      if (tok.is("<")) {
        ++depth;
      } else if (tok.is(">")) {
        if (--depth == 0) {
          return j;
        }
      } else if (tok.is_identifier() || tok.is(".") || tok.is(",") ||
                 tok.is("?") || tok.is("&") || tok.is("[") || tok.is("]") ||
                 tok.is("@") || tok.is("extends") || tok.is("super") ||
                 (tok.kind == TokenKind::Keyword &&
                  kPrimitiveTypes.count(tok.text) != 0)) {
        continue;
      } else {
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  // ---- declarations -------------------------------------------------------

  void skip_package_and_imports() {
    std::size_t save = pos_;
    while (cur().is("@") && !ahead(1).is("interface")) {
      skip_annotation();
    }
    if (accept("package")) {
      skip_to_semicolon();
    } else {
      pos_ = save;
    }
    while (accept("import")) {
      skip_to_semicolon();
    }
    if (cur().is_identifier() && (cur().text == "module" || cur().text == "open") &&
        (ahead(1).is_identifier())) {
      fail("module declarations are not supported");
    }
  }

  void skip_to_semicolon() {
    while (!at_end() && !cur().is(";")) {
      ++pos_;
    }
    expect(";");
  }

  void skip_annotation() {
    expect("@");
    expect_identifier();
    while (cur().is(".") && ahead(1).is_identifier()) {
      pos_ += 2;
    }
    if (cur().is("(")) {
      pos_ = match_[pos_] + 1;
    }
  }

  Modifiers parse_modifiers() {
    Modifiers mods;
    mods.first_token = pos_;
    while (true) {
      const Token &tok = cur();
      if (tok.is("@") && !ahead(1).is("interface")) {
        if (ahead(1).is_identifier() && ahead(1).text == "Override") {
          mods.has_override = true;
        }
        skip_annotation();
      } else if (tok.kind == TokenKind::Keyword &&
                 kModifierKeywords.count(tok.text) != 0 &&
                 !(tok.text == "default" && (ahead(1).is(":") || ahead(1).is("->")))) {
        if (tok.text == "public") {
          mods.visibility = Visibility::Public;
        } else if (tok.text == "protected") {
          mods.visibility = Visibility::Protected;
        } else if (tok.text == "private") {
          mods.visibility = Visibility::Private;
        } else if (tok.text == "static") {
          mods.is_static = true;
        } else if (tok.text == "abstract") {
          mods.is_abstract = true;
        } else if (tok.text == "final") {
          mods.is_final = true;
        } else if (tok.text == "default") {
          mods.is_default = true;
        }
        ++pos_;
      } else if (tok.is_identifier() && tok.text == "sealed" &&
                 ahead(1).kind == TokenKind::Keyword) {
        ++pos_;
      } else if (tok.is_identifier() && tok.text == "non" && ahead(1).is("-") &&
                 ahead(2).is_identifier() && ahead(2).text == "sealed") {
        pos_ += 3;
      } else {
        return mods;
      }
    }
  }

  [[nodiscard]] bool is_type_declaration_start() const {
    if (cur().is("class") || cur().is("interface") || cur().is("enum")) {
      return true;
    }
    if (cur().is("@") && ahead(1).is("interface")) {
      return true;
    }
    return cur().is_identifier() && cur().text == "record" &&
           ahead(1).is_identifier() && (ahead(2).is("(") || ahead(2).is("<"));
  }

  void skip_type_parameters() {
    if (!cur().is("<")) {
      return;
    }
    auto close = generic_close(pos_);
    if (!close) {
      fail("malformed type parameter list");
    }
    pos_ = *close + 1;
  }

  TypeRef parse_type() {
    TypeRef type;
    const std::size_t start = pos_;
    while (cur().is("@")) {
      skip_annotation();
    }
    if (cur().kind == TokenKind::Keyword && kPrimitiveTypes.count(cur().text)) {
      type.simple_name = tokens_[pos_++].text;
    } else {
      type.simple_name = expect_identifier();
      skip_type_parameters();
      while (cur().is(".") && (ahead(1).is_identifier() || ahead(1).is("@"))) {
        ++pos_;
        while (cur().is("@")) {
          skip_annotation();
        }
        type.simple_name = expect_identifier();
        skip_type_parameters();
      }
    }
    while (cur().is("[") && ahead(1).is("]")) {
      pos_ += 2;
    }
    for (std::size_t i = start; i < pos_; ++i) {
      if (tokens_[i].is("@")) {
        // annotations are not part of the type text
        i = skip_annotation_at(i);
        continue;
      }
      type.text += tokens_[i].text;
      if (tokens_[i].is(",")) {
        type.text += ' ';
      }
    }
    return type;
  }

  // Index of the last token of the annotation starting at `at`.
  [[nodiscard]] std::size_t skip_annotation_at(std::size_t at) const {
    std::size_t j = at + 2;
    while (tokens_[j].is(".") && tokens_[j + 1].is_identifier()) {
      j += 2;
    }
    if (tokens_[j].is("(")) {
      return match_[j];
    }
    return j - 1;
  }

  std::vector<std::string> parse_type_list() {
    std::vector<std::string> names;
    do {
      names.push_back(parse_type().simple_name);
    } while (accept(","));
    return names;
  }

  ClassModel parse_type_declaration(const Modifiers &mods) {
    ClassModel model;
    model.is_abstract = mods.is_abstract;
    BodyContext ctx;
    if (accept("class")) {
      model.kind = TypeKind::Class;
      model.name = expect_identifier();
      skip_type_parameters();
      if (accept("extends")) {
        model.extends_name = parse_type().simple_name;
      }
      if (accept("implements")) {
        model.implements_names = parse_type_list();
      }
      skip_permits();
    } else if (cur().is("@") || cur().is("interface")) {
      accept("@");
      expect("interface");
      model.kind = TypeKind::Interface;
      model.is_abstract = true;
      model.name = expect_identifier();
      skip_type_parameters();
      if (accept("extends")) {
        model.implements_names = parse_type_list();
      }
      skip_permits();
    } else if (accept("enum")) {
      model.kind = TypeKind::Enum;
      model.name = expect_identifier();
      if (accept("implements")) {
        model.implements_names = parse_type_list();
      }
    } else {
      ++pos_;  // `record`
      model.kind = TypeKind::Class;
      model.name = expect_identifier();
      skip_type_parameters();
      parse_record_components(model);
      if (accept("implements")) {
        model.implements_names = parse_type_list();
      }
    }
    ctx.kind = model.kind;
    ctx.type_name = model.name;
    expect("{");
    if (model.kind == TypeKind::Enum) {
      parse_enum_constants(model);
    }
    parse_members(model, ctx);
    expect("}");
    return model;
  }

  void skip_permits() {
    if (cur().is_identifier() && cur().text == "permits") {
      ++pos_;
      parse_type_list();
    }
  }

  void parse_record_components(ClassModel &model) {
    if (!cur().is("(")) {
      fail("expected record components");
    }
    const std::size_t close = match_[pos_];
    ++pos_;
    while (pos_ < close) {
      while (cur().is("@")) {
        skip_annotation();
      }
      FieldModel field;
      field.type_name = parse_type().text;
      accept("...");
      field.name = expect_identifier();
      field.visibility = Visibility::Private;
      field.is_final = true;
      add_field(model, std::move(field));
      if (!accept(",")) {
        break;
      }
    }
    if (pos_ != close) {
      fail("malformed record components");
    }
    ++pos_;
  }

  void parse_enum_constants(ClassModel &model) {
    while (!cur().is(";") && !cur().is("}")) {
      while (cur().is("@")) {
        skip_annotation();
      }
      FieldModel constant;
      constant.name = expect_identifier();
      constant.visibility = Visibility::Public;
      constant.is_static = true;
      constant.is_final = true;
      constant.type_name = model.name;
      add_field(model, std::move(constant));
      if (cur().is("(")) {
        pos_ = match_[pos_] + 1;
      }
      if (cur().is("{")) {
        ++pos_;
        parse_members(model, BodyContext{TypeKind::Class, model.name});
        expect("}");
      }
      if (!accept(",")) {
        break;
      }
    }
    accept(";");
  }

  // Parses members up to (not including) the closing brace of the body.
  void parse_members(ClassModel &model, const BodyContext &ctx) {
    while (!cur().is("}")) {
      if (at_end()) {
        fail("unexpected end of type body");
      }
      if (accept(";")) {
        continue;
      }
      if (cur().is("{")) {
        pos_ = match_[pos_] + 1;  // instance initializer
        continue;
      }
      if (cur().is("static") && ahead(1).is("{")) {
        pos_ = match_[pos_ + 1] + 1;
        continue;
      }
      const Modifiers mods = parse_modifiers();
      if (is_type_declaration_start()) {
        const std::size_t pending_mark = pending_.size();
        ClassModel inner = parse_type_declaration(mods);
        for (std::size_t i = pending_mark; i < pending_.size(); ++i) {
          pending_[i].method_index += model.methods.size();
        }
        fold(model, std::move(inner));
        continue;
      }
      skip_type_parameters();
      if (cur().is_identifier() && ahead(1).is("(")) {
        parse_method(model, ctx, mods, TypeRef{}, true);
        continue;
      }
      if (cur().is_identifier() && cur().text == ctx.type_name &&
          ahead(1).is("{")) {
        parse_compact_constructor(model, mods);
        continue;
      }
      TypeRef type = parse_type();
      if (cur().is_identifier() && ahead(1).is("(")) {
        parse_method(model, ctx, mods, type, false);
      } else {
        parse_fields(model, ctx, mods, type);
      }
    }
  }

  void parse_method(ClassModel &model, const BodyContext &ctx,
                    const Modifiers &mods, const TypeRef &return_type,
                    bool constructor) {
    MethodModel method;
    method.name = expect_identifier();
    method.is_constructor = constructor;
    method.return_type = return_type.text;
    method.is_static = mods.is_static;
    method.is_final = mods.is_final;
    method.is_override = mods.has_override;
    const bool in_interface = ctx.kind == TypeKind::Interface;
    method.visibility = mods.visibility.value_or(
        in_interface ? Visibility::Public : Visibility::Package);

    const std::size_t open = pos_;
    method.param_count = count_parameters(open);
    pos_ = match_[open] + 1;
    while (cur().is("[") && ahead(1).is("]")) {
      pos_ += 2;
    }
    if (accept("throws")) {
      parse_type_list();
    }

    std::optional<PendingBody> body;
    if (cur().is("{")) {
      body = PendingBody{model.methods.size(), pos_ + 1, match_[pos_]};
      pos_ = match_[pos_] + 1;
    } else if (accept("default")) {
      skip_expression_until({";"});
      expect(";");
    } else {
      expect(";");
    }
    method.is_abstract =
        mods.is_abstract ||
        (in_interface && !body && !mods.is_static && !mods.is_default);
    method.loc = count_lines(mods.first_token, pos_ - 1);
    if (body) {
      pending_.push_back(*body);
    }
    model.methods.push_back(std::move(method));
  }

  void parse_compact_constructor(ClassModel &model, const Modifiers &mods) {
    MethodModel method;
    method.name = expect_identifier();
    method.is_constructor = true;
    method.visibility = mods.visibility.value_or(Visibility::Package);
    const PendingBody body{model.methods.size(), pos_ + 1, match_[pos_]};
    pos_ = match_[pos_] + 1;
    method.loc = count_lines(mods.first_token, pos_ - 1);
    pending_.push_back(body);
    model.methods.push_back(std::move(method));
  }

  // Counts top-level comma-separated entries between `(` at `open` and its
  // match, skipping generic argument lists and nested brackets.
  std::size_t count_parameters(std::size_t open) {
    const std::size_t close = match_[open];
    if (close == open + 1) {
      return 0;
    }
    std::size_t count = 1;
    for (std::size_t j = open + 1; j < close; ++j) {
      const Token &tok = tokens_[j];
      if (tok.is("(") || tok.is("[") || tok.is("{")) {
        j = match_[j];
      } else if (tok.is("<")) {
        if (auto gt = generic_close(j)) {
          j = *gt;
        }
      } else if (tok.is(",")) {
        ++count;
      }
    }
    return count;
  }

  void parse_fields(ClassModel &model, const BodyContext &ctx,
                    const Modifiers &mods, const TypeRef &type) {
    const bool in_interface = ctx.kind == TypeKind::Interface;
    while (true) {
      FieldModel field;
      field.name = expect_identifier();
      field.type_name = type.text;
      field.visibility = mods.visibility.value_or(
          in_interface ? Visibility::Public : Visibility::Package);
      field.is_static = mods.is_static || in_interface;
      field.is_final = mods.is_final || in_interface;
      while (cur().is("[") && ahead(1).is("]")) {
        pos_ += 2;
        field.type_name += "[]";
      }
      add_field(model, std::move(field));
      if (accept("=")) {
        skip_expression_until({",", ";"});
      }
      if (accept(",")) {
        continue;
      }
      expect(";");
      return;
    }
  }

  // Advances to the first of `stops` at bracket depth zero.
  void skip_expression_until(std::initializer_list<std::string_view> stops) {
    while (!at_end()) {
      const Token &tok = cur();
      for (std::string_view stop : stops) {
        if (tok.is(stop)) {
          return;
        }
      }
      if (tok.is("(") || tok.is("{") || tok.is("[")) {
        pos_ = match_[pos_] + 1;
      } else if (tok.is("<")) {
        auto gt = generic_close(pos_);
        pos_ = gt ? *gt + 1 : pos_ + 1;
      } else if (tok.is(")") || tok.is("}") || tok.is("]")) {
        fail("unexpected closing bracket in initializer");
      } else {
        ++pos_;
      }
    }
    fail("unterminated declaration");
  }

  static void add_field(ClassModel &model, FieldModel field) {
    const bool taken = std::any_of(
        model.fields.begin(), model.fields.end(),
        [&](const FieldModel &f) { return f.name == field.name; });
    if (!taken) {
      model.fields.push_back(std::move(field));
    }
  }

  // Member types contribute their fields and methods to the enclosing type.
  static void fold(ClassModel &outer, ClassModel inner) {
    for (auto &field : inner.fields) {
      add_field(outer, std::move(field));
    }
    for (auto &method : inner.methods) {
      outer.methods.push_back(std::move(method));
    }
  }

  // ---- whole-declaration passes -------------------------------------------

  [[nodiscard]] std::size_t count_lines(std::size_t first,
                                        std::size_t last) const {
    std::set<std::size_t> lines;
    for (std::size_t i = first; i <= last && i < tokens_.size(); ++i) {
      for (std::size_t l = tokens_[i].line; l <= tokens_[i].end_line; ++l) {
        lines.insert(l);
      }
    }
    return std::max<std::size_t>(lines.size(), 1);
  }

  void finish_top_level(ClassModel &model, std::size_t first,
                        std::size_t last) {
    model.loc = count_lines(first, last);
    for (std::size_t i = first; i <= last; ++i) {
      const Token &tok = tokens_[i];
      if (!tok.is_identifier()) {
        continue;
      }
      model.mentioned_names.insert(tok.text);
      const bool qualifier = i == first || !tokens_[i - 1].is(".");
      if (qualifier && i + 3 < tokens_.size() && tokens_[i + 1].is(".") &&
          tokens_[i + 2].is_identifier() && !tokens_[i + 3].is("(")) {
        model.qualified_accesses.emplace(tok.text, tokens_[i + 2].text);
      }
    }

    std::set<std::string> field_names;
    for (const auto &field : model.fields) {
      field_names.insert(field.name);
    }
    BodyAnalyzer analyzer(tokens_, match_);
    for (const PendingBody &body : pending_) {
      analyzer.run(body.begin, body.end, field_names,
                   model.methods[body.method_index]);
    }
    pending_.clear();

    for (auto &field : model.fields) {
      for (const auto &method : model.methods) {
        if (is_getter(method) && accessor_target(method.name) == field.name) {
          field.has_getter = true;
        }
        if (is_setter(method) && accessor_target(method.name) == field.name) {
          field.has_setter = true;
        }
      }
    }
  }

  std::vector<Token> tokens_;
  std::vector<std::size_t> match_;
  std::vector<PendingBody> pending_;
  std::size_t pos_ = 0;
};

}  // namespace

SourceUnit parse_source(std::string_view text, const std::string &path) {
  const std::string key = canonical_key(path);
  const std::string stem = key.substr(key.rfind('.') + 1);

  SourceUnit unit;
  unit.path = path;
  JavaParser parser(detail::tokenize(text));
  unit.types = parser.parse_unit();

  auto primary = std::find_if(unit.types.begin(), unit.types.end(),
                              [&](const ClassModel &c) { return c.name == stem; });
  if (primary == unit.types.end() && !unit.types.empty()) {
    primary = unit.types.begin();
  }
  for (auto it = unit.types.begin(); it != unit.types.end(); ++it) {
    it->canonical_key = it == primary ? key : key + "$" + it->name;
  }
  return unit;
}

std::size_t cyclomatic(std::string_view body) {
  const std::string wrapped =
      "class Probe { void probe() {\n" + std::string(body) + "\n} }";
  const SourceUnit unit = parse_source(wrapped, "Probe.java");
  return unit.types.front().methods.front().cyclomatic;
}

}  // namespace smellrole::code
