#include "lexer.hpp"

#include <smellrole/code/parser.hpp>

#include <algorithm>
#include <array>
#include <cctype>

namespace smellrole::code::detail {

namespace {

constexpr std::array<std::string_view, 53> kKeywords = {
    "abstract",  "assert",     "boolean",   "break",      "byte",
    "case",      "catch",      "char",      "class",      "const",
    "continue",  "default",    "do",        "double",     "else",
    "enum",      "extends",    "final",     "finally",    "float",
    "for",       "goto",       "if",        "implements", "import",
    "instanceof", "int",       "interface", "long",       "native",
    "new",       "package",    "private",   "protected",  "public",
    "return",    "short",      "static",    "strictfp",   "super",
    "switch",    "synchronized", "this",    "throw",      "throws",
    "transient", "try",        "void",      "volatile",   "while",
    "true",      "false",      "null"};

// Longest first within each leading character. Shift operators built from
// `>` are absent so that generic argument lists close one `>` at a time.
constexpr std::array<std::string_view, 37> kOperators = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
    ">=",  "+=",  "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", "(",
    ")",   "{",   "}",  "[",  "]",  ";",  ",",  ".",  "@",  "=",  "<",
    ">",   "!",   "~",  "?"};

constexpr std::string_view kSingleOperators = "+-*/%&|^:";

bool is_ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) {
  return is_ident_start(c) || std::isdigit(c);
}

class Lexer {
 public:
  explicit Lexer(std::string_view source) : src_(source) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skip_trivia();
      if (pos_ >= src_.size()) {
        break;
      }
      tokens.push_back(next());
    }
    Token end;
    end.line = end.end_line = line_;
    end.column = column();
    tokens.push_back(end);
    return tokens;
  }

 private:
  [[nodiscard]] std::size_t column() const { return pos_ - line_start_ + 1; }

  [[nodiscard]] char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      line_start_ = pos_ + 1;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') {
          advance();
        }
      } else if (c == '/' && peek(1) == '*') {
        const std::size_t line = line_;
        const std::size_t col = column();
        advance();
        advance();
        while (pos_ < src_.size() && !(src_[pos_] == '*' && peek(1) == '/')) {
          advance();
        }
        if (pos_ >= src_.size()) {
          throw ParseError("unterminated block comment", line, col);
        }
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  Token next() {
    Token token;
    token.line = line_;
    token.column = column();
    const std::size_t start = pos_;
    const auto c = static_cast<unsigned char>(src_[pos_]);

    if (is_ident_start(c)) {
      while (pos_ < src_.size() &&
             is_ident_part(static_cast<unsigned char>(src_[pos_]))) {
        advance();
      }
      token.text = std::string(src_.substr(start, pos_ - start));
      token.kind =
          is_keyword(token.text) ? TokenKind::Keyword : TokenKind::Identifier;
    } else if (std::isdigit(c) ||
               (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      lex_number();
      token.kind = TokenKind::Number;
      token.text = std::string(src_.substr(start, pos_ - start));
    } else if (c == '"') {
      if (peek(1) == '"' && peek(2) == '"') {
        lex_text_block(token);
      } else {
        lex_quoted('"', token);
      }
      token.kind = TokenKind::String;
      token.text = std::string(src_.substr(start, pos_ - start));
    } else if (c == '\'') {
      lex_quoted('\'', token);
      token.kind = TokenKind::Char;
      token.text = std::string(src_.substr(start, pos_ - start));
    } else {
      token.kind = TokenKind::Operator;
      token.text = lex_operator(token);
    }
    token.end_line = line_;
    return token;
  }

  void lex_number() {
    // Decimal, hex, binary, octal, underscores, exponents and type suffixes.
    bool seen_dot = false;
    while (pos_ < src_.size()) {
      const auto ch = static_cast<unsigned char>(src_[pos_]);
      if (ch == '.') {
        if (seen_dot || peek(1) == '.') {
          break;
        }
        seen_dot = true;
        advance();
      } else if (std::isalnum(ch) || ch == '_') {
        advance();
        const bool exponent = ch == 'e' || ch == 'E' || ch == 'p' || ch == 'P';
        if (exponent && (peek() == '+' || peek() == '-')) {
          advance();
        }
      } else {
        break;
      }
    }
  }

  void lex_quoted(char quote, const Token &token) {
    advance();
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') {
        throw ParseError("unterminated literal", token.line, token.column);
      }
      if (src_[pos_] == '\\') {
        advance();
        if (pos_ < src_.size()) {
          advance();
        }
        continue;
      }
      if (src_[pos_] == quote) {
        advance();
        return;
      }
      advance();
    }
  }

  void lex_text_block(const Token &token) {
    advance();
    advance();
    advance();
    while (true) {
      if (pos_ >= src_.size()) {
        throw ParseError("unterminated text block", token.line, token.column);
      }
      if (src_[pos_] == '\\') {
        advance();
        if (pos_ < src_.size()) {
          advance();
        }
        continue;
      }
      if (src_[pos_] == '"' && peek(1) == '"' && peek(2) == '"') {
        advance();
        advance();
        advance();
        return;
      }
      advance();
    }
  }

  std::string lex_operator(const Token &token) {
    const std::string_view rest = src_.substr(pos_);
    for (std::string_view op : kOperators) {
      if (rest.substr(0, op.size()) == op) {
        for (std::size_t i = 0; i < op.size(); ++i) {
          advance();
        }
        return std::string(op);
      }
    }
    if (kSingleOperators.find(rest.front()) != std::string_view::npos) {
      advance();
      return std::string(1, rest.front());
    }
    throw ParseError(std::string("unexpected character '") + rest.front() + "'",
                     token.line, token.column);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

}  // namespace

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> tokenize(std::string_view source) {
  return Lexer(source).run();
}

}  // namespace smellrole::code::detail
