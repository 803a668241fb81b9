#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace smellrole::code::detail {

enum class TokenKind { Identifier, Keyword, Number, String, Char, Operator, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::size_t line = 0;
  std::size_t end_line = 0;  // differs from line only for text blocks
  std::size_t column = 0;

  [[nodiscard]] bool is(std::string_view t) const {
    return (kind == TokenKind::Operator || kind == TokenKind::Keyword) &&
           text == t;
  }
  [[nodiscard]] bool is_identifier() const {
    return kind == TokenKind::Identifier;
  }
  [[nodiscard]] bool is_literal() const {
    return kind == TokenKind::Number || kind == TokenKind::String ||
           kind == TokenKind::Char;
  }
};

/// Splits Java source into tokens, dropping whitespace and comments. The
/// result always ends with one End token. `>` is never fused with a
/// following `>` so that nested generic argument lists close cleanly.
std::vector<Token> tokenize(std::string_view source);

bool is_keyword(std::string_view word);

}  // namespace smellrole::code::detail
