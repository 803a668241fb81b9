#pragma once

#include <smellrole/code/model.hpp>
#include <smellrole/error.hpp>

#include <cstddef>
#include <string>
#include <string_view>

namespace smellrole::code {

/// Unsupported or malformed Java syntax. Recoverable per file.
class ParseError : public PositionedError {
 public:
  ParseError(const std::string &message, std::size_t line, std::size_t column)
      : PositionedError("ParseError", message, line, column) {}
};

/// Parses one Java compilation unit. `path` is the corpus-relative file path
/// and determines the canonical keys of the declared top-level types: the
/// type named like the file gets canonical_key(path); any further top-level
/// type T gets canonical_key(path) + "$" + T.
SourceUnit parse_source(std::string_view text, const std::string &path);

/// "src/a/B.java" -> "src.a.B". Throws Error{"NotJavaSource"} for other
/// extensions.
std::string canonical_key(std::string_view path);

/// Cyclomatic complexity of a method body given as source text (without the
/// enclosing braces): 1 + if, for, while, do, case, catch, ternary, &&, ||.
std::size_t cyclomatic(std::string_view body);

}  // namespace smellrole::code
