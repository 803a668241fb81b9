#pragma once

#include <smellrole/error.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace smellrole::dataset {

enum class Kind { Desktop, Mobile };

const char *to_string(Kind kind);
/// "desktop" or "mobile", any case; throws Error{"BadKind"}.
Kind parse_kind(std::string_view text);

struct Project {
  std::string name;
  std::string root_path;
  Kind kind = Kind::Desktop;
  /// Regular expression locating class keys in detection reports.
  std::string class_path_pattern;
  std::string version;

  bool operator==(const Project &) const = default;
};

struct CorpusManifest {
  std::vector<Project> projects;

  [[nodiscard]] const Project *find(std::string_view name) const;
  bool operator==(const CorpusManifest &) const = default;
};

/// Default pattern for a project: the escaped last path component of the
/// root followed by key characters.
std::string default_class_path_pattern(std::string_view root_path);

/// Parses blocks of the form
///
///   [[project]]
///   name = "K9"
///   root = "k9mail"
///   kind = "mobile"
///   pattern = "k9mail[a-zA-Z0-9.-]+"   # optional
///   version = "5.600"                  # optional
///
/// Values may be quoted or bare; '#' starts a comment. `root` defaults to
/// the name. Throws Error{"DuplicateProject"}, Error{"BadKind"} or
/// PositionedError{"ManifestSyntax"}.
CorpusManifest load_manifest(std::string_view text);

std::string to_text(const CorpusManifest &manifest);

}  // namespace smellrole::dataset
