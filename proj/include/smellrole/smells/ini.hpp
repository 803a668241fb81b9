#pragma once

#include <smellrole/smells/catalog.hpp>
#include <smellrole/smells/detect.hpp>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace smellrole::smells {

/// "DetectionResults in <project> for <smell>.ini"
std::string ini_file_name(std::string_view project, std::string_view smell);

/// Detection report in the layout of the SAD tool: one numbered block per
/// occurrence, starting at 1.
std::string emit_ini(const std::vector<SmellDetection> &detections,
                     std::string_view smell);

struct IniFile {
  std::string name;  // file name, directories allowed
  std::string text;
};

/// Counts pattern matches per class and smell. If `class_pattern` has a
/// capture group, group 1 is the class key, otherwise the whole match.
/// Lines starting with '#' are ignored. Throws
/// Error{"UnknownSmellInFileName"}; files with content but no match add a
/// "PatternMatchesNothing" message to `warnings`.
SmellCountTable parse_ini(const std::vector<IniFile> &files,
                          const std::string &class_pattern,
                          std::vector<std::string> *warnings = nullptr);

}  // namespace smellrole::smells
