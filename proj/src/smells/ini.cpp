#include <smellrole/smells/ini.hpp>

#include <smellrole/csv.hpp>
#include <smellrole/error.hpp>

#include <cmath>
#include <cstdio>
#include <map>
#include <regex>
#include <sstream>

namespace smellrole::smells {

namespace {

// Java's Double.toString for the values that occur here: "9.0", "0.75".
std::string java_double(double value) {
  if (std::isfinite(value) && value == std::floor(value) && std::fabs(value) < 1e15) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.1f", value);
    return buffer;
  }
  return csv::format_number(value);
}

std::string bound_suffix(Level level) {
  switch (level) {
    case Level::Low:
    case Level::VeryLow:
      return "_MinBound";
    case Level::Equal:
      return "_Bound";
    default:
      return "_MaxBound";
  }
}

}  // namespace

std::string ini_file_name(std::string_view project, std::string_view smell) {
  return "DetectionResults in " + std::string(project) + " for " +
         std::string(smell) + ".ini";
}

std::string emit_ini(const std::vector<SmellDetection> &detections,
                     std::string_view smell) {
  std::ostringstream out;
  out << "# Results of the detection\n\n";
  const std::string rule = std::string(smell) + "Class";
  std::size_t n = 0;
  for (const auto &detection : detections) {
    if (detection.smell_name != smell) {
      continue;
    }
    for (std::size_t k = 0; k < detection.count; ++k) {
      ++n;
      const std::string prefix = std::to_string(n) + ".100.";
      out << "# ------>" << smell << " num: " << n << "\n\n";
      out << prefix << "Name = " << smell << "\n\n";
      out << "#" << rule << "\n";
      out << prefix << rule << "-0 = " << detection.canonical_key << "\n";
      if (k < detection.witnesses.size()) {
        std::map<std::string, std::size_t> seen;
        for (const auto &witness : detection.witnesses[k]) {
          const std::string index = std::to_string(seen[witness.label]++);
          const std::string bound = witness.label + bound_suffix(witness.level);
          out << prefix << rule << "-0." << witness.label << "-" << index
              << " = " << java_double(witness.value) << "\n";
          out << prefix << rule << "-0." << bound << "-" << index << " = {"
              << bound << "=" << java_double(witness.threshold) << "}\n";
        }
      }
      out << "\n";
    }
  }
  return out.str();
}

SmellCountTable parse_ini(const std::vector<IniFile> &files,
                          const std::string &class_pattern,
                          std::vector<std::string> *warnings) {
  static const std::regex file_name_re(R"(^DetectionResults in (.*) for ([A-Za-z]+)\.ini$)");
  std::regex pattern;
  try {
    pattern = std::regex(class_pattern);
  } catch (const std::regex_error &error) {
    throw Error("InvalidPattern", "bad class path pattern " + class_pattern +
                                      ": " + error.what());
  }
  const bool grouped = pattern.mark_count() >= 1;

  SmellCountTable table;
  for (const auto &file : files) {
    const auto slash = file.name.find_last_of("/\\");
    const std::string base =
        slash == std::string::npos ? file.name : file.name.substr(slash + 1);
    std::smatch name_match;
    std::optional<std::size_t> smell;
    if (std::regex_match(base, name_match, file_name_re)) {
      smell = smell_index(name_match[2].str());
    }
    if (!smell) {
      throw Error("UnknownSmellInFileName", "cannot tell the smell of " + base);
    }

    bool has_content = false;
    std::size_t matches = 0;
    std::istringstream lines(file.text);
    std::string line;
    while (std::getline(lines, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') {
        continue;
      }
      has_content = true;
      for (std::sregex_iterator it(line.begin(), line.end(), pattern), end;
           it != end; ++it) {
        const auto &m = *it;
        const std::string key = grouped && m[1].matched ? m[1].str() : m[0].str();
        if (key.empty()) {
          continue;
        }
        ++table.row(key)[*smell];
        ++matches;
      }
    }
    if (has_content && matches == 0 && warnings != nullptr) {
      warnings->push_back("PatternMatchesNothing: " + class_pattern + " in " + base);
    }
  }
  return table;
}

}  // namespace smellrole::smells
