#include <smellrole/dataset/manifest.hpp>

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace smellrole::dataset {

namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

[[noreturn]] void syntax(const std::string &message, std::size_t line, std::size_t column) {
  throw PositionedError("ManifestSyntax", message, line, column);
}

// Parses a value up to an unquoted '#'.
std::string parse_value(std::string_view raw, std::size_t line, std::size_t column) {
  raw = trim(raw);
  if (raw.empty() || raw.front() != '"') {
    const auto hash = raw.find('#');
    return std::string(trim(raw.substr(0, hash)));
  }
  std::string value;
  std::size_t i = 1;
  for (; i < raw.size() && raw[i] != '"'; ++i) {
    if (raw[i] == '\\' && i + 1 < raw.size()) {
      ++i;
      switch (raw[i]) {
        case 'n': value += '\n'; break;
        case 't': value += '\t'; break;
        default: value += raw[i]; break;
      }
    } else {
      value += raw[i];
    }
  }
  if (i >= raw.size()) {
    syntax("unterminated string", line, column);
  }
  const std::string_view rest = trim(raw.substr(i + 1));
  if (!rest.empty() && rest.front() != '#') {
    syntax("unexpected text after value", line, column);
  }
  return value;
}

std::string quoted(std::string_view value) {
  std::string out = "\"";
  for (char c : value) {
    if (c == '"' || c == '\\') {
      out += '\\';
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace

const char *to_string(Kind kind) { return kind == Kind::Desktop ? "desktop" : "mobile"; }

Kind parse_kind(std::string_view text) {
  std::string lower;
  for (char c : trim(text)) {
    lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (lower == "desktop") {
    return Kind::Desktop;
  }
  if (lower == "mobile") {
    return Kind::Mobile;
  }
  throw Error("BadKind", "kind must be desktop or mobile, got '" + std::string(text) + "'");
}

const Project *CorpusManifest::find(std::string_view name) const {
  for (const auto &project : projects) {
    if (project.name == name) {
      return &project;
    }
  }
  return nullptr;
}

std::string default_class_path_pattern(std::string_view root_path) {
  while (!root_path.empty() && (root_path.back() == '/' || root_path.back() == '\\')) {
    root_path.remove_suffix(1);
  }
  const auto slash = root_path.find_last_of("/\\");
  const std::string_view base =
      slash == std::string_view::npos ? root_path : root_path.substr(slash + 1);
  std::string pattern;
  for (char c : base) {
    if (std::string_view(".^$|()[]{}*+?\\/").find(c) != std::string_view::npos) {
      pattern += '\\';
    }
    pattern += c;
  }
  return pattern + "[A-Za-z0-9_.$-]*";
}

CorpusManifest load_manifest(std::string_view text) {
  struct Pending {
    Project project;
    bool has_kind = false;
    bool has_root = false;
    bool has_pattern = false;
    std::size_t line = 0;
  };
  std::vector<Pending> blocks;
  std::istringstream in{std::string(text)};
  std::string raw_line;
  std::size_t line = 0;
  while (std::getline(in, raw_line)) {
    ++line;
    const std::string_view content = trim(raw_line);
    if (content.empty() || content.front() == '#') {
      continue;
    }
    const std::size_t column = static_cast<std::size_t>(content.data() - raw_line.data()) + 1;
    if (content.front() == '[') {
      const auto hash = content.find('#');
      if (trim(content.substr(0, hash)) != "[[project]]") {
        syntax("unknown section " + std::string(content), line, column);
      }
      blocks.push_back({});
      blocks.back().line = line;
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string_view::npos) {
      syntax("expected key = value", line, column);
    }
    if (blocks.empty()) {
      syntax("key outside a [[project]] block", line, column);
    }
    const std::string key(trim(content.substr(0, eq)));
    const std::string value = parse_value(content.substr(eq + 1), line, column);
    Pending &block = blocks.back();
    if (key == "name") {
      block.project.name = value;
    } else if (key == "root" || key == "rootPath") {
      block.project.root_path = value;
      block.has_root = true;
    } else if (key == "kind") {
      block.project.kind = parse_kind(value);
      block.has_kind = true;
    } else if (key == "pattern" || key == "classPathPattern") {
      block.project.class_path_pattern = value;
      block.has_pattern = true;
    } else if (key == "version") {
      block.project.version = value;
    } else {
      syntax("unknown key " + key, line, column);
    }
  }

  CorpusManifest manifest;
  std::set<std::string> names;
  for (auto &block : blocks) {
    if (block.project.name.empty()) {
      syntax("project without a name", block.line, 1);
    }
    if (!block.has_kind) {
      throw Error("BadKind", "project " + block.project.name + " has no kind");
    }
    if (!names.insert(block.project.name).second) {
      throw Error("DuplicateProject", "project " + block.project.name + " listed twice");
    }
    if (!block.has_root) {
      block.project.root_path = block.project.name;
    }
    if (!block.has_pattern) {
      block.project.class_path_pattern = default_class_path_pattern(block.project.root_path);
    }
    manifest.projects.push_back(std::move(block.project));
  }
  return manifest;
}

std::string to_text(const CorpusManifest &manifest) {
  std::string out;
  for (const auto &p : manifest.projects) {
    out += "[[project]]\n";
    out += "name = " + quoted(p.name) + "\n";
    out += "root = " + quoted(p.root_path) + "\n";
    out += "kind = " + quoted(to_string(p.kind)) + "\n";
    out += "pattern = " + quoted(p.class_path_pattern) + "\n";
    if (!p.version.empty()) {
      out += "version = " + quoted(p.version) + "\n";
    }
    out += "\n";
  }
  return out;
}

}  // namespace smellrole::dataset
