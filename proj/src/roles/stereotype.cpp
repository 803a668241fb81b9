#include <smellrole/roles/stereotype.hpp>

#include <smellrole/error.hpp>

#include <cctype>

namespace smellrole::roles {

namespace {

struct Names {
  std::string_view identifier;
  std::string_view display;
  std::string_view abbreviation;
};

constexpr std::array<Names, kLabelCount> kNames = {{
    {"Coordinator", "Coordinator", "CO"},
    {"Structurer", "Structurer", "ST"},
    {"Controller", "Controller", "CT"},
    {"InformationHolder", "Information Holder", "IH"},
    {"Interfacer", "Interfacer", "IT"},
    {"ServiceProvider", "Service Provider", "SP"},
}};

std::string fold(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return out;
}

}  // namespace

const std::array<Stereotype, kLabelCount> &all_stereotypes() {
  static const std::array<Stereotype, kLabelCount> labels = {
      Stereotype::Coordinator,       Stereotype::Structurer,
      Stereotype::Controller,        Stereotype::InformationHolder,
      Stereotype::Interfacer,        Stereotype::ServiceProvider};
  return labels;
}

std::string_view identifier(Stereotype label) {
  return kNames[static_cast<std::size_t>(label)].identifier;
}

std::string_view display_name(Stereotype label) {
  return kNames[static_cast<std::size_t>(label)].display;
}

std::string_view abbreviation(Stereotype label) {
  return kNames[static_cast<std::size_t>(label)].abbreviation;
}

std::optional<Stereotype> parse_stereotype(std::string_view text) {
  const std::string folded = fold(text);
  for (std::size_t i = 0; i < kLabelCount; ++i) {
    if (folded == fold(kNames[i].identifier) ||
        folded == fold(kNames[i].abbreviation)) {
      return static_cast<Stereotype>(i);
    }
  }
  return std::nullopt;
}

Stereotype require_stereotype(std::string_view text) {
  if (auto label = parse_stereotype(text)) {
    return *label;
  }
  throw Error("UnknownLabel", "not a role stereotype: '" + std::string(text) + "'");
}

}  // namespace smellrole::roles
