#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace smellrole::roles {

/// Enumeration order is the argmax tie-break order.
enum class Stereotype {
  Coordinator,
  Structurer,
  Controller,
  InformationHolder,
  Interfacer,
  ServiceProvider,
};

inline constexpr std::size_t kLabelCount = 6;

const std::array<Stereotype, kLabelCount> &all_stereotypes();

/// "ServiceProvider"
std::string_view identifier(Stereotype label);
/// "Service Provider", as written in labeled datasets.
std::string_view display_name(Stereotype label);
/// "SP", "IH", ...
std::string_view abbreviation(Stereotype label);

/// Accepts the identifier, display name or abbreviation, ignoring case and
/// surrounding blanks.
std::optional<Stereotype> parse_stereotype(std::string_view text);
/// As parse_stereotype; throws Error{"UnknownLabel"}.
Stereotype require_stereotype(std::string_view text);

}  // namespace smellrole::roles
