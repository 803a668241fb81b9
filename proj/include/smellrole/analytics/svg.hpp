#pragma once

#include <string>
#include <vector>

namespace smellrole::analytics {

/// Horizontal bar chart, one bar per label.
std::string bar_chart_svg(const std::string &title, const std::vector<std::string> &labels,
                          const std::vector<double> &values);

/// Square heatmap of values in [-1, 1].
std::string heatmap_svg(const std::string &title, const std::vector<std::string> &labels,
                        const std::vector<std::vector<double>> &values);

/// Escapes &, <, > and quotes for SVG text.
std::string xml_escape(const std::string &text);

}  // namespace smellrole::analytics
