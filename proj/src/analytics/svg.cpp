#include <smellrole/analytics/svg.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace smellrole::analytics {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string heat_colour(double v) {
  v = std::clamp(std::isfinite(v) ? v : 0.0, -1.0, 1.0);
  int r = 255;
  int g = 255;
  int b = 255;
  if (v >= 0) {
    g = b = static_cast<int>(std::lround(255 * (1 - v)));
  } else {
    r = g = static_cast<int>(std::lround(255 * (1 + v)));
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string xml_escape(const std::string &text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string bar_chart_svg(const std::string &title, const std::vector<std::string> &labels,
                          const std::vector<double> &values) {
  const double label_width = 200;
  const double bar_area = 400;
  const double row = 24;
  const double top = 40;
  const std::size_t n = std::min(labels.size(), values.size());
  double max_value = 0;
  for (std::size_t i = 0; i < n; ++i) max_value = std::max(max_value, values[i]);
  const double width = label_width + bar_area + 80;
  const double height = top + row * static_cast<double>(n) + 20;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
      << fmt(height) << "\">\n";
  out << "<text x=\"10\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">"
      << xml_escape(title) << "</text>\n";
  for (std::size_t i = 0; i < n; ++i) {
    const double y = top + row * static_cast<double>(i);
    const double w = max_value > 0 ? bar_area * std::max(0.0, values[i]) / max_value : 0;
    out << "<text x=\"" << fmt(label_width - 6) << "\" y=\"" << fmt(y + 16)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
        << xml_escape(labels[i]) << "</text>\n";
    out << "<rect x=\"" << fmt(label_width) << "\" y=\"" << fmt(y + 3) << "\" width=\"" << fmt(w)
        << "\" height=\"" << fmt(row - 6) << "\" fill=\"#4a7ab5\"/>\n";
    out << "<text x=\"" << fmt(label_width + w + 4) << "\" y=\"" << fmt(y + 16)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << fmt(values[i]) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string heatmap_svg(const std::string &title, const std::vector<std::string> &labels,
                        const std::vector<std::vector<double>> &values) {
  const double cell = 28;
  const double left = 240;
  const double top = 220;
  const std::size_t n = labels.size();
  const double size_x = left + cell * static_cast<double>(n) + 20;
  const double size_y = top + cell * static_cast<double>(n) + 20;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(size_x) << "\" height=\""
      << fmt(size_y) << "\">\n";
  out << "<text x=\"10\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">"
      << xml_escape(title) << "</text>\n";
  for (std::size_t i = 0; i < n; ++i) {
    const double y = top + cell * static_cast<double>(i);
    const double x = left + cell * static_cast<double>(i);
    out << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(y + cell * 0.65)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << xml_escape(labels[i]) << "</text>\n";
    out << "<text transform=\"translate(" << fmt(x + cell * 0.65) << "," << fmt(top - 6)
        << ") rotate(-90)\" font-family=\"sans-serif\" font-size=\"11\">"
        << xml_escape(labels[i]) << "</text>\n";
  }
  for (std::size_t i = 0; i < n && i < values.size(); ++i) {
    for (std::size_t j = 0; j < n && j < values[i].size(); ++j) {
      const double v = values[i][j];
      out << "<rect x=\"" << fmt(left + cell * static_cast<double>(j)) << "\" y=\""
          << fmt(top + cell * static_cast<double>(i)) << "\" width=\"" << fmt(cell)
          << "\" height=\"" << fmt(cell) << "\" fill=\"" << heat_colour(v)
          << "\" stroke=\"#ffffff\"><title>" << xml_escape(labels[i]) << " / "
          << xml_escape(labels[j]) << ": " << fmt(v) << "</title></rect>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace smellrole::analytics
