#include <smellrole/mining/dendrogram.hpp>

#include <smellrole/analytics/svg.hpp>
#include <smellrole/csv.hpp>
#include <smellrole/error.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace smellrole::mining {

double jaccard_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  std::size_t both = 0;
  std::size_t either = 0;
  for (std::size_t j = 0; j < a.size() && j < b.size(); ++j) {
    both += a[j] && b[j];
    either += a[j] || b[j];
  }
  return either == 0 ? 0.0 : 1.0 - static_cast<double>(both) / static_cast<double>(either);
}

DendrogramNode agglomerate(const BinaryMatrix &m, const RowDistance &distance, Linkage linkage) {
  validate(m);
  const std::size_t n = m.rows();
  if (n < 2) {
    throw Error("TooFewRows", "a dendrogram needs at least two rows");
  }
  std::vector<DendrogramNode> nodes;
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < n; ++i) {
    nodes.push_back({m.row_labels[i], 0.0, {}});
    members.push_back(1);
  }
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      dist[i][j] = dist[j][i] = distance(m.cells[i], m.cells[j]);
    }
  }
  std::vector<bool> active(n, true);
  auto ordered = [&](std::size_t i, std::size_t j) {
    return std::minmax(nodes[i].label, nodes[j].label);
  };
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t bi = 0;
    std::size_t bj = 0;
    bool found = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        const double d = dist[i][j];
        if (!found || d < dist[bi][bj] - 1e-12 ||
            (std::abs(d - dist[bi][bj]) <= 1e-12 && ordered(i, j) < ordered(bi, bj))) {
          bi = i;
          bj = j;
          found = true;
        }
      }
    }
    if (nodes[bj].label < nodes[bi].label) {
      std::swap(bi, bj);
    }
    DendrogramNode merged;
    merged.label = nodes[bi].label;
    merged.height = dist[bi][bj];
    merged.children = {std::move(nodes[bi]), std::move(nodes[bj])};
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == bi || k == bj) continue;
      double d = 0;
      switch (linkage) {
        case Linkage::Single: d = std::min(dist[bi][k], dist[bj][k]); break;
        case Linkage::Complete: d = std::max(dist[bi][k], dist[bj][k]); break;
        case Linkage::Average:
          d = (static_cast<double>(members[bi]) * dist[bi][k] +
               static_cast<double>(members[bj]) * dist[bj][k]) /
              static_cast<double>(members[bi] + members[bj]);
          break;
      }
      dist[bi][k] = dist[k][bi] = d;
    }
    nodes[bi] = std::move(merged);
    members[bi] += members[bj];
    active[bj] = false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (active[i]) return nodes[i];
  }
  return {};
}

namespace {

nlohmann::json node_json(const DendrogramNode &node) {
  if (node.is_leaf()) {
    return {{"label", node.label}};
  }
  nlohmann::json children = nlohmann::json::array();
  for (const auto &child : node.children) {
    children.push_back(node_json(child));
  }
  return {{"height", node.height}, {"children", children}};
}

std::string newick_label(const std::string &label) {
  if (label.find_first_of(" \t()[]':;,") == std::string::npos) {
    return label;
  }
  std::string out = "'";
  for (char c : label) {
    out += c;
    if (c == '\'') out += '\'';
  }
  return out + "'";
}

void newick(std::ostream &out, const DendrogramNode &node, double parent_height) {
  if (node.is_leaf()) {
    out << newick_label(node.label);
  } else {
    out << '(';
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      if (i) out << ',';
      newick(out, node.children[i], node.height);
    }
    out << ')';
  }
  out << ':' << csv::format_number(parent_height - node.height);
}

void collect_leaves(const DendrogramNode &node, std::vector<std::string> &out) {
  if (node.is_leaf()) {
    out.push_back(node.label);
  }
  for (const auto &child : node.children) collect_leaves(child, out);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string to_json_text(const DendrogramNode &root) { return node_json(root).dump(2) + "\n"; }

std::string to_newick(const DendrogramNode &root) {
  std::ostringstream out;
  if (root.is_leaf()) {
    out << newick_label(root.label);
  } else {
    out << '(';
    for (std::size_t i = 0; i < root.children.size(); ++i) {
      if (i) out << ',';
      newick(out, root.children[i], root.height);
    }
    out << ')';
  }
  out << ";\n";
  return out.str();
}

std::string dendrogram_svg(const std::string &title, const DendrogramNode &root) {
  std::vector<std::string> leaves;
  collect_leaves(root, leaves);
  const double row = 22;
  const double top = 40;
  const double label_width = 220;
  const double plot = 400;
  const double max_height = root.height > 0 ? root.height : 1;
  std::ostringstream body;
  std::size_t next_leaf = 0;
  auto x_of = [&](double h) { return label_width + plot * h / max_height; };
  // Draws a subtree and returns the y coordinate of its root.
  std::function<double(const DendrogramNode &)> draw = [&](const DendrogramNode &node) -> double {
    if (node.is_leaf()) {
      const double y = top + row * static_cast<double>(next_leaf++) + row / 2;
      body << "<text x=\"" << num(label_width - 6) << "\" y=\"" << num(y + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
           << analytics::xml_escape(node.label) << "</text>\n";
      return y;
    }
    std::vector<double> ys;
    for (const auto &child : node.children) {
      const double y = draw(child);
      body << "<line x1=\"" << num(x_of(child.height)) << "\" y1=\"" << num(y) << "\" x2=\""
           << num(x_of(node.height)) << "\" y2=\"" << num(y) << "\" stroke=\"#333\"/>\n";
      ys.push_back(y);
    }
    const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
    body << "<line x1=\"" << num(x_of(node.height)) << "\" y1=\"" << num(*lo) << "\" x2=\""
         << num(x_of(node.height)) << "\" y2=\"" << num(*hi) << "\" stroke=\"#333\"/>\n";
    return (*lo + *hi) / 2;
  };
  draw(root);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(label_width + plot + 40)
      << "\" height=\"" << num(top + row * static_cast<double>(leaves.size()) + 20) << "\">\n";
  out << "<text x=\"10\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">"
      << analytics::xml_escape(title) << "</text>\n";
  out << body.str() << "</svg>\n";
  return out.str();
}

}  // namespace smellrole::mining
