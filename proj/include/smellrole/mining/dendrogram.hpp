#pragma once

#include <smellrole/mining/matrix.hpp>

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace smellrole::mining {

/// Leaf when children is empty; internal nodes have exactly two children.
struct DendrogramNode {
  std::string label;
  double height = 0;
  std::vector<DendrogramNode> children;

  bool is_leaf() const { return children.empty(); }
  bool operator==(const DendrogramNode &) const = default;
};

using RowDistance = std::function<double(std::span<const std::uint8_t>, std::span<const std::uint8_t>)>;

enum class Linkage { Single, Complete, Average };

/// 1 - |a and b| / |a or b|; two empty rows are at distance 0.
double jaccard_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

/// Ties in merge distance go to the lexicographically smallest pair of
/// cluster labels, a cluster being labelled by its smallest leaf. Throws
/// Error{"TooFewRows"} below two rows.
DendrogramNode agglomerate(const BinaryMatrix &m, const RowDistance &distance = jaccard_distance,
                           Linkage linkage = Linkage::Average);

std::string to_json_text(const DendrogramNode &root);
std::string to_newick(const DendrogramNode &root);
std::string dendrogram_svg(const std::string &title, const DendrogramNode &root);

}  // namespace smellrole::mining
