#pragma once

#include <smellrole/mining/matrix.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace smellrole::mining {

struct ClusterAssignment {
  /// cluster[i] is the id of sample i; ids are 0..clusters-1 in order of
  /// first appearance.
  std::vector<std::size_t> cluster;
  std::size_t clusters = 0;
  double score = 0;
  /// Lloyd iterations for kmeans_init, sweeps for popc.
  std::size_t iterations = 0;
  bool operator==(const ClusterAssignment &) const = default;
};

/// k-means with ceil(n/2) centres and farthest-point seeding. Throws
/// Error{"TooFewSamples"} below two rows.
ClusterAssignment kmeans_init(const BinaryMatrix &m, std::uint64_t seed);

/// Sum over active features j and clusters k of (c_kj / m_j)^theta.
double popc_score(const ClusterAssignment &a, const BinaryMatrix &m, double theta = 2.0);

struct PopcTrace {
  double initial_score = 0;
  /// Score after every accepted move.
  std::vector<double> accepted;
};

/// Move-based refinement of kmeans_init; see popc_score.
ClusterAssignment popc(const BinaryMatrix &m, std::uint64_t seed, double theta = 2.0,
                       PopcTrace *trace = nullptr);

/// Rows are groups in the given order, columns are cluster ids ("C0", ...);
/// a cell is 1 iff some sample of that group lies in that cluster.
BinaryMatrix presence_by_group(const ClusterAssignment &a,
                               const std::vector<std::string> &group_of,
                               const std::vector<std::string> &groups);
/// Samples belonging to several groups at once (e.g. the smells of a class).
BinaryMatrix presence_by_group(const ClusterAssignment &a,
                               const std::vector<std::vector<std::string>> &groups_of,
                               const std::vector<std::string> &groups);

/// sample,clusterId
void write_clusters_csv(std::ostream &out, const BinaryMatrix &m, const ClusterAssignment &a);

}  // namespace smellrole::mining
