#include <smellrole/mining/popc.hpp>

#include <smellrole/csv.hpp>
#include <smellrole/error.hpp>
#include <smellrole/rng.hpp>

#include <cmath>
#include <limits>
#include <map>

namespace smellrole::mining {

namespace {

using Centre = std::vector<double>;

double squared_distance(const std::vector<std::uint8_t> &row, const Centre &centre) {
  double total = 0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    const double d = row[j] - centre[j];
    total += d * d;
  }
  return total;
}

Centre as_centre(const std::vector<std::uint8_t> &row) { return Centre(row.begin(), row.end()); }

/// Relabels ids by order of first appearance.
std::size_t compact(std::vector<std::size_t> &cluster) {
  std::map<std::size_t, std::size_t> ids;
  for (auto &c : cluster) {
    auto [it, inserted] = ids.emplace(c, ids.size());
    c = it->second;
  }
  return ids.size();
}

void require_samples(const BinaryMatrix &m) {
  validate(m);
  if (m.rows() < 2) {
    throw Error("TooFewSamples", "clustering needs at least two samples");
  }
}

}  // namespace

ClusterAssignment kmeans_init(const BinaryMatrix &m, std::uint64_t seed) {
  require_samples(m);
  const std::size_t n = m.rows();
  const std::size_t centres_wanted = (n + 1) / 2;

  // Distinct row patterns with their multiplicities.
  std::map<std::vector<std::uint8_t>, std::size_t> pattern_ids;
  std::vector<std::size_t> pattern_of(n);
  std::vector<std::size_t> first_row;
  std::vector<double> weight;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = pattern_ids.emplace(m.cells[i], first_row.size());
    if (inserted) {
      first_row.push_back(i);
      weight.push_back(0);
    }
    pattern_of[i] = it->second;
    weight[it->second] += 1;
  }
  const std::size_t patterns = first_row.size();

  Rng rng(stage_seed(seed, "kmeans"));
  std::vector<Centre> centres;
  centres.push_back(as_centre(m.cells[rng.below(n)]));
  std::vector<double> nearest(patterns);
  for (std::size_t p = 0; p < patterns; ++p) {
    nearest[p] = squared_distance(m.cells[first_row[p]], centres[0]);
  }
  while (centres.size() < centres_wanted) {
    std::size_t best = 0;
    for (std::size_t p = 1; p < patterns; ++p) {
      if (nearest[p] > nearest[best]) {
        best = p;
      }
    }
    if (nearest[best] == 0) {
      // Every row already coincides with a centre; the rest duplicate row 0.
      while (centres.size() < centres_wanted) {
        centres.push_back(as_centre(m.cells[0]));
      }
      break;
    }
    centres.push_back(as_centre(m.cells[first_row[best]]));
    for (std::size_t p = 0; p < patterns; ++p) {
      nearest[p] = std::min(nearest[p], squared_distance(m.cells[first_row[p]], centres.back()));
    }
  }

  std::vector<std::size_t> owner(patterns, std::numeric_limits<std::size_t>::max());
  std::size_t iterations = 0;
  while (iterations < 100) {
    ++iterations;
    bool changed = false;
    for (std::size_t p = 0; p < patterns; ++p) {
      std::size_t best = 0;
      double best_distance = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < centres.size(); ++c) {
        const double d = squared_distance(m.cells[first_row[p]], centres[c]);
        if (d < best_distance) {
          best_distance = d;
          best = c;
        }
      }
      if (owner[p] != best) {
        owner[p] = best;
        changed = true;
      }
    }
    if (!changed) {
      break;
    }
    std::vector<Centre> sums(centres.size(), Centre(m.cols(), 0.0));
    std::vector<double> mass(centres.size(), 0.0);
    for (std::size_t p = 0; p < patterns; ++p) {
      const auto &row = m.cells[first_row[p]];
      for (std::size_t j = 0; j < row.size(); ++j) {
        sums[owner[p]][j] += weight[p] * row[j];
      }
      mass[owner[p]] += weight[p];
    }
    for (std::size_t c = 0; c < centres.size(); ++c) {
      if (mass[c] > 0) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
          centres[c][j] = sums[c][j] / mass[c];
        }
      }
    }
  }

  ClusterAssignment a;
  a.cluster.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    a.cluster[i] = owner[pattern_of[i]];
  }
  a.clusters = compact(a.cluster);
  a.iterations = iterations;
  a.score = popc_score(a, m);
  return a;
}

double popc_score(const ClusterAssignment &a, const BinaryMatrix &m, double theta) {
  std::size_t clusters = 0;
  for (auto c : a.cluster) {
    clusters = std::max(clusters, c + 1);
  }
  std::vector<std::vector<double>> inside(clusters, std::vector<double>(m.cols(), 0.0));
  std::vector<double> total(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      inside[a.cluster[i]][j] += m.cells[i][j];
      total[j] += m.cells[i][j];
    }
  }
  double score = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (total[j] == 0) {
      continue;
    }
    for (std::size_t k = 0; k < clusters; ++k) {
      score += std::pow(inside[k][j] / total[j], theta);
    }
  }
  return score;
}

ClusterAssignment popc(const BinaryMatrix &m, std::uint64_t seed, double theta, PopcTrace *trace) {
  ClusterAssignment a = kmeans_init(m, seed);
  const std::size_t d = m.cols();

  std::vector<double> total(d, 0.0);
  std::vector<std::vector<std::size_t>> features(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (m.cells[i][j]) {
        features[i].push_back(j);
        total[j] += 1;
      }
    }
  }
  std::vector<double> scale(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    scale[j] = total[j] > 0 ? 1.0 / std::pow(total[j], theta) : 0.0;
  }

  std::vector<std::vector<double>> inside(a.clusters, std::vector<double>(d, 0.0));
  std::vector<std::size_t> size(a.clusters, 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ++size[a.cluster[i]];
    for (auto j : features[i]) {
      inside[a.cluster[i]][j] += 1;
    }
  }
  auto power = [theta](double x) { return x > 0 ? std::pow(x, theta) : 0.0; };
  auto current_score = [&] {
    double score = 0;
    for (const auto &counts : inside) {
      for (std::size_t j = 0; j < d; ++j) {
        score += power(counts[j]) * scale[j];
      }
    }
    return score;
  };
  if (trace) {
    trace->initial_score = current_score();
    trace->accepted.clear();
  }

  std::size_t sweeps = 0;
  bool improved = true;
  while (improved) {
    improved = false;
    ++sweeps;
    for (std::size_t s = 0; s < m.rows(); ++s) {
      if (features[s].empty()) {
        continue;
      }
      const std::size_t from = a.cluster[s];
      double leave = 0;
      for (auto j : features[s]) {
        leave += (power(inside[from][j] - 1) - power(inside[from][j])) * scale[j];
      }
      const std::size_t fresh = inside.size();
      for (std::size_t to = 0; to <= fresh; ++to) {
        if (to == from || (to < fresh && size[to] == 0)) {
          continue;
        }
        double delta = leave;
        for (auto j : features[s]) {
          const double c = to < fresh ? inside[to][j] : 0.0;
          delta += (power(c + 1) - power(c)) * scale[j];
        }
        if (delta > 1e-12) {
          if (to == fresh) {
            inside.emplace_back(d, 0.0);
            size.push_back(0);
          }
          for (auto j : features[s]) {
            inside[from][j] -= 1;
            inside[to][j] += 1;
          }
          --size[from];
          ++size[to];
          a.cluster[s] = to;
          improved = true;
          if (trace) {
            trace->accepted.push_back(current_score());
          }
          break;
        }
      }
    }
  }
  a.clusters = compact(a.cluster);
  a.iterations = sweeps;
  a.score = popc_score(a, m, theta);
  return a;
}

BinaryMatrix presence_by_group(const ClusterAssignment &a,
                               const std::vector<std::vector<std::string>> &groups_of,
                               const std::vector<std::string> &groups) {
  BinaryMatrix out;
  out.row_labels = groups;
  for (std::size_t k = 0; k < a.clusters; ++k) {
    out.column_labels.push_back("C" + std::to_string(k));
  }
  out.cells.assign(groups.size(), std::vector<std::uint8_t>(a.clusters, 0));
  std::map<std::string, std::size_t> row_of;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    row_of.emplace(groups[g], g);
  }
  for (std::size_t i = 0; i < a.cluster.size() && i < groups_of.size(); ++i) {
    for (const auto &group : groups_of[i]) {
      auto it = row_of.find(group);
      if (it != row_of.end()) {
        out.cells[it->second][a.cluster[i]] = 1;
      }
    }
  }
  return out;
}

BinaryMatrix presence_by_group(const ClusterAssignment &a, const std::vector<std::string> &group_of,
                               const std::vector<std::string> &groups) {
  std::vector<std::vector<std::string>> single;
  single.reserve(group_of.size());
  for (const auto &g : group_of) {
    single.push_back({g});
  }
  return presence_by_group(a, single, groups);
}

void write_clusters_csv(std::ostream &out, const BinaryMatrix &m, const ClusterAssignment &a) {
  csv::write_row(out, {"sample", "clusterId"});
  for (std::size_t i = 0; i < m.rows(); ++i) {
    csv::write_row(out, {m.row_labels[i], std::to_string(a.cluster[i])});
  }
}

}  // namespace smellrole::mining
