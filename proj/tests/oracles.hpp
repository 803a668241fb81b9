#pragma once

#include <smellrole/mining/matrix.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <vector>

namespace oracles {

// Rank by counting, then Pearson from the textbook formula.
inline double spearman(const std::vector<double> &x, const std::vector<double> &y) {
  auto ranks = [](const std::vector<double> &v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      double less = 0;
      double equal = 0;
      for (double w : v) {
        less += w < v[i];
        equal += w == v[i];
      }
      r[i] = less + (equal + 1) / 2;
    }
    return r;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += rx[i];
    sy += ry[i];
    sxx += rx[i] * rx[i];
    syy += ry[i] * ry[i];
    sxy += rx[i] * ry[i];
  }
  return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

// POPC score J straight from its definition.
inline double popc_score(const std::vector<std::size_t> &cluster, const smellrole::mining::BinaryMatrix &m,
                         double theta) {
  double score = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double total = 0;
    std::map<std::size_t, double> inside;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      total += m.cells[i][j];
      inside[cluster[i]] += m.cells[i][j];
    }
    if (total == 0) continue;
    for (const auto &[k, c] : inside) score += std::pow(c / total, theta);
  }
  return score;
}

// Best J over every assignment into at most k clusters.
inline double popc_best(const smellrole::mining::BinaryMatrix &m, std::size_t k, double theta) {
  std::vector<std::size_t> cluster(m.rows(), 0);
  double best = 0;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == m.rows()) {
      best = std::max(best, popc_score(cluster, m, theta));
      return;
    }
    for (std::size_t c = 0; c < k; ++c) {
      cluster[i] = c;
      go(i + 1);
    }
  };
  go(0);
  return best;
}

}  // namespace oracles
