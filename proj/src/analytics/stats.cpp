#include <smellrole/analytics/stats.hpp>

#include <smellrole/error.hpp>

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace smellrole::analytics {

double mean(std::span<const double> values) {
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double variance(std::span<const double> values) {
  const double m = mean(values);
  double sum = 0;
  for (double v : values) {
    sum += (v - m) * (v - m);
  }
  return sum / static_cast<double>(values.size() - 1);
}

WelchResult welch_ttest(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error("TooFewSamples", "Welch's test needs two observations per group");
  }
  const double va = variance(a);
  const double vb = variance(b);
  if (va == 0 || vb == 0) {
    throw Error("ZeroVariance", "Welch's test needs non-constant groups");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double sa = va / na;
  const double sb = vb / nb;
  WelchResult result;
  result.t = (mean(a) - mean(b)) / std::sqrt(sa + sb);
  result.df = (sa + sb) * (sa + sb) / (sa * sa / (na - 1) + sb * sb / (nb - 1));
  const boost::math::students_t dist(result.df);
  result.p = std::min(1.0, 2 * boost::math::cdf(boost::math::complement(dist, std::fabs(result.t))));
  return result;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) {
      ++j;
    }
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) {
      ranks[order[k]] = rank;
    }
    i = j + 1;
  }
  return ranks;
}

Correlation pearson(std::span<const double> x, std::span<const double> y) {
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0;
  double sxx = 0;
  double syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) {
    return {0, false};
  }
  return {std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0), true};
}

Correlation spearman(std::span<const double> x, std::span<const double> y) {
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

CorrelationMatrix spearman_matrix(const std::vector<std::vector<double>> &columns) {
  const std::size_t n = columns.size();
  const std::size_t rows = n == 0 ? 0 : columns.front().size();
  if (rows < 2) {
    throw Error("TooFewRows", "correlations need at least two rows");
  }
  std::vector<std::vector<double>> ranks;
  CorrelationMatrix matrix;
  matrix.values.assign(n, std::vector<double>(n, 0.0));
  matrix.constant.assign(n, false);
  for (const auto &column : columns) {
    if (column.size() != rows) {
      throw Error("TooFewRows", "columns differ in length");
    }
    ranks.push_back(average_ranks(column));
  }
  for (std::size_t i = 0; i < n; ++i) {
    matrix.constant[i] =
        std::all_of(columns[i].begin(), columns[i].end(),
                    [&](double v) { return v == columns[i].front(); });
  }
  for (std::size_t i = 0; i < n; ++i) {
    matrix.values[i][i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = pearson(ranks[i], ranks[j]).value;
      matrix.values[i][j] = r;
      matrix.values[j][i] = r;
    }
  }
  return matrix;
}

}  // namespace smellrole::analytics
