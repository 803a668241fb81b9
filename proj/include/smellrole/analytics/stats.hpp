#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace smellrole::analytics {

struct WelchResult {
  double t = 0;
  double df = 0;  // Welch-Satterthwaite
  double p = 1;   // two-sided
};

/// Welch's unequal-variance two-sample t-test. Throws
/// Error{"TooFewSamples"} below two observations per group and
/// Error{"ZeroVariance"} if a group is constant.
WelchResult welch_ttest(std::span<const double> a, std::span<const double> b);

double mean(std::span<const double> values);
/// Unbiased sample variance.
double variance(std::span<const double> values);

/// 1-based ranks, ties receiving the average of their positions.
std::vector<double> average_ranks(std::span<const double> values);

/// A constant input gives value 0 with `defined` false.
struct Correlation {
  double value = 0;
  bool defined = true;
};
Correlation pearson(std::span<const double> x, std::span<const double> y);
Correlation spearman(std::span<const double> x, std::span<const double> y);

struct CorrelationMatrix {
  std::vector<std::vector<double>> values;  // values[i][j]
  std::vector<bool> constant;               // column i has zero variance
};

/// Spearman correlation of every column pair. Constant columns correlate 0
/// with everything but keep 1 on the diagonal. Throws Error{"TooFewRows"}
/// for fewer than two rows.
CorrelationMatrix spearman_matrix(const std::vector<std::vector<double>> &columns);

}  // namespace smellrole::analytics
