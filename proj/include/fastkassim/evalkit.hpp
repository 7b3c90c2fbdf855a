#pragma once

#include <optional>
#include <span>
#include <vector>

namespace fastkassim {

struct LabeledPairScore {
  double score = 0.0;
  bool same_source = false;
};

/// Ratios with a zero denominator are left empty.
struct ClassificationMetrics {
  double accuracy = 0.0;
  std::optional<double> sim_recall;
  std::optional<double> sim_precision;
  std::optional<double> dis_recall;
  std::optional<double> dis_precision;
};

/// A pair is predicted similar when score >= threshold.
ClassificationMetrics classification_metrics(std::span<const LabeledPairScore> pairs, double threshold = 0.5);

/// Averaged (fractional) rank / (n - 1), reported in input order.
std::vector<double> quantile_transform(std::span<const double> scores);

double pearson(std::span<const double> xs, std::span<const double> ys);

}  // namespace fastkassim
