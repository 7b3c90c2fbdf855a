#include "fastkassim/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fastkassim/error.hpp"

namespace fastkassim {

namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ClassificationMetrics classification_metrics(std::span<const LabeledPairScore> pairs, double threshold) {
  if (pairs.empty()) throw Error(ErrorCode::EmptyInput, "no scored pairs");
  if (!(threshold > 0.0 && threshold < 1.0))
    throw Error(ErrorCode::InvalidArgument, "threshold must lie in (0, 1)");

  std::size_t sim_hit = 0, sim_total = 0, pred_sim = 0;
  std::size_t dis_hit = 0, dis_total = 0, pred_dis = 0;
  for (const auto& p : pairs) {
    if (!std::isfinite(p.score) || p.score < 0.0 || p.score > 1.0)
      throw Error(ErrorCode::InvalidArgument, "score outside [0, 1]: " + std::to_string(p.score));
    const bool similar = p.score >= threshold;
    (similar ? pred_sim : pred_dis) += 1;
    if (p.same_source) {
      ++sim_total;
      if (similar) ++sim_hit;
    } else {
      ++dis_total;
      if (!similar) ++dis_hit;
    }
  }
  ClassificationMetrics m;
  m.accuracy = static_cast<double>(sim_hit + dis_hit) / static_cast<double>(pairs.size());
  m.sim_recall = ratio(sim_hit, sim_total);
  m.sim_precision = ratio(sim_hit, pred_sim);
  m.dis_recall = ratio(dis_hit, dis_total);
  m.dis_precision = ratio(dis_hit, pred_dis);
  return m;
}

std::vector<double> quantile_transform(std::span<const double> scores) {
  const std::size_t n = scores.size();
  if (n < 2) throw Error(ErrorCode::TooFewScores, "quantile transform needs at least 2 scores");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  std::vector<double> out(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) out[order[k]] = rank / static_cast<double>(n - 1);
    i = j + 1;
  }
  return out;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorCode::LengthMismatch, "pearson inputs differ in length");
  if (xs.size() < 2) throw Error(ErrorCode::TooFewScores, "pearson needs at least 2 points");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(ErrorCode::ZeroVariance, "pearson input has zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace fastkassim
