#include "fastkassim/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fastkassim/error.hpp"

namespace fastkassim {

namespace {

bool same_label(const Node& a, const Node& b) { return a.label_hash == b.label_hash && a.label == b.label; }

void require_nonterminal(const ParseTree& t, const char* which) {
  if (t.nonterminal_count() == 0)
    throw Error(ErrorCode::DegenerateTree, std::string(which) + " has no non-terminal node");
}

// Sum of delta_lb over same-label non-terminal pairs with a as the first
// argument, in preorder of a and then of b.
double oriented_sum(const ParseTree& a, const ParseTree& b, const KernelConfig& cfg, PairCache* memo,
                    KernelStats& stats) {
  const auto partner = match_label_groups(a, b);
  const auto groups = b.label_groups();
  double sum = 0.0;
  for (NodeId n1 = 0; n1 < a.size(); ++n1) {
    const std::uint32_t g = a.group_of(n1);
    if (g == ParseTree::kNoGroup || partner[g] < 0) continue;
    for (NodeId n2 : groups[static_cast<std::size_t>(partner[g])].nodes)
      sum += delta_lb(a, n1, b, n2, cfg, memo, &stats);
  }
  return sum;
}

}  // namespace

std::vector<std::int32_t> match_label_groups(const ParseTree& t1, const ParseTree& t2) {
  auto g1 = t1.label_groups();
  auto g2 = t2.label_groups();
  std::vector<std::int32_t> partner(g1.size(), -1);
  std::size_t i = 0, j = 0;
  while (i < g1.size() && j < g2.size()) {
    int cmp = t1.node(g1[i].representative).label.compare(t2.node(g2[j].representative).label);
    if (cmp < 0) {
      ++i;
    } else if (cmp > 0) {
      ++j;
    } else {
      partner[i++] = static_cast<std::int32_t>(j++);
    }
  }
  return partner;
}

PairCache::PairCache(const ParseTree& t1, const ParseTree& t2)
    : t1_(&t1), t2_(&t2), partner_(match_label_groups(t1, t2)) {
  offset_.assign(partner_.size(), -1);
  width_.assign(partner_.size(), 0);
  std::size_t total = 0;
  for (std::size_t g = 0; g < partner_.size(); ++g) {
    if (partner_[g] < 0) continue;
    offset_[g] = static_cast<std::int64_t>(total);
    width_[g] = t2.label_groups()[static_cast<std::size_t>(partner_[g])].nodes.size();
    total += t1.label_groups()[g].nodes.size() * width_[g];
  }
  slots_.assign(total, -1.0);
}

void KernelConfig::validate() const {
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "lambda must lie in (0, 1], got " + std::to_string(lambda));
  if (sigma != 0 && sigma != 1)
    throw Error(ErrorCode::InvalidArgument, "sigma must be 0 or 1, got " + std::to_string(sigma));
}

double delta_lb(const ParseTree& t1, NodeId n1, const ParseTree& t2, NodeId n2, const KernelConfig& cfg,
                PairCache* cache, KernelStats* stats) {
  if (stats) ++stats->delta_calls;
  const Node& a = t1.node(n1);
  const Node& b = t2.node(n2);
  if (a.is_terminal() || b.is_terminal() || !same_label(a, b)) return 0.0;
  if (cache) {
    if (const double* hit = cache->find(n1, n2)) return *hit;
  }

  double value;
  if (a.kind == NodeKind::Preterminal && b.kind == NodeKind::Preterminal) {
    value = cfg.lambda;
  } else {
    double product = 1.0;
    for (NodeId c1 : a.children) {
      double acc = 0.0;
      if (!t1.node(c1).is_terminal()) {
        for (NodeId c2 : b.children) {
          if (t2.node(c2).is_terminal()) continue;
          acc += delta_lb(t1, c1, t2, c2, cfg, cache, stats);
        }
      }
      product *= static_cast<double>(cfg.sigma) + acc;
    }
    value = cfg.lambda * product;
  }
  if (cache) cache->store(n1, n2, value);
  return value;
}

KernelResult ltk(const ParseTree& t1, const ParseTree& t2, const KernelConfig& cfg, bool memoize) {
  cfg.validate();
  require_nonterminal(t1, "first tree");
  require_nonterminal(t2, "second tree");

  KernelResult result;
  const int order = compare_shape(t1, t2);
  if (order == 0 && !(t1 == t2)) {
    // Relabelings of one another: no label-blind orientation exists, so
    // take the mean of both.
    std::optional<PairCache> forward, backward;
    if (memoize) {
      forward.emplace(t1, t2);
      backward.emplace(t2, t1);
    }
    const double there = oriented_sum(t1, t2, cfg, memoize ? &*forward : nullptr, result.stats);
    const double back = oriented_sum(t2, t1, cfg, memoize ? &*backward : nullptr, result.stats);
    result.value = (there + back) / 2.0;
    if (memoize) {
      std::size_t shared = 0;
      backward->for_each([&](NodeId n2, NodeId n1) { shared += forward->find(n1, n2) != nullptr; });
      result.stats.cache_entries = forward->size() + backward->size() - shared;
    }
  } else {
    const ParseTree& a = order > 0 ? t2 : t1;
    const ParseTree& b = order > 0 ? t1 : t2;
    std::optional<PairCache> memo;
    if (memoize) memo.emplace(a, b);
    result.value = oriented_sum(a, b, cfg, memoize ? &*memo : nullptr, result.stats);
    if (memoize) result.stats.cache_entries = memo->size();
  }
  const std::uint64_t s12 = same_label_pairs(t1, t2);
  result.stats.s12 = s12;
  return result;
}

double normalize_kernel(double cross, double self1, double self2) {
  if (!(self1 > 0.0) || !(self2 > 0.0))
    throw Error(ErrorCode::DegenerateTree, "self-kernel is zero; normalization undefined");
  if (cross <= 0.0) return 0.0;
  return std::min(1.0, cross / std::sqrt(self1 * self2));
}

double ltk_normalized(const ParseTree& t1, const ParseTree& t2, const KernelConfig& cfg) {
  double cross = ltk(t1, t2, cfg).value;
  double self1 = ltk(t1, t1, cfg).value;
  double self2 = ltk(t2, t2, cfg).value;
  return normalize_kernel(cross, self1, self2);
}

}  // namespace fastkassim
