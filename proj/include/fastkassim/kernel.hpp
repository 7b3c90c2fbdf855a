#pragma once

#include <cstddef>
#include <cstdint>

#include "fastkassim/treebank.hpp"

namespace fastkassim {

/// Decay and fragment family for the label-based tree kernel.
/// sigma = 1 counts subset trees, sigma = 0 counts full subtrees.
struct KernelConfig {
  double lambda = 0.4;
  int sigma = 1;

  /// Throws InvalidArgument unless 0 < lambda <= 1 and sigma is 0 or 1.
  void validate() const;
};

struct KernelStats {
  std::uint64_t delta_calls = 0;
  std::uint64_t cache_entries = 0;
  std::uint64_t s12 = 0;

  KernelStats& operator+=(const KernelStats& other) {
    delta_calls += other.delta_calls;
    cache_entries += other.cache_entries;
    s12 += other.s12;
    return *this;
  }
};

/// For each label group of t1, the index of the t2 group carrying the same
/// label, or -1.
std::vector<std::int32_t> match_label_groups(const ParseTree& t1, const ParseTree& t2);

/// Memo table for one (t1, t2) evaluation. Holds one slot per same-label
/// non-terminal pair (S12 slots in total), laid out as one dense block per
/// matched pair of label groups.
class PairCache {
 public:
  PairCache(const ParseTree& t1, const ParseTree& t2);

  /// n1, n2 must be non-terminals with equal labels.
  const double* find(NodeId n1, NodeId n2) const {
    const double* slot = &slots_[index(n1, n2)];
    return *slot < 0.0 ? nullptr : slot;
  }
  void store(NodeId n1, NodeId n2, double value) {
    double& slot = slots_[index(n1, n2)];
    if (slot < 0.0) ++stored_;
    slot = value;
  }
  /// Number of memoized pairs.
  std::size_t size() const { return stored_; }
  /// Number of slots, equal to same_label_pairs(t1, t2).
  std::size_t capacity() const { return slots_.size(); }
  /// Calls f(n1, n2) for every memoized pair.
  template <typename F>
  void for_each(F f) const {
    for (std::size_t g1 = 0; g1 < offset_.size(); ++g1) {
      if (offset_[g1] < 0) continue;
      const auto& rows = t1_->label_groups()[g1].nodes;
      const auto& cols = t2_->label_groups()[static_cast<std::size_t>(partner_[g1])].nodes;
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
          if (slots_[static_cast<std::size_t>(offset_[g1]) + r * cols.size() + c] >= 0.0) f(rows[r], cols[c]);
    }
  }

 private:
  std::size_t index(NodeId n1, NodeId n2) const {
    const std::uint32_t g1 = t1_->group_of(n1);
    return static_cast<std::size_t>(offset_[g1]) + t1_->group_rank(n1) * width_[g1] + t2_->group_rank(n2);
  }

  const ParseTree* t1_;
  const ParseTree* t2_;
  std::vector<std::int32_t> partner_;
  std::vector<std::int64_t> offset_;
  std::vector<std::size_t> width_;
  std::vector<double> slots_;
  std::size_t stored_ = 0;
};

/// Weighted count of common fragments rooted at (n1, n2).
///
/// Terminal nodes never match: a terminal child adds nothing to its parent's
/// accumulator. Two preterminals with the same label score lambda; any other
/// same-label pair scores lambda times the product over children c1 of n1 of
/// (sigma + sum over children c2 of n2 of delta(c1, c2)). A null cache
/// disables memoization. stats may be null.
double delta_lb(const ParseTree& t1, NodeId n1, const ParseTree& t2, NodeId n2, const KernelConfig& cfg,
                PairCache* cache, KernelStats* stats = nullptr);

struct KernelResult {
  double value = 0.0;
  KernelStats stats;
};

/// Raw label-based tree kernel: sum of delta_lb over same-label non-terminal
/// pairs. delta_lb is not symmetric in its arguments, so the pair is evaluated
/// in the orientation given by compare_shape, which ignores label text; when
/// the trees are distinct relabelings of one another the two orientations are
/// averaged. This makes ltk symmetric and invariant under relabeling.
/// cache_entries counts distinct memoized node pairs.
/// Throws DegenerateTree if either tree has no non-terminal node.
KernelResult ltk(const ParseTree& t1, const ParseTree& t2, const KernelConfig& cfg, bool memoize = true);

/// ltk(t1,t2) / sqrt(ltk(t1,t1) * ltk(t2,t2)), in [0, 1].
double ltk_normalized(const ParseTree& t1, const ParseTree& t2, const KernelConfig& cfg);

/// Normalization with precomputed self-kernels.
double normalize_kernel(double cross, double self1, double self2);

/// Oracle: explicitly enumerates every matched fragment pairing and sums
/// lambda^(matched node pairs). Exponential; refuses inputs where
/// size(t1) * size(t2) exceeds cap with OracleCapExceeded.
double enumerate_common_fragments(const ParseTree& t1, const ParseTree& t2, const KernelConfig& cfg,
                                  std::size_t cap = 400);

}  // namespace fastkassim
