#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fastkassim/docsim.hpp"
#include "fastkassim/kernel.hpp"
#include "fastkassim/treebank.hpp"

namespace fastkassim {

struct BenchOptions {
  std::size_t bins = 8;
  std::size_t samples_per_bin = 60;
  std::uint64_t seed = 0;
  std::size_t repeats = 5;  // timings are medians over this many runs
  KernelConfig kernel;
};

/// One row of the runtime-vs-NM table. For tree pairs nm is size(t1)*size(t2)
/// and the times are ltk vs tree edit distance; for document pairs nm is the
/// product of word counts and the times are fastkassim vs cassim scoring.
struct BenchBin {
  std::size_t index = 0;
  double nm_lo = 0.0;
  double nm_hi = 0.0;
  std::size_t candidates = 0;
  std::size_t sampled = 0;
  bool skipped = false;
  double mean_ltk_seconds = 0.0;
  double mean_editdist_seconds = 0.0;
  double mean_nm = 0.0;
  double mean_s12 = 0.0;
};

struct BenchReport {
  std::vector<BenchBin> bins;
  std::vector<std::string> warnings;
  std::size_t pairs_timed = 0;
  std::size_t cache_bound_violations = 0;  // pairs where cache_entries > s12
};

/// Tree-pair benchmark: bins candidate pairs on log(NM), samples
/// samples_per_bin pairs per bin without replacement (bins with fewer
/// candidates are skipped with an InsufficientPairsInBin warning).
BenchReport run_tree_bench(std::span<const ParseTree> trees, const BenchOptions& options);

/// Optional re-parse step timed with each document score (end-to-end mode).
using DocumentLoader = std::function<Document(std::size_t)>;

/// Document-pair benchmark timing fastkassim_score against cassim_score.
BenchReport run_document_bench(std::span<const Document> docs, const BenchOptions& options,
                               const DocumentLoader& reload = {});

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Median of repeated wall-clock measurements of fn, in seconds.
double median_seconds(const std::function<void()>& fn, std::size_t repeats);

}  // namespace fastkassim
