#include "fastkassim/benchkit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "fastkassim/error.hpp"
#include "fastkassim/synth.hpp"
#include "fastkassim/treedit.hpp"

namespace fastkassim {

namespace {

constexpr std::size_t kMaxCandidates = 2'000'000;

struct Candidate {
  std::size_t a;
  std::size_t b;
  double nm;
};

std::vector<Candidate> candidate_pairs(std::size_t count, const std::function<double(std::size_t, std::size_t)>& nm,
                                       std::mt19937_64& rng) {
  std::vector<Candidate> out;
  if (count < 2) return out;
  const std::size_t all = count * (count - 1) / 2;
  if (all <= kMaxCandidates) {
    out.reserve(all);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = i + 1; j < count; ++j) out.push_back({i, j, nm(i, j)});
  } else {
    out.reserve(kMaxCandidates);
    while (out.size() < kMaxCandidates) {
      std::size_t i = synth::uniform_index(rng, count);
      std::size_t j = synth::uniform_index(rng, count);
      if (i == j) continue;
      out.push_back({std::min(i, j), std::max(i, j), nm(i, j)});
    }
  }
  return out;
}

// Splits candidates into log-spaced bins and draws the per-bin sample.
std::vector<std::vector<Candidate>> binned_sample(const std::vector<Candidate>& pool, const BenchOptions& options,
                                                  std::mt19937_64& rng, BenchReport& report) {
  if (options.bins == 0) throw Error(ErrorCode::InvalidArgument, "bin count must be positive");
  if (options.samples_per_bin == 0) throw Error(ErrorCode::InvalidArgument, "samples per bin must be positive");
  std::vector<std::vector<Candidate>> sampled(options.bins);
  report.bins.assign(options.bins, {});
  if (pool.empty()) {
    report.warnings.push_back("no candidate pairs");
    for (std::size_t b = 0; b < options.bins; ++b) {
      report.bins[b].index = b;
      report.bins[b].skipped = true;
    }
    return sampled;
  }

  auto [lo_it, hi_it] = std::minmax_element(pool.begin(), pool.end(),
                                            [](const Candidate& x, const Candidate& y) { return x.nm < y.nm; });
  const double lo = std::log(lo_it->nm);
  const double hi = std::log(hi_it->nm);
  const double width = (hi - lo) / static_cast<double>(options.bins);

  std::vector<std::vector<Candidate>> members(options.bins);
  for (const auto& c : pool) {
    std::size_t b = width > 0.0 ? static_cast<std::size_t>((std::log(c.nm) - lo) / width) : 0;
    members[std::min(b, options.bins - 1)].push_back(c);
  }

  for (std::size_t b = 0; b < options.bins; ++b) {
    BenchBin& bin = report.bins[b];
    bin.index = b;
    bin.nm_lo = std::exp(lo + width * static_cast<double>(b));
    bin.nm_hi = std::exp(lo + width * static_cast<double>(b + 1));
    bin.candidates = members[b].size();
    if (members[b].size() < options.samples_per_bin) {
      bin.skipped = true;
      report.warnings.push_back(std::string(to_string(ErrorCode::InsufficientPairsInBin)) + ": bin " +
                                std::to_string(b) + " has " + std::to_string(members[b].size()) + " pairs, needs " +
                                std::to_string(options.samples_per_bin));
      continue;
    }
    auto& pool_b = members[b];
    for (std::size_t k = 0; k < options.samples_per_bin; ++k) {
      std::size_t pick = k + synth::uniform_index(rng, pool_b.size() - k);
      std::swap(pool_b[k], pool_b[pick]);
      sampled[b].push_back(pool_b[k]);
    }
    bin.sampled = options.samples_per_bin;
  }
  return sampled;
}

}  // namespace

double median_seconds(const std::function<void()>& fn, std::size_t repeats) {
  repeats = std::max<std::size_t>(repeats, 1);
  std::vector<double> times;
  times.reserve(repeats);
  for (std::size_t r = 0; r < repeats; ++r) {
    auto start = std::chrono::steady_clock::now();
    fn();
    auto stop = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(stop - start).count());
  }
  std::sort(times.begin(), times.end());
  return repeats % 2 ? times[repeats / 2] : 0.5 * (times[repeats / 2 - 1] + times[repeats / 2]);
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::InvalidArgument, "slope needs >= 2 paired points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw Error(ErrorCode::ZeroVariance, "all x values are equal");
  return sxy / sxx;
}

BenchReport run_tree_bench(std::span<const ParseTree> trees, const BenchOptions& options) {
  options.kernel.validate();
  std::mt19937_64 rng(options.seed);
  BenchReport report;
  const auto pool = candidate_pairs(
      trees.size(),
      [&](std::size_t i, std::size_t j) { return static_cast<double>(trees[i].size()) * static_cast<double>(trees[j].size()); },
      rng);
  const auto sampled = binned_sample(pool, options, rng, report);

  for (std::size_t b = 0; b < sampled.size(); ++b) {
    if (sampled[b].empty()) continue;
    BenchBin& bin = report.bins[b];
    double ltk_sum = 0.0, ted_sum = 0.0, nm_sum = 0.0, s12_sum = 0.0;
    for (const auto& c : sampled[b]) {
      const ParseTree& t1 = trees[c.a];
      const ParseTree& t2 = trees[c.b];
      KernelResult probe = ltk(t1, t2, options.kernel);
      if (probe.stats.cache_entries > probe.stats.s12) ++report.cache_bound_violations;
      volatile double sink = 0.0;
      ltk_sum += median_seconds([&] { sink = ltk(t1, t2, options.kernel).value; }, options.repeats);
      ted_sum += median_seconds([&] { sink = static_cast<double>(tree_edit_distance(t1, t2)); }, options.repeats);
      (void)sink;
      nm_sum += c.nm;
      s12_sum += static_cast<double>(probe.stats.s12);
      ++report.pairs_timed;
    }
    const double n = static_cast<double>(sampled[b].size());
    bin.mean_ltk_seconds = ltk_sum / n;
    bin.mean_editdist_seconds = ted_sum / n;
    bin.mean_nm = nm_sum / n;
    bin.mean_s12 = s12_sum / n;
  }
  return report;
}

BenchReport run_document_bench(std::span<const Document> docs, const BenchOptions& options,
                               const DocumentLoader& reload) {
  options.kernel.validate();
  std::vector<double> words(docs.size(), 0.0);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (const auto& t : docs[i].trees)
      for (const auto& n : t.nodes()) words[i] += n.is_terminal() ? 1.0 : 0.0;
  }
  std::mt19937_64 rng(options.seed);
  BenchReport report;
  const auto pool = candidate_pairs(docs.size(), [&](std::size_t i, std::size_t j) { return std::max(1.0, words[i] * words[j]); }, rng);
  const auto sampled = binned_sample(pool, options, rng, report);

  DocScoreConfig fast{options.kernel, Denominator::LongerDoc, Method::FastKassim};
  DocScoreConfig slow{options.kernel, Denominator::LongerDoc, Method::Cassim};
  for (std::size_t b = 0; b < sampled.size(); ++b) {
    if (sampled[b].empty()) continue;
    BenchBin& bin = report.bins[b];
    double fast_sum = 0.0, slow_sum = 0.0, nm_sum = 0.0, s12_sum = 0.0;
    for (const auto& c : sampled[b]) {
      const Document& d1 = docs[c.a];
      const Document& d2 = docs[c.b];
      DocScore probe = fastkassim_score(d1, d2, fast);
      volatile double sink = 0.0;
      auto timed = [&](const DocScoreConfig& cfg) {
        if (reload) {
          Document x = reload(c.a);
          Document y = reload(c.b);
          sink = score_documents(x, y, cfg).score;
        } else {
          sink = score_documents(d1, d2, cfg).score;
        }
      };
      fast_sum += median_seconds([&] { timed(fast); }, options.repeats);
      slow_sum += median_seconds([&] { timed(slow); }, options.repeats);
      (void)sink;
      nm_sum += c.nm;
      s12_sum += static_cast<double>(probe.stats.s12);
      if (probe.stats.cache_entries > probe.stats.s12) ++report.cache_bound_violations;
      ++report.pairs_timed;
    }
    const double n = static_cast<double>(sampled[b].size());
    bin.mean_ltk_seconds = fast_sum / n;
    bin.mean_editdist_seconds = slow_sum / n;
    bin.mean_nm = nm_sum / n;
    bin.mean_s12 = s12_sum / n;
  }
  return report;
}

}  // namespace fastkassim
