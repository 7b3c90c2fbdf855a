#include "fastkassim/docsim.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <string>

#include <omp.h>

#include "fastkassim/error.hpp"
#include "fastkassim/synth.hpp"
#include "fastkassim/treedit.hpp"

namespace fastkassim {

std::string_view to_string(Denominator d) { return d == Denominator::LongerDoc ? "longer_doc" : "pairings"; }
std::string_view to_string(Method m) { return m == Method::FastKassim ? "fastkassim" : "cassim"; }

Denominator parse_denominator(std::string_view text) {
  if (text == "longer_doc") return Denominator::LongerDoc;
  if (text == "pairings") return Denominator::Pairings;
  throw Error(ErrorCode::InvalidArgument, "unknown denominator '" + std::string(text) + "'");
}

Method parse_method(std::string_view text) {
  if (text == "fastkassim") return Method::FastKassim;
  if (text == "cassim") return Method::Cassim;
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(text) + "'");
}

namespace {

int thread_count(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

void require_scorable(const Document& doc) {
  if (doc.trees.empty()) throw Error(ErrorCode::EmptyDocument, "document '" + doc.id + "' has no sentences");
}

void require_kernel_ready(const Document& doc) {
  require_scorable(doc);
  for (std::size_t i = 0; i < doc.trees.size(); ++i) {
    if (doc.trees[i].nonterminal_count() == 0)
      throw Error(ErrorCode::DegenerateTree,
                  "document '" + doc.id + "' sentence " + std::to_string(i) + " has no non-terminal node");
  }
}

void rethrow_first(const std::vector<std::exception_ptr>& errors) {
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

int compare_documents(const Document& a, const Document& b) {
  if (a.trees.size() != b.trees.size()) return a.trees.size() < b.trees.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.trees.size(); ++i)
    if (int c = compare_canonical(a.trees[i], b.trees[i]); c != 0) return c;
  return 0;
}

// Re-expresses a score computed on (b, a) in the caller's (a, b) orientation.
DocScore flip(DocScore s) {
  s.matrix = s.matrix.transposed();
  for (auto& p : s.assignment.pairs) std::swap(p.first, p.second);
  std::sort(s.assignment.pairs.begin(), s.assignment.pairs.end());
  return s;
}

}  // namespace

std::vector<double> self_kernels(const Document& doc, const KernelConfig& cfg) {
  std::vector<double> out;
  out.reserve(doc.trees.size());
  for (const auto& t : doc.trees) out.push_back(ltk(t, t, cfg).value);
  return out;
}

ScoreMatrix kernel_matrix_serial(const Document& d1, const Document& d2, const KernelConfig& cfg,
                                 KernelStats* stats) {
  require_kernel_ready(d1);
  require_kernel_ready(d2);
  const auto s1 = self_kernels(d1, cfg);
  const auto s2 = self_kernels(d2, cfg);
  ScoreMatrix m(d1.trees.size(), d2.trees.size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      KernelResult k = ltk(d1.trees[i], d2.trees[j], cfg);
      m(i, j) = normalize_kernel(k.value, s1[i], s2[j]);
      if (stats) *stats += k.stats;
    }
  }
  return m;
}

ScoreMatrix kernel_matrix(const Document& d1, const Document& d2, const KernelConfig& cfg, KernelStats* stats,
                          int jobs) {
  require_kernel_ready(d1);
  require_kernel_ready(d2);
  const auto s1 = self_kernels(d1, cfg);
  const auto s2 = self_kernels(d2, cfg);
  const std::size_t rows = d1.trees.size();
  const std::size_t cols = d2.trees.size();
  const auto cells = static_cast<std::int64_t>(rows * cols);
  ScoreMatrix m(rows, cols);
  std::vector<KernelStats> cell_stats(rows * cols);
  std::vector<std::exception_ptr> errors(rows * cols);

#pragma omp parallel for schedule(dynamic) num_threads(thread_count(jobs))
  for (std::int64_t k = 0; k < cells; ++k) {
    const auto i = static_cast<std::size_t>(k) / cols;
    const auto j = static_cast<std::size_t>(k) % cols;
    try {
      KernelResult r = ltk(d1.trees[i], d2.trees[j], cfg);
      m(i, j) = normalize_kernel(r.value, s1[i], s2[j]);
      cell_stats[static_cast<std::size_t>(k)] = r.stats;
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  rethrow_first(errors);
  if (stats)
    for (const auto& s : cell_stats) *stats += s;
  return m;
}

ScoreMatrix distance_matrix_serial(const Document& d1, const Document& d2) {
  require_scorable(d1);
  require_scorable(d2);
  ScoreMatrix m(d1.trees.size(), d2.trees.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = cassim_normalized_distance(d1.trees[i], d2.trees[j]);
  return m;
}

ScoreMatrix distance_matrix(const Document& d1, const Document& d2, int jobs) {
  require_scorable(d1);
  require_scorable(d2);
  const std::size_t cols = d2.trees.size();
  const auto cells = static_cast<std::int64_t>(d1.trees.size() * cols);
  ScoreMatrix m(d1.trees.size(), cols);

#pragma omp parallel for schedule(dynamic) num_threads(thread_count(jobs))
  for (std::int64_t k = 0; k < cells; ++k) {
    const auto i = static_cast<std::size_t>(k) / cols;
    const auto j = static_cast<std::size_t>(k) % cols;
    m(i, j) = cassim_normalized_distance(d1.trees[i], d2.trees[j]);
  }
  return m;
}

DocScore fastkassim_score(const Document& d1, const Document& d2, const DocScoreConfig& cfg, int jobs) {
  cfg.kernel.validate();
  if (compare_documents(d1, d2) > 0) return flip(fastkassim_score(d2, d1, cfg, jobs));

  DocScore out;
  out.matrix = jobs == 1 ? kernel_matrix_serial(d1, d2, cfg.kernel, &out.stats)
                         : kernel_matrix(d1, d2, cfg.kernel, &out.stats, jobs);
  out.assignment = solve(out.matrix, Sense::Maximize);
  const std::size_t denom = cfg.denominator == Denominator::LongerDoc
                                ? std::max(d1.trees.size(), d2.trees.size())
                                : std::min(d1.trees.size(), d2.trees.size());
  out.score = std::clamp(out.assignment.objective / static_cast<double>(denom), 0.0, 1.0);
  return out;
}

DocScore cassim_score(const Document& d1, const Document& d2, int jobs) {
  if (compare_documents(d1, d2) > 0) return flip(cassim_score(d2, d1, jobs));

  DocScore out;
  out.matrix = jobs == 1 ? distance_matrix_serial(d1, d2) : distance_matrix(d1, d2, jobs);
  out.assignment = solve(out.matrix, Sense::Minimize);
  const double mean = out.assignment.objective / static_cast<double>(out.assignment.pairs.size());
  out.score = std::clamp(1.0 - mean, 0.0, 1.0);
  return out;
}

DocScore score_documents(const Document& d1, const Document& d2, const DocScoreConfig& cfg, int jobs) {
  return cfg.method == Method::FastKassim ? fastkassim_score(d1, d2, cfg, jobs) : cassim_score(d1, d2, jobs);
}

ScoreMatrix corpus_matrix_serial(std::span<const Document> docs, const DocScoreConfig& cfg) {
  ScoreMatrix m(docs.size(), docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (std::size_t j = i; j < docs.size(); ++j) {
      const double s = score_documents(docs[i], docs[j], cfg, 1).score;
      m(i, j) = s;
      m(j, i) = s;
    }
  }
  return m;
}

ScoreMatrix corpus_matrix(std::span<const Document> docs, const DocScoreConfig& cfg, int jobs) {
  const std::size_t n = docs.size();
  std::vector<std::pair<std::size_t, std::size_t>> work;
  work.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) work.emplace_back(i, j);

  ScoreMatrix m(n, n);
  std::vector<std::exception_ptr> errors(work.size());
  const auto count = static_cast<std::int64_t>(work.size());

#pragma omp parallel for schedule(dynamic) num_threads(thread_count(jobs))
  for (std::int64_t k = 0; k < count; ++k) {
    const auto [i, j] = work[static_cast<std::size_t>(k)];
    try {
      const double s = score_documents(docs[i], docs[j], cfg, 1).score;
      m(i, j) = s;
      m(j, i) = s;
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  rethrow_first(errors);
  return m;
}

std::vector<double> summarize(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "cannot summarize an empty sample");
  const double n = static_cast<double>(values.size());
  double lo = values[0], hi = values[0], sum = 0.0;
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
  }
  const double mean = sum / n;
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return {lo, hi, mean, std::sqrt(sq / n)};
}

SyntaxFeatures syntax_features(const Document& target, std::span<const std::vector<Document>> reference_sets,
                               const DocScoreConfig& cfg, std::size_t sample_size, std::uint64_t seed) {
  if (sample_size == 0) throw Error(ErrorCode::InvalidArgument, "sample size must be positive");
  std::mt19937_64 rng(seed);
  SyntaxFeatures out;
  for (std::size_t s = 0; s < reference_sets.size(); ++s) {
    const auto& set = reference_sets[s];
    if (set.empty()) throw Error(ErrorCode::EmptyReferenceSet, "reference set " + std::to_string(s) + " is empty");

    ReferenceSample sample;
    sample.with_replacement = sample_size > set.size();
    if (sample.with_replacement) {
      for (std::size_t k = 0; k < sample_size; ++k) sample.indices.push_back(synth::uniform_index(rng, set.size()));
    } else {
      // Partial Fisher-Yates.
      std::vector<std::size_t> pool(set.size());
      for (std::size_t k = 0; k < pool.size(); ++k) pool[k] = k;
      for (std::size_t k = 0; k < sample_size; ++k) {
        std::size_t pick = k + synth::uniform_index(rng, pool.size() - k);
        std::swap(pool[k], pool[pick]);
        sample.indices.push_back(pool[k]);
      }
    }

    std::vector<double> scores;
    scores.reserve(sample.indices.size());
    for (std::size_t idx : sample.indices) scores.push_back(score_documents(target, set[idx], cfg, 1).score);
    for (double v : summarize(scores)) out.values.push_back(v);
    out.samples.push_back(std::move(sample));
  }
  return out;
}

}  // namespace fastkassim
