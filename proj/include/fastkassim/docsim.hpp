#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fastkassim/assignment.hpp"
#include "fastkassim/kernel.hpp"
#include "fastkassim/treebank.hpp"

namespace fastkassim {

/// longer_doc divides the paired sum by max(|D1|, |D2|); pairings by
/// min(|D1|, |D2|), i.e. the plain mean over the assignment.
enum class Denominator { LongerDoc, Pairings };
enum class Method { FastKassim, Cassim };

std::string_view to_string(Denominator d);
std::string_view to_string(Method m);
Denominator parse_denominator(std::string_view text);
Method parse_method(std::string_view text);

struct DocScoreConfig {
  KernelConfig kernel;
  Denominator denominator = Denominator::LongerDoc;
  Method method = Method::FastKassim;
};

struct DocScore {
  double score = 0.0;
  /// |D1| x |D2| cell values: normalized kernels (fastkassim) or normalized
  /// edit distances (cassim).
  ScoreMatrix matrix;
  Assignment assignment;
  KernelStats stats;  // cross-kernel evaluations only; zero for cassim
};

// Pairwise sentence matrices. The default entry points run the cells with
// OpenMP (jobs <= 0 uses the OpenMP default); the _serial variants are the
// reference implementations. Both produce bit-identical matrices.

std::vector<double> self_kernels(const Document& doc, const KernelConfig& cfg);
ScoreMatrix kernel_matrix(const Document& d1, const Document& d2, const KernelConfig& cfg,
                          KernelStats* stats = nullptr, int jobs = 0);
ScoreMatrix kernel_matrix_serial(const Document& d1, const Document& d2, const KernelConfig& cfg,
                                 KernelStats* stats = nullptr);
ScoreMatrix distance_matrix(const Document& d1, const Document& d2, int jobs = 0);
ScoreMatrix distance_matrix_serial(const Document& d1, const Document& d2);

/// Max-cost assignment over normalized kernels; paired sum / denominator.
DocScore fastkassim_score(const Document& d1, const Document& d2, const DocScoreConfig& cfg, int jobs = 1);

/// 1 - mean normalized edit distance over a min-cost assignment.
DocScore cassim_score(const Document& d1, const Document& d2, int jobs = 1);

/// Dispatches on cfg.method.
DocScore score_documents(const Document& d1, const Document& d2, const DocScoreConfig& cfg, int jobs = 1);

/// Symmetric n x n document similarity matrix; pairs are spread across
/// OpenMP threads, each pair scored single-threaded.
ScoreMatrix corpus_matrix(std::span<const Document> docs, const DocScoreConfig& cfg, int jobs = 0);
ScoreMatrix corpus_matrix_serial(std::span<const Document> docs, const DocScoreConfig& cfg);

struct ReferenceSample {
  std::vector<std::size_t> indices;
  bool with_replacement = false;
};

struct SyntaxFeatures {
  /// [min, max, mean, population std] per reference set, concatenated.
  std::vector<double> values;
  std::vector<ReferenceSample> samples;
};

/// Compares target with sample_size seeded draws from each reference set.
/// Draws are without replacement when the set is large enough and with
/// replacement otherwise.
SyntaxFeatures syntax_features(const Document& target, std::span<const std::vector<Document>> reference_sets,
                               const DocScoreConfig& cfg, std::size_t sample_size, std::uint64_t seed);

/// [min, max, mean, population std] of a non-empty sample.
std::vector<double> summarize(std::span<const double> values);

}  // namespace fastkassim
