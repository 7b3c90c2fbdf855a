#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "fastkassim/docsim.hpp"
#include "fastkassim/kernel.hpp"
#include "fastkassim/synth.hpp"
#include "fastkassim/treedit.hpp"

using namespace fastkassim;

namespace {

std::pair<Document, Document> document_pair(std::size_t sentences) {
  std::mt19937_64 rng(sentences);
  return {synth::random_document(rng, "a", sentences, 15, 60), synth::random_document(rng, "b", sentences, 15, 60)};
}

std::vector<Document> corpus(std::size_t docs) {
  std::mt19937_64 rng(docs);
  std::vector<Document> out;
  for (std::size_t k = 0; k < docs; ++k) out.push_back(synth::random_document(rng, std::to_string(k), 10, 15, 60));
  return out;
}

void BM_KernelMatrixSerial(benchmark::State& state) {
  auto [a, b] = document_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_matrix_serial(a, b, KernelConfig{}));
}

void BM_KernelMatrixOpenMP(benchmark::State& state) {
  auto [a, b] = document_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_matrix(a, b, KernelConfig{}, nullptr, 0));
}

void BM_DistanceMatrixSerial(benchmark::State& state) {
  auto [a, b] = document_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(distance_matrix_serial(a, b));
}

void BM_DistanceMatrixOpenMP(benchmark::State& state) {
  auto [a, b] = document_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(distance_matrix(a, b, 0));
}

void BM_CorpusMatrixSerial(benchmark::State& state) {
  auto docs = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(corpus_matrix_serial(docs, DocScoreConfig{}));
}

void BM_CorpusMatrixOpenMP(benchmark::State& state) {
  auto docs = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(corpus_matrix(docs, DocScoreConfig{}, 0));
}

void BM_Ltk(benchmark::State& state) {
  std::mt19937_64 rng(1);
  auto a = synth::random_parse_tree(rng, static_cast<std::size_t>(state.range(0)));
  auto b = synth::random_parse_tree(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ltk(a, b, KernelConfig{}).value);
  state.counters["NM"] = static_cast<double>(a.size() * b.size());
}

void BM_TreeEditDistance(benchmark::State& state) {
  std::mt19937_64 rng(1);
  auto a = synth::random_parse_tree(rng, static_cast<std::size_t>(state.range(0)));
  auto b = synth::random_parse_tree(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tree_edit_distance(a, b));
  state.counters["NM"] = static_cast<double>(a.size() * b.size());
}

}  // namespace

BENCHMARK(BM_KernelMatrixSerial)->Arg(10)->Arg(40);
BENCHMARK(BM_KernelMatrixOpenMP)->Arg(10)->Arg(40);
BENCHMARK(BM_DistanceMatrixSerial)->Arg(10)->Arg(40);
BENCHMARK(BM_DistanceMatrixOpenMP)->Arg(10)->Arg(40);
BENCHMARK(BM_CorpusMatrixSerial)->Arg(8);
BENCHMARK(BM_CorpusMatrixOpenMP)->Arg(8);
BENCHMARK(BM_Ltk)->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(BM_TreeEditDistance)->RangeMultiplier(2)->Range(16, 256);

BENCHMARK_MAIN();
