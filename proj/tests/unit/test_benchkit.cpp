#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fastkassim/benchkit.hpp"
#include "fastkassim/synth.hpp"

using namespace fastkassim;

TEST_CASE("loglog slope") {
  const std::vector<double> x{10, 100, 1000};
  const std::vector<double> y{3, 30, 300};
  CHECK(loglog_slope(x, y) == doctest::Approx(1.0).epsilon(1e-12));
  const std::vector<double> sq{100, 10000, 1000000};
  CHECK(loglog_slope(x, sq) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("median timing is positive") {
  volatile double sink = 0;
  CHECK(median_seconds([&] { for (int i = 0; i < 1000; ++i) sink = sink + std::sqrt(double(i)); }, 5) > 0.0);
}

TEST_CASE("tree bench") {
  std::mt19937_64 rng(1);
  std::vector<ParseTree> trees;
  for (int k = 0; k < 60; ++k) trees.push_back(synth::random_parse_tree(rng, 10 + static_cast<std::size_t>(k) * 2));
  BenchOptions opt;
  opt.bins = 4;
  opt.samples_per_bin = 10;
  opt.repeats = 1;
  auto report = run_tree_bench(trees, opt);
  REQUIRE(report.bins.size() == 4);
  CHECK(report.cache_bound_violations == 0);
  std::size_t timed = 0;
  for (const auto& b : report.bins) {
    if (b.skipped) continue;
    CHECK(b.sampled == 10);
    CHECK(b.mean_nm >= b.nm_lo);
    CHECK(b.mean_nm <= b.nm_hi);
    CHECK(b.mean_ltk_seconds > 0.0);
    CHECK(b.mean_editdist_seconds > 0.0);
    timed += b.sampled;
  }
  CHECK(timed == report.pairs_timed);

  auto again = run_tree_bench(trees, opt);
  for (std::size_t i = 0; i < report.bins.size(); ++i) {
    CHECK(again.bins[i].mean_nm == report.bins[i].mean_nm);
    CHECK(again.bins[i].mean_s12 == report.bins[i].mean_s12);
  }
}

TEST_CASE("sparse bins are skipped with a warning") {
  std::mt19937_64 rng(2);
  std::vector<ParseTree> trees;
  for (int k = 0; k < 5; ++k) trees.push_back(synth::random_parse_tree(rng, 20));
  BenchOptions opt;
  opt.bins = 2;
  opt.samples_per_bin = 60;
  opt.repeats = 1;
  auto report = run_tree_bench(trees, opt);
  CHECK_FALSE(report.warnings.empty());
  for (const auto& b : report.bins) CHECK(b.skipped);
}

TEST_CASE("document bench") {
  std::mt19937_64 rng(3);
  std::vector<Document> docs;
  for (int k = 0; k < 8; ++k) docs.push_back(synth::random_document(rng, "d", 2 + k % 3, 10, 30));
  BenchOptions opt;
  opt.bins = 1;
  opt.samples_per_bin = 5;
  opt.repeats = 1;
  std::size_t reloads = 0;
  auto report = run_document_bench(docs, opt, [&](std::size_t k) {
    ++reloads;
    return docs[k];
  });
  REQUIRE(report.bins.size() == 1);
  CHECK(report.bins[0].sampled == 5);
  CHECK(reloads > 0);
}
