#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "fastkassim/error.hpp"
#include "fastkassim/kernel.hpp"
#include "fastkassim/synth.hpp"
#include "fastkassim/treebank.hpp"
#include "oracles.hpp"

using namespace fastkassim;

namespace {

const char* kT1 = "(S (NP (DT d)) (VP (VB v)))";
const char* kT3 = "(S (NP (DT d)) (VP (VB v) (NP (DT d))))";

KernelConfig cfg(double lambda, int sigma) {
  KernelConfig c;
  c.lambda = lambda;
  c.sigma = sigma;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(cfg(1.0, 1).validate());
  CHECK_THROWS_AS(cfg(0.0, 1).validate(), Error);
  CHECK_THROWS_AS(cfg(1.5, 1).validate(), Error);
  CHECK_THROWS_AS(cfg(0.4, 2).validate(), Error);
}

TEST_CASE("delta_lb base cases") {
  auto a = read_bracketed("(NP (DT the))");
  auto b = read_bracketed("(VP (DT the))");
  PairCache cache(a, b);
  CHECK(delta_lb(a, 0, b, 0, cfg(0.4, 1), &cache) == 0.0);
  CHECK(delta_lb(a, 1, b, 1, cfg(0.4, 1), &cache) == doctest::Approx(0.4).epsilon(1e-15));
  // Terminals never match, even with equal labels.
  CHECK(delta_lb(a, 2, b, 2, cfg(0.4, 1), &cache) == 0.0);
}

TEST_CASE("delta_lb at the root of T1") {
  auto t = read_bracketed(kT1);
  PairCache cache(t, t);
  CHECK(delta_lb(t, 0, t, 0, cfg(1, 1), &cache) == 9.0);
  CHECK(delta_lb(t, 0, t, 0, cfg(1, 1), nullptr) == 9.0);
}

TEST_CASE("mixed preterminal and internal pair falls through to the product") {
  // n1 preterminal with one terminal child, n2 internal: lambda * sigma^1.
  auto a = read_bracketed("(X (A a))");
  auto b = read_bracketed("(X (A (B b)))");
  CHECK(delta_lb(a, 1, b, 1, cfg(0.5, 1), nullptr) == 0.5);
  CHECK(delta_lb(a, 1, b, 1, cfg(0.5, 0), nullptr) == 0.0);
}

TEST_CASE("hand-derived kernels") {
  auto t1 = read_bracketed(kT1);
  auto t3 = read_bracketed(kT3);
  const auto c = cfg(1, 1);
  CHECK(ltk(t1, t1, c).value == 15.0);
  CHECK(ltk(t3, t3, c).value == 40.0);
  CHECK(ltk(t1, t3, c).value == 18.0);
  CHECK(ltk(t3, t1, c).value == 18.0);
  CHECK(ltk_normalized(t1, t3, c) == doctest::Approx(18.0 / std::sqrt(600.0)).epsilon(1e-12));
  CHECK(ltk_normalized(t1, t3, c) == doctest::Approx(0.7348).epsilon(1e-4));
  CHECK(enumerate_common_fragments(t1, t1, c) == 15.0);
  CHECK(enumerate_common_fragments(t1, t3, c) == 18.0);
  CHECK(enumerate_common_fragments(t3, t3, c) == 40.0);
}

TEST_CASE("subtree kernel on T1") {
  // Full subtrees shared by T1 with itself: S, NP, VP, DT, VB.
  auto t1 = read_bracketed(kT1);
  CHECK(ltk(t1, t1, cfg(1, 0)).value == 5.0);
  CHECK(enumerate_common_fragments(t1, t1, cfg(1, 0)) == 5.0);
}

TEST_CASE("single preterminal pair") {
  auto t = read_bracketed("(DT the)");
  CHECK(enumerate_common_fragments(t, t, cfg(1, 1)) == 1.0);
  CHECK(ltk(t, t, cfg(1, 1)).value == 1.0);
}

TEST_CASE("disjoint labels") {
  auto a = read_bracketed("(S (NP (DT d)))");
  auto b = read_bracketed("(Q (R (T t)))");
  CHECK(ltk(a, b, KernelConfig{}).value == 0.0);
  CHECK(ltk_normalized(a, b, KernelConfig{}) == 0.0);
}

TEST_CASE("degenerate trees") {
  auto leaf = read_bracketed("(A)");
  auto ok = read_bracketed("(A (B b))");
  CHECK_THROWS_AS(ltk(leaf, ok, KernelConfig{}), Error);
  CHECK_THROWS_AS(ltk_normalized(ok, leaf, KernelConfig{}), Error);
  CHECK_THROWS_AS(normalize_kernel(1.0, 0.0, 1.0), Error);
}

TEST_CASE("oracle cap") {
  std::mt19937_64 rng(1);
  auto big = synth::random_parse_tree(rng, 40);
  CHECK_THROWS_AS(enumerate_common_fragments(big, big, KernelConfig{}, 400), Error);
}

TEST_CASE("oracle equivalence on random pairs") {
  std::mt19937_64 rng(2024);
  const double lambdas[] = {1.0, 0.4, 0.8};
  for (int trial = 0; trial < 200; ++trial) {
    auto a = synth::random_small_tree(rng, 12, 3);
    auto b = synth::random_small_tree(rng, 12, 3);
    for (double lambda : lambdas) {
      for (int sigma : {0, 1}) {
        const auto c = cfg(lambda, sigma);
        const double fast = ltk(a, b, c).value;
        const double slow = enumerate_common_fragments(a, b, c, 1000);
        if (lambda == 1.0)
          CHECK(std::abs(fast - slow) <= 1e-9);
        else
          CHECK(std::abs(fast - slow) <= 1e-9 * std::max(1.0, std::abs(slow)));
      }
    }
  }
}

TEST_CASE("symmetry, range, memoization and instrumentation") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = trial % 2 ? synth::random_parse_tree(rng, 25) : synth::random_small_tree(rng, 15, 3);
    auto b = trial % 3 ? synth::random_parse_tree(rng, 25) : synth::random_small_tree(rng, 15, 3);
    const KernelConfig c = cfg(trial % 4 ? 0.4 : 1.0, trial % 5 ? 1 : 0);
    auto ab = ltk(a, b, c);
    auto ba = ltk(b, a, c);
    CHECK(ab.value == ba.value);
    CHECK(ltk_normalized(a, b, c) == ltk_normalized(b, a, c));
    const double n = ltk_normalized(a, b, c);
    CHECK(n >= 0.0);
    CHECK(n <= 1.0);
    CHECK((n == 0.0) == (ab.value == 0.0));

    auto plain = ltk(a, b, c, false);
    CHECK(plain.value == ab.value);
    CHECK(ab.stats.delta_calls <= plain.stats.delta_calls);
    CHECK(plain.stats.cache_entries == 0);
    CHECK(ab.stats.cache_entries <= ab.stats.s12);
    CHECK(ab.stats.s12 == same_label_pairs(a, b));
  }
}

TEST_CASE("identity of normalization") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    auto t = synth::random_parse_tree(rng, 30);
    CHECK(ltk_normalized(t, t, KernelConfig{}) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("label permutation invariance") {
  std::mt19937_64 rng(99);
  const std::string alphabet = "ABC";
  for (int trial = 0; trial < 100; ++trial) {
    auto a = synth::random_small_tree(rng, 12, 3);
    auto b = synth::random_small_tree(rng, 12, 3);
    std::string perm = alphabet;
    for (std::size_t k = perm.size(); k > 1; --k) std::swap(perm[k - 1], perm[synth::uniform_index(rng, k)]);
    auto f = [&](const std::string& label) {
      auto pos = alphabet.find(label);
      return label.size() == 1 && pos != std::string::npos ? std::string("Q") + perm[pos] : label;
    };
    auto pa = oracle::relabel(a, f);
    auto pb = oracle::relabel(b, f);
    CHECK(ltk_normalized(pa, pb, KernelConfig{}) == ltk_normalized(a, b, KernelConfig{}));
    // A tree against its own relabeling has no label-blind orientation.
    CHECK(ltk(a, pa, KernelConfig{}).value == ltk(pa, a, KernelConfig{}).value);
    CHECK(ltk(a, pa, KernelConfig{}).stats.cache_entries <= same_label_pairs(a, pa));
    auto g = [](const std::string& label) { return label == "A" ? std::string("QA") : label == "QA" ? "A" : label; };
    CHECK(ltk_normalized(oracle::relabel(a, g), oracle::relabel(pa, g), KernelConfig{}) ==
          ltk_normalized(a, pa, KernelConfig{}));
  }
}

TEST_CASE("relabelings of one another average both orientations") {
  auto a = read_bracketed("(X (A (P p)) (B (P p) (Q q)))");
  auto b = read_bracketed("(X (B (P p)) (A (P p) (Q q)))");
  REQUIRE(compare_shape(a, b) == 0);
  const auto c = cfg(1, 1);
  CHECK(ltk(a, b, c).value == ltk(b, a, c).value);
  CHECK(ltk(a, b, c).value == enumerate_common_fragments(a, b, c));
}
