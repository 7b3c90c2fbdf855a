#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "fastkassim/assignment.hpp"
#include "fastkassim/error.hpp"
#include "oracles.hpp"

using namespace fastkassim;

namespace {

ScoreMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ScoreMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = u(rng);
  return m;
}

void check_valid(const ScoreMatrix& m, const Assignment& a) {
  CHECK(a.pairs.size() == std::min(m.rows(), m.cols()));
  std::set<std::size_t> rows, cols;
  double sum = 0.0;
  for (auto [r, c] : a.pairs) {
    CHECK(r < m.rows());
    CHECK(c < m.cols());
    rows.insert(r);
    cols.insert(c);
    sum += m(r, c);
  }
  CHECK(rows.size() == a.pairs.size());
  CHECK(cols.size() == a.pairs.size());
  CHECK(sum == a.objective);
}

}  // namespace

TEST_CASE("examples") {
  auto one = solve(ScoreMatrix(1, 1, {0.42}), Sense::Maximize);
  CHECK(one.pairs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}});
  CHECK(one.objective == 0.42);

  auto diag = solve(ScoreMatrix(2, 2, {0.9, 0.1, 0.2, 0.8}), Sense::Maximize);
  CHECK(diag.pairs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}});
  CHECK(diag.objective == doctest::Approx(1.7).epsilon(1e-12));

  auto rect = solve(ScoreMatrix(2, 3, {0.5, 0.9, 0.1, 0.4, 0.3, 0.8}), Sense::Maximize);
  CHECK(rect.pairs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});
  CHECK(rect.objective == 1.7000000000000002);
}

TEST_CASE("minimize") {
  auto a = solve(ScoreMatrix(2, 2, {0.9, 0.1, 0.2, 0.8}), Sense::Minimize);
  CHECK(a.pairs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}});
  CHECK(a.objective == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("tall matrices leave rows unpaired") {
  auto a = solve(ScoreMatrix(3, 1, {0.1, 0.7, 0.3}), Sense::Maximize);
  CHECK(a.pairs == std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}});
}

TEST_CASE("errors") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(solve(ScoreMatrix(1, 2, {0.1, nan}), Sense::Maximize), Error);
  CHECK_THROWS_AS(solve(ScoreMatrix(1, 1, {inf}), Sense::Minimize), Error);
  CHECK_THROWS_AS(solve(ScoreMatrix(0, 0), Sense::Minimize), Error);
}

TEST_CASE("deterministic ties") {
  ScoreMatrix flat(3, 3, 0.5);
  auto a = solve(flat, Sense::Maximize);
  auto b = solve(flat, Sense::Maximize);
  CHECK(a.pairs == b.pairs);
  check_valid(flat, a);
}

TEST_CASE("brute force equivalence") {
  std::mt19937_64 rng(500);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t r = 1 + static_cast<std::size_t>(rng() % 6);
    const std::size_t c = 1 + static_cast<std::size_t>(rng() % 6);
    auto m = random_matrix(rng, r, c);
    for (bool maximize : {true, false}) {
      auto a = solve(m, maximize ? Sense::Maximize : Sense::Minimize);
      check_valid(m, a);
      CHECK(std::abs(a.objective - oracle::brute_force_assignment(m, maximize)) <= 1e-12);
    }
  }
}

TEST_CASE("sense duality and transposition") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + static_cast<std::size_t>(rng() % 7);
    const std::size_t c = 1 + static_cast<std::size_t>(rng() % 7);
    auto m = random_matrix(rng, r, c);
    ScoreMatrix neg(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) neg(i, j) = -m(i, j);
    auto mx = solve(m, Sense::Maximize);
    CHECK(std::abs(mx.objective + solve(neg, Sense::Minimize).objective) <= 1e-12);

    auto tr = solve(m.transposed(), Sense::Maximize);
    CHECK(std::abs(tr.objective - mx.objective) <= 1e-12);
    check_valid(m.transposed(), tr);
    std::set<std::pair<std::size_t, std::size_t>> swapped;
    for (auto [i, j] : tr.pairs) swapped.emplace(j, i);
    CHECK(swapped == std::set<std::pair<std::size_t, std::size_t>>(mx.pairs.begin(), mx.pairs.end()));
  }
}
