#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>

#include "fastkassim/corpus_io.hpp"
#include "fastkassim/docsim.hpp"
#include "fastkassim/error.hpp"
#include "fastkassim/synth.hpp"

using namespace fastkassim;

namespace {

Document doc(std::string id, std::initializer_list<const char*> trees) {
  Document d{std::move(id), {}};
  for (const char* t : trees) d.trees.push_back(read_bracketed(t));
  return d;
}

const char* kT = "(S (NP (DT d)) (VP (VB v)))";
const char* kS = "(Q (R (T t)) (U (W w)))";
const char* kU = "(X (Y (Z z)))";

DocScoreConfig with_denominator(Denominator d) {
  DocScoreConfig c;
  c.denominator = d;
  return c;
}

std::vector<Document> fixture_corpus() { return read_corpus(FASTKASSIM_FIXTURE_DIR "/corpus.jsonl"); }

}  // namespace

TEST_CASE("parse and print enums") {
  CHECK(parse_denominator("pairings") == Denominator::Pairings);
  CHECK(to_string(Denominator::LongerDoc) == "longer_doc");
  CHECK(parse_method("cassim") == Method::Cassim);
  CHECK(to_string(Method::FastKassim) == "fastkassim");
  CHECK_THROWS_AS(parse_method("bogus"), Error);
}

TEST_CASE("identity") {
  auto d = doc("d", {kT});
  CHECK(fastkassim_score(d, d, DocScoreConfig{}).score == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cassim_score(d, d).score == 1.0);
  for (const auto& x : fixture_corpus()) {
    CHECK(fastkassim_score(x, x, DocScoreConfig{}).score == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cassim_score(x, x).score == 1.0);
  }
}

TEST_CASE("single forced pairing") {
  auto d1 = doc("d1", {kT});
  auto d2 = doc("d2", {kT, kS, kU});
  CHECK(fastkassim_score(d1, d2, with_denominator(Denominator::LongerDoc)).score ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(fastkassim_score(d1, d2, with_denominator(Denominator::Pairings)).score ==
        doctest::Approx(1.0).epsilon(1e-12));
  auto s = fastkassim_score(d1, d2, DocScoreConfig{});
  CHECK(s.assignment.pairs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}});
  CHECK(s.matrix.rows() == 1);
  CHECK(s.matrix.cols() == 3);
}

TEST_CASE("cassim degenerate pair") {
  auto s = cassim_score(doc("a", {"(A)"}), doc("b", {"(B)"}));
  CHECK(s.score == 0.0);
  CHECK(s.matrix(0, 0) == 1.0);
}

TEST_CASE("errors name the document") {
  Document empty{"nothing", {}};
  auto d = doc("d", {kT});
  try {
    fastkassim_score(empty, d, DocScoreConfig{});
    FAIL("expected EmptyDocument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyDocument);
    CHECK(std::string(e.what()).find("nothing") != std::string::npos);
  }
  CHECK_THROWS_AS(cassim_score(d, empty), Error);
  auto bad = doc("bad", {kT, "(A)"});
  try {
    fastkassim_score(d, bad, DocScoreConfig{});
    FAIL("expected DegenerateTree");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateTree);
    CHECK(std::string(e.what()).find("'bad' sentence 1") != std::string::npos);
  }
}

TEST_CASE("symmetry, bounds, permutation invariance, monotone penalty") {
  std::mt19937_64 rng(31);
  auto corpus = fixture_corpus();
  for (int k = 0; k < 30; ++k)
    corpus.push_back(synth::random_document(rng, "r" + std::to_string(k), 1 + k % 5, 8, 30));
  const Document zero = doc("zero", {kU});

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = i; j < corpus.size(); j += 3) {
      const auto& a = corpus[i];
      const auto& b = corpus[j];
      for (auto den : {Denominator::LongerDoc, Denominator::Pairings}) {
        const auto cfg = with_denominator(den);
        const double ab = fastkassim_score(a, b, cfg).score;
        CHECK(ab == fastkassim_score(b, a, cfg).score);
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
      }
      const double c = cassim_score(a, b).score;
      CHECK(c == cassim_score(b, a).score);
      CHECK(c >= 0.0);
      CHECK(c <= 1.0);

      Document shuffled = b;
      std::reverse(shuffled.trees.begin(), shuffled.trees.end());
      CHECK(fastkassim_score(a, shuffled, DocScoreConfig{}).score ==
            doctest::Approx(fastkassim_score(a, b, DocScoreConfig{}).score).epsilon(1e-12));
      CHECK(cassim_score(a, shuffled).score == doctest::Approx(c).epsilon(1e-12));

      Document longer = b;
      longer.trees.push_back(zero.trees[0]);
      CHECK(fastkassim_score(a, longer, DocScoreConfig{}).score <=
            fastkassim_score(a, b, DocScoreConfig{}).score + 1e-15);
    }
  }
}

TEST_CASE("reported pairs are in the caller's orientation") {
  auto d1 = doc("d1", {kS, kT});
  auto d2 = doc("d2", {kT});
  auto s = fastkassim_score(d1, d2, DocScoreConfig{});
  CHECK(s.matrix.rows() == 2);
  CHECK(s.matrix.cols() == 1);
  CHECK(s.assignment.pairs == std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}});
}

TEST_CASE("corpus matrix") {
  auto corpus = fixture_corpus();
  auto m = corpus_matrix_serial(corpus, DocScoreConfig{});
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CHECK(m(i, i) == doctest::Approx(1.0).epsilon(1e-9));
    for (std::size_t j = 0; j < corpus.size(); ++j) CHECK(m(i, j) == m(j, i));
  }
}

TEST_CASE("summarize") {
  const std::vector<double> v{0.2, 0.4};
  auto s = summarize(v);
  CHECK(s[0] == 0.2);
  CHECK(s[1] == 0.4);
  CHECK(s[2] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(s[3] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(summarize(std::vector<double>{}), Error);
}

TEST_CASE("syntax features") {
  const Document target = doc("target", {kT, kS});
  SUBCASE("copies of the target") {
    std::vector<std::vector<Document>> refs{{target, target, target}};
    auto f = syntax_features(target, refs, DocScoreConfig{}, 3, 0);
    REQUIRE(f.values.size() == 4);
    CHECK(f.values[0] == doctest::Approx(1.0));
    CHECK(f.values[1] == doctest::Approx(1.0));
    CHECK(f.values[2] == doctest::Approx(1.0));
    CHECK(f.values[3] == doctest::Approx(0.0));
    CHECK_FALSE(f.samples[0].with_replacement);
  }
  SUBCASE("constructed scores 0.2 and 0.4") {
    std::vector<std::vector<Document>> refs{
        {doc("one", {kT, kU, kU, kU, kU}), doc("two", {kT, kS, kU, kU, kU})}};
    auto f = syntax_features(target, refs, DocScoreConfig{}, 2, 0);
    REQUIRE(f.values.size() == 4);
    CHECK(f.values[0] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(f.values[1] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(f.values[2] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(f.values[3] == doctest::Approx(0.1).epsilon(1e-12));
  }
  SUBCASE("two reference sets, small set sampled with replacement") {
    std::vector<std::vector<Document>> refs{{target}, {doc("a", {kT}), doc("b", {kS}), doc("c", {kU})}};
    auto f = syntax_features(target, refs, DocScoreConfig{}, 25, 7);
    CHECK(f.values.size() == 8);
    CHECK(f.samples[0].with_replacement);
    CHECK(f.samples[0].indices.size() == 25);
    auto g = syntax_features(target, refs, DocScoreConfig{}, 25, 7);
    CHECK(f.values == g.values);
    CHECK(f.samples[1].indices == g.samples[1].indices);
  }
  SUBCASE("errors") {
    std::vector<std::vector<Document>> refs{{target}, {}};
    CHECK_THROWS_AS(syntax_features(target, refs, DocScoreConfig{}, 1, 0), Error);
  }
}
