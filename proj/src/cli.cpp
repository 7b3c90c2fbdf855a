#include "fastkassim/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "fastkassim/benchkit.hpp"
#include "fastkassim/corpus_io.hpp"
#include "fastkassim/docsim.hpp"
#include "fastkassim/error.hpp"
#include "fastkassim/evalkit.hpp"
#include "fastkassim/ingest.hpp"

namespace fastkassim {

namespace {

using ordered_json = nlohmann::ordered_json;

struct GlobalOptions {
  double lambda = 0.4;
  int sigma = 1;
  std::string denominator = "longer_doc";
  std::string method = "fastkassim";
  std::string parser_cmd;
  std::string cache_dir;
  std::uint64_t seed = 0;
  int jobs = 1;

  DocScoreConfig doc_config() const {
    DocScoreConfig cfg;
    cfg.kernel = {lambda, sigma};
    cfg.kernel.validate();
    cfg.denominator = parse_denominator(denominator);
    cfg.method = parse_method(method);
    return cfg;
  }

  std::unique_ptr<ParseCache> parser() const {
    std::string cmd = parser_cmd.empty() ? default_parser_cmd() : parser_cmd;
    if (cmd.empty()) return nullptr;
    return std::make_unique<ParseCache>(cache_dir, cmd);
  }
};

std::string format_real(double v) {
  std::string s = fmt::format("{}", v);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ordered_json config_json(const DocScoreConfig& cfg) {
  ordered_json j;
  j["lambda"] = cfg.kernel.lambda;
  j["sigma"] = cfg.kernel.sigma;
  j["denominator"] = std::string(to_string(cfg.denominator));
  return j;
}

ordered_json stats_json(const KernelStats& s) {
  ordered_json j;
  j["delta_calls"] = s.delta_calls;
  j["cache_entries"] = s.cache_entries;
  j["s12"] = s.s12;
  return j;
}

Document load_single(const std::string& arg, const std::string& fallback_id, ParseCache* parser) {
  if (!arg.empty() && arg.front() == '(') {
    try {
      return Document{fallback_id, {read_bracketed(arg)}};
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedTree, fallback_id + ": " + e.what());
    }
  }
  auto docs = read_corpus(arg, parser);
  if (docs.size() != 1)
    throw Error(ErrorCode::InvalidArgument, arg + " holds " + std::to_string(docs.size()) + " documents; expected one");
  return std::move(docs.front());
}

void report_ingest(ParseCache* parser, std::ostream& err) {
  if (!parser) return;
  for (const auto& w : parser->stats().warnings) err << "warning: " << w << '\n';
}

int cmd_score(const GlobalOptions& g, const std::string& a, const std::string& b, bool with_stats, std::ostream& out,
              std::ostream& err) {
  const DocScoreConfig cfg = g.doc_config();
  auto parser = g.parser();
  Document d1 = load_single(a, "input1", parser.get());
  Document d2 = load_single(b, "input2", parser.get());
  report_ingest(parser.get(), err);
  const DocScore s = score_documents(d1, d2, cfg, g.jobs);

  ordered_json j;
  j["doc1"] = d1.id;
  j["doc2"] = d2.id;
  j["method"] = std::string(to_string(cfg.method));
  j["score"] = s.score;
  ordered_json pairs = ordered_json::array();
  for (const auto& [r, c] : s.assignment.pairs) pairs.push_back({r, c, s.matrix(r, c)});
  j["pairs"] = std::move(pairs);
  j["config"] = config_json(cfg);
  if (with_stats) j["stats"] = stats_json(s.stats);
  out << j.dump() << '\n';
  return 0;
}

int cmd_matrix(const GlobalOptions& g, const std::string& corpus, std::ostream& out, std::ostream& err) {
  const DocScoreConfig cfg = g.doc_config();
  auto parser = g.parser();
  auto docs = read_corpus(corpus, parser.get());
  report_ingest(parser.get(), err);
  for (const auto& d : docs)
    if (d.trees.empty()) throw Error(ErrorCode::EmptyDocument, "document '" + d.id + "' has no sentences");
  const ScoreMatrix m = corpus_matrix(docs, cfg, g.jobs);

  std::string text = "id";
  for (const auto& d : docs) text += "," + csv_field(d.id);
  text += '\n';
  for (std::size_t i = 0; i < docs.size(); ++i) {
    text += csv_field(docs[i].id);
    for (std::size_t j = 0; j < docs.size(); ++j) text += "," + format_real(m(i, j));
    text += '\n';
  }
  out << text;
  return 0;
}

struct BenchArgs {
  std::string corpus;
  std::size_t bins = 8;
  std::size_t samples = 60;
  std::size_t repeats = 5;
  std::string level = "tree";
  bool end_to_end = false;
};

int cmd_bench(const GlobalOptions& g, const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchOptions opt;
  opt.bins = a.bins;
  opt.samples_per_bin = a.samples;
  opt.repeats = a.repeats;
  opt.seed = g.seed;
  opt.kernel = g.doc_config().kernel;

  auto parser = g.parser();
  BenchReport report;
  if (a.level == "tree") {
    if (a.end_to_end) throw Error(ErrorCode::InvalidArgument, "--end-to-end applies to --level doc");
    auto docs = read_corpus(a.corpus, parser.get());
    std::vector<ParseTree> trees;
    for (auto& d : docs)
      for (auto& t : d.trees) trees.push_back(std::move(t));
    report = run_tree_bench(trees, opt);
  } else if (a.level == "doc") {
    if (!a.end_to_end) {
      auto docs = read_corpus(a.corpus, parser.get());
      report = run_document_bench(docs, opt);
    } else {
      // Re-parse raw text inside every timed run.
      if (!parser) throw Error(ErrorCode::InvalidArgument, "--end-to-end needs a parser command");
      std::ifstream in(a.corpus);
      if (!in) throw Error(ErrorCode::IoError, "cannot open " + a.corpus);
      std::vector<std::string> texts, ids;
      std::string line;
      std::size_t lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto rec = nlohmann::json::parse(line, nullptr, false);
        if (rec.is_discarded() || !rec.contains("text") || !rec["text"].is_string() || !rec.contains("id"))
          throw Error(ErrorCode::InvalidArgument,
                      a.corpus + ":" + std::to_string(lineno) + ": --end-to-end needs {\"id\", \"text\"} records");
        ids.push_back(rec["id"].get<std::string>());
        texts.push_back(rec["text"].get<std::string>());
      }
      ParseCache uncached("", parser->parser_cmd());
      std::vector<Document> docs;
      for (std::size_t k = 0; k < texts.size(); ++k) docs.push_back(uncached.parse(ids[k], texts[k]));
      report = run_document_bench(docs, opt, [&](std::size_t k) {
        ParseCache fresh("", parser->parser_cmd());
        return fresh.parse(ids[k], texts[k]);
      });
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown bench level '" + a.level + "'");
  }
  report_ingest(parser.get(), err);
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  if (report.cache_bound_violations > 0)
    err << "warning: " << report.cache_bound_violations << " pairs exceeded cache_entries <= S12\n";

  out << "bin,mean_ltk_time,mean_editdist_time,mean_NM,mean_S12\n";
  for (const auto& b : report.bins) {
    if (b.skipped) continue;
    out << b.index << ',' << format_real(b.mean_ltk_seconds) << ',' << format_real(b.mean_editdist_seconds) << ','
        << format_real(b.mean_nm) << ',' << format_real(b.mean_s12) << '\n';
  }
  return 0;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

std::optional<bool> parse_flag(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "1" || s == "true" || s == "yes" || s == "same") return true;
  if (s == "0" || s == "false" || s == "no" || s == "diff" || s == "different") return false;
  return std::nullopt;
}

int cmd_eval(const std::string& path, double threshold, bool quantile, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::string line;
  std::size_t row = 0;
  std::vector<LabeledPairScore> pairs;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto f = split_csv(line);
    if (!header_seen) {
      header_seen = true;
      if (f.size() == 3 && f[0] == "pair_id") continue;
    }
    if (f.size() != 3)
      throw Error(ErrorCode::InvalidArgument, path + ": row " + std::to_string(row) + ": expected 3 columns");
    double score = 0.0;
    std::size_t used = 0;
    try {
      score = std::stod(f[1], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != f[1].size())
      throw Error(ErrorCode::InvalidArgument, path + ": row " + std::to_string(row) + ": bad score '" + f[1] + "'");
    auto same = parse_flag(f[2]);
    if (!same)
      throw Error(ErrorCode::InvalidArgument, path + ": row " + std::to_string(row) + ": bad same_source '" + f[2] + "'");
    pairs.push_back({score, *same});
  }
  if (quantile) {
    std::vector<double> raw;
    for (const auto& p : pairs) raw.push_back(p.score);
    auto q = quantile_transform(raw);
    for (std::size_t k = 0; k < pairs.size(); ++k) pairs[k].score = q[k];
  }
  const auto m = classification_metrics(pairs, threshold);

  ordered_json j;
  j["n"] = pairs.size();
  j["threshold"] = threshold;
  j["quantile"] = quantile;
  j["accuracy"] = m.accuracy;
  if (m.sim_recall) j["sim_recall"] = *m.sim_recall;
  if (m.sim_precision) j["sim_precision"] = *m.sim_precision;
  if (m.dis_recall) j["dis_recall"] = *m.dis_recall;
  if (m.dis_precision) j["dis_precision"] = *m.dis_precision;
  out << j.dump() << '\n';
  return 0;
}

int cmd_features(const GlobalOptions& g, const std::string& target_path, const std::vector<std::string>& refs,
                 std::size_t sample_size, std::ostream& out, std::ostream& err) {
  const DocScoreConfig cfg = g.doc_config();
  auto parser = g.parser();
  Document target = load_single(target_path, "target", parser.get());
  std::vector<std::vector<Document>> sets;
  for (const auto& r : refs) sets.push_back(read_corpus(r, parser.get()));
  report_ingest(parser.get(), err);
  const auto f = syntax_features(target, sets, cfg, sample_size, g.seed);

  ordered_json j;
  j["target"] = target.id;
  j["features"] = f.values;
  ordered_json set_info = ordered_json::array();
  for (std::size_t k = 0; k < refs.size(); ++k) {
    ordered_json s;
    s["source"] = refs[k];
    s["size"] = sets[k].size();
    s["sampled"] = f.samples[k].indices;
    s["with_replacement"] = f.samples[k].with_replacement;
    set_info.push_back(std::move(s));
  }
  j["reference_sets"] = std::move(set_info);
  ordered_json meta;
  meta["method"] = std::string(to_string(cfg.method));
  meta["config"] = config_json(cfg);
  meta["sample_size"] = sample_size;
  meta["seed"] = g.seed;
  meta["prng"] = "mt19937_64";
  meta["std"] = "population";
  j["metadata"] = std::move(meta);
  out << j.dump() << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Syntactic similarity between parsed documents (label-based tree kernel)", "fastkassim"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--lambda", g.lambda, "Kernel decay in (0, 1]")->capture_default_str();
  app.add_option("--sigma", g.sigma, "1 = subset-tree kernel, 0 = subtree kernel")->capture_default_str();
  app.add_option("--denominator", g.denominator, "longer_doc or pairings")->capture_default_str();
  app.add_option("--method", g.method, "fastkassim or cassim")->capture_default_str();
  app.add_option("--parser-cmd", g.parser_cmd, "Parser command (default: $FASTKASSIM_PARSER_CMD)");
  app.add_option("--cache-dir", g.cache_dir, "Parse cache directory");
  app.add_option("--seed", g.seed, "Seed for all sampling")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads; <= 0 uses all cores")->capture_default_str();

  std::string score_a, score_b;
  bool score_stats = false;
  auto* score = app.add_subcommand("score", "Score two documents");
  score->add_option("doc1", score_a, "Tree file, JSONL, raw text (.txt) or a literal bracketed tree")->required();
  score->add_option("doc2", score_b)->required();
  score->add_flag("--stats", score_stats, "Include kernel instrumentation");

  std::string matrix_corpus;
  auto* matrix = app.add_subcommand("matrix", "Pairwise document matrix as CSV");
  matrix->add_option("corpus", matrix_corpus)->required();

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Runtime vs NM table as CSV");
  bench->add_option("corpus", bench_args.corpus)->required();
  bench->add_option("--bins", bench_args.bins)->capture_default_str();
  bench->add_option("--samples-per-bin", bench_args.samples)->capture_default_str();
  bench->add_option("--repeats", bench_args.repeats, "Median-of-k timing")->capture_default_str();
  bench->add_option("--level", bench_args.level, "tree or doc")->capture_default_str();
  bench->add_flag("--end-to-end", bench_args.end_to_end, "Include external parse time (doc level)");

  std::string eval_csv;
  double eval_threshold = 0.5;
  bool eval_quantile = false;
  auto* eval = app.add_subcommand("eval", "Classification metrics for scored labeled pairs");
  eval->add_option("csv", eval_csv, "CSV with pair_id,score,same_source")->required();
  eval->add_option("--threshold", eval_threshold)->capture_default_str();
  eval->add_flag("--quantile", eval_quantile, "Quantile-transform scores first");

  std::string feat_target;
  std::vector<std::string> feat_refs;
  std::size_t feat_sample = 25;
  auto* features = app.add_subcommand("features", "Syntax feature vector against reference sets");
  features->add_option("target", feat_target)->required();
  features->add_option("--refs", feat_refs, "One corpus file per reference set")->required();
  features->add_option("--sample-size", feat_sample)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*score) return cmd_score(g, score_a, score_b, score_stats, out, err);
    if (*matrix) return cmd_matrix(g, matrix_corpus, out, err);
    if (*bench) return cmd_bench(g, bench_args, out, err);
    if (*eval) return cmd_eval(eval_csv, eval_threshold, eval_quantile, out);
    if (*features) return cmd_features(g, feat_target, feat_refs, feat_sample, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace fastkassim
