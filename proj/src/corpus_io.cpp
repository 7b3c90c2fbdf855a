#include "fastkassim/corpus_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fastkassim/error.hpp"
#include "fastkassim/ingest.hpp"

namespace fastkassim {

namespace {

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r\f\v") == std::string::npos; }

std::string located(const std::string& name, std::size_t line, const std::string& what) {
  return name + ":" + std::to_string(line) + ": " + what;
}

}  // namespace

std::vector<Document> read_tree_stream(std::istream& in, const std::string& name) {
  std::vector<Document> docs;
  Document current;
  std::string line;
  std::size_t lineno = 0;
  auto flush = [&] {
    if (!current.trees.empty()) docs.push_back(std::move(current));
    current = Document{};
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) {
      flush();
      continue;
    }
    try {
      current.trees.push_back(read_bracketed(line));
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedTree, located(name, lineno, e.what()));
    }
  }
  flush();
  if (docs.size() == 1) {
    docs[0].id = name;
  } else {
    for (std::size_t k = 0; k < docs.size(); ++k) docs[k].id = name + "#" + std::to_string(k + 1);
  }
  return docs;
}

void write_tree_stream(std::ostream& out, std::span<const Document> docs) {
  for (std::size_t k = 0; k < docs.size(); ++k) {
    if (k > 0) out << '\n';
    for (const auto& t : docs[k].trees) out << write_bracketed(t) << '\n';
  }
}

std::vector<Document> read_jsonl_stream(std::istream& in, const std::string& name, ParseCache* parser) {
  std::vector<Document> docs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidArgument, located(name, lineno, std::string("invalid JSON: ") + e.what()));
    }
    if (!record.is_object() || !record.contains("id") || !record["id"].is_string())
      throw Error(ErrorCode::InvalidArgument, located(name, lineno, "record needs a string \"id\""));

    Document doc{record["id"].get<std::string>(), {}};
    if (record.contains("trees")) {
      const auto& trees = record["trees"];
      if (!trees.is_array()) throw Error(ErrorCode::InvalidArgument, located(name, lineno, "\"trees\" must be an array"));
      for (std::size_t k = 0; k < trees.size(); ++k) {
        if (!trees[k].is_string())
          throw Error(ErrorCode::InvalidArgument, located(name, lineno, "tree " + std::to_string(k) + " is not a string"));
        try {
          doc.trees.push_back(read_bracketed(trees[k].get<std::string>()));
        } catch (const Error& e) {
          throw Error(ErrorCode::MalformedTree,
                      located(name, lineno, "document '" + doc.id + "' tree " + std::to_string(k) + ": " + e.what()));
        }
      }
    } else if (record.contains("text") && record["text"].is_string()) {
      if (parser == nullptr)
        throw Error(ErrorCode::InvalidArgument,
                    located(name, lineno, "document '" + doc.id + "' has raw text but no parser command is configured"));
      doc = parser->parse(doc.id, record["text"].get<std::string>());
    } else {
      throw Error(ErrorCode::InvalidArgument, located(name, lineno, "record needs \"trees\" or \"text\""));
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> read_corpus(const std::filesystem::path& path, ParseCache* parser) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  const std::string name = path.filename().string();
  const std::string ext = path.extension().string();
  if (ext == ".jsonl") return read_jsonl_stream(in, name, parser);
  if (ext == ".txt") {
    if (parser == nullptr)
      throw Error(ErrorCode::InvalidArgument, path.string() + " is raw text but no parser command is configured");
    std::stringstream text;
    text << in.rdbuf();
    std::vector<Document> docs;
    docs.push_back(parser->parse(name, text.str()));
    return docs;
  }
  return read_tree_stream(in, name);
}

}  // namespace fastkassim
