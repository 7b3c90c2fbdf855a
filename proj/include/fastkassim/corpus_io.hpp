#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fastkassim/treebank.hpp"

namespace fastkassim {

class ParseCache;

/// Tree file: one bracketed tree per line, blank lines separate documents.
/// A single-document file yields id `name`; otherwise ids are `name#1`, ...
std::vector<Document> read_tree_stream(std::istream& in, const std::string& name);
void write_tree_stream(std::ostream& out, std::span<const Document> docs);

/// JSON Lines corpus: {"id": ..., "trees": [...]} or {"id": ..., "text": ...}.
/// Raw-text records need a parse cache; without one they raise
/// InvalidArgument. Errors carry `name:line`.
std::vector<Document> read_jsonl_stream(std::istream& in, const std::string& name, ParseCache* parser);

/// Dispatches on extension: .jsonl, .txt (raw text, needs a parser),
/// anything else is a tree file. Missing files raise IoError naming the path.
std::vector<Document> read_corpus(const std::filesystem::path& path, ParseCache* parser = nullptr);

}  // namespace fastkassim
