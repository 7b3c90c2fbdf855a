#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fastkassim/treebank.hpp"

namespace fastkassim {

/// Splits raw text on sentence-final punctuation (. ! ?), keeping trailing
/// closing quotes/brackets with the sentence. Common abbreviations and single
/// capital initials do not end a sentence.
std::vector<std::string> segment(std::string_view text);

/// Runs parser_cmd through /bin/sh, feeding one sentence per LF-terminated
/// line on stdin and reading one bracketed tree per line from stdout.
/// Errors: ParserLaunchFailure, ParserOutputMismatch, MalformedTree.
std::vector<ParseTree> parse_external(std::span<const std::string> sentences, const std::string& parser_cmd);

/// Parser command from FASTKASSIM_PARSER_CMD, or empty.
std::string default_parser_cmd();

struct IngestStats {
  std::size_t launches = 0;
  std::size_t cache_hits = 0;
  std::size_t cache_misses = 0;
  std::size_t corrupt_entries = 0;
  std::vector<std::string> warnings;
};

/// Per-sentence parse cache in front of parse_external. Entries live at
/// <dir>/<2-hex prefix>/<sha256>.trees, keyed on (parser_cmd, sentence), and
/// are written via write-then-rename. Corrupt entries are reported in the
/// stats and reparsed. An empty dir disables caching.
class ParseCache {
 public:
  ParseCache(std::filesystem::path dir, std::string parser_cmd);

  /// Segments, parses cache misses in one parser launch, and stores them.
  Document parse(std::string id, std::string_view text);

  /// Same, for pre-segmented sentences.
  std::vector<ParseTree> parse_sentences(std::span<const std::string> sentences);

  std::filesystem::path entry_path(std::string_view sentence) const;
  const IngestStats& stats() const { return stats_; }
  const std::string& parser_cmd() const { return parser_cmd_; }

 private:
  std::filesystem::path dir_;
  std::string parser_cmd_;
  IngestStats stats_;
};

/// Convenience wrapper: one-shot ParseCache::parse.
Document cached_parse(std::string id, std::string_view text, const std::filesystem::path& cache_dir,
                      const std::string& parser_cmd, IngestStats* stats = nullptr);

}  // namespace fastkassim
