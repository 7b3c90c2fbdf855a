#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fastkassim {

enum class ErrorCode {
  UnbalancedParens,
  EmptyLabel,
  EmptyInput,
  DegenerateTree,
  OracleCapExceeded,
  NonFiniteEntry,
  EmptyDocument,
  EmptyReferenceSet,
  ParserLaunchFailure,
  ParserOutputMismatch,
  MalformedTree,
  CacheCorrupt,
  TooFewScores,
  ZeroVariance,
  LengthMismatch,
  InsufficientPairsInBin,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code is
/// stable and is what the CLI and bindings surface to callers.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the bracketed-tree reader; carries the byte offset of the fault.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t offset, const std::string& message);

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace fastkassim
