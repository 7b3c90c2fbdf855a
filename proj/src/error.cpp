#include "fastkassim/error.hpp"

namespace fastkassim {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnbalancedParens: return "UnbalancedParens";
    case ErrorCode::EmptyLabel: return "EmptyLabel";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DegenerateTree: return "DegenerateTree";
    case ErrorCode::OracleCapExceeded: return "OracleCapExceeded";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::EmptyDocument: return "EmptyDocument";
    case ErrorCode::EmptyReferenceSet: return "EmptyReferenceSet";
    case ErrorCode::ParserLaunchFailure: return "ParserLaunchFailure";
    case ErrorCode::ParserOutputMismatch: return "ParserOutputMismatch";
    case ErrorCode::MalformedTree: return "MalformedTree";
    case ErrorCode::CacheCorrupt: return "CacheCorrupt";
    case ErrorCode::TooFewScores: return "TooFewScores";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InsufficientPairsInBin: return "InsufficientPairsInBin";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

ParseError::ParseError(ErrorCode code, std::size_t offset, const std::string& message)
    : Error(code, message + " at byte " + std::to_string(offset)), offset_(offset) {}

}  // namespace fastkassim
