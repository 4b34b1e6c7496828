#include "ccgevo/error.hpp"

namespace ccgevo {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownEffect: return "UnknownEffect";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnknownCard: return "UnknownCard";
    case ErrorCode::DeckSizeError: return "DeckSizeError";
    case ErrorCode::CopyLimitError: return "CopyLimitError";
    case ErrorCode::IllegalAction: return "IllegalAction";
    case ErrorCode::TerminalState: return "TerminalState";
    case ErrorCode::PolicyIllegalAction: return "PolicyIllegalAction";
    case ErrorCode::EmptyCell: return "EmptyCell";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateCluster: return "DegenerateCluster";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace ccgevo
