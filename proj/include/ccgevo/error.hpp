#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ccgevo {

enum class ErrorCode {
  ParseError,
  UnknownEffect,
  DuplicateName,
  UnknownCard,
  DeckSizeError,
  CopyLimitError,
  IllegalAction,
  TerminalState,
  PolicyIllegalAction,
  EmptyCell,
  DimensionMismatch,
  DegenerateCluster,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ccgevo
