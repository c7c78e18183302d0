#pragma once

#include <stdexcept>
#include <string>

namespace wlab
{
  enum class ErrorCode
  {
    InvalidLasso,
    InvalidAlphabet,
    AlphabetMismatch,
    MalformedAutomaton,
    InvalidOCBA,
    UnnormalizedAutomaton,
    PartitionError,
    InsufficientInput,
    IllegalRun,
    BudgetExceeded,
    NotSelfDual,
    IllegalMove,
    SessionFinished,
    UnknownSession,
    BadAutomaton,
    UnsupportedKind,
    UnknownSuite,
    ParseError,
  };

  inline const char* error_code_name(ErrorCode c)
  {
    switch (c)
      {
      case ErrorCode::InvalidLasso: return "InvalidLasso";
      case ErrorCode::InvalidAlphabet: return "InvalidAlphabet";
      case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
      case ErrorCode::MalformedAutomaton: return "MalformedAutomaton";
      case ErrorCode::InvalidOCBA: return "InvalidOCBA";
      case ErrorCode::UnnormalizedAutomaton: return "UnnormalizedAutomaton";
      case ErrorCode::PartitionError: return "PartitionError";
      case ErrorCode::InsufficientInput: return "InsufficientInput";
      case ErrorCode::IllegalRun: return "IllegalRun";
      case ErrorCode::BudgetExceeded: return "BudgetExceeded";
      case ErrorCode::NotSelfDual: return "NotSelfDual";
      case ErrorCode::IllegalMove: return "IllegalMove";
      case ErrorCode::SessionFinished: return "SessionFinished";
      case ErrorCode::UnknownSession: return "UnknownSession";
      case ErrorCode::BadAutomaton: return "BadAutomaton";
      case ErrorCode::UnsupportedKind: return "UnsupportedKind";
      case ErrorCode::UnknownSuite: return "UnknownSuite";
      case ErrorCode::ParseError: return "ParseError";
      }
    return "Unknown";
  }

  /// Every failure raised by the library carries a machine-readable code.
  class Error : public std::runtime_error
  {
  public:
    Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code), detail_(detail)
    {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

  private:
    ErrorCode code_;
    std::string detail_;
  };

  [[noreturn]] inline void fail(ErrorCode code, const std::string& detail)
  {
    throw Error(code, detail);
  }
}
