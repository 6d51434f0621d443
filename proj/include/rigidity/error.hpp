#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rigidity {

enum class ErrorCode {
  EdgeNotPresent,
  BadNeighbors,
  ParseError,
  Singular,
  BadPrime,
  MissingCoordinates,
  DegenerateSample,
  NotMinimallyRigid,
  NotSpanningTree,
  NotAPartition,
  GenerationStalled,
  InternalAssertionFailed,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EdgeNotPresent: return "EdgeNotPresent";
    case ErrorCode::BadNeighbors: return "BadNeighbors";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::MissingCoordinates: return "MissingCoordinates";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::NotMinimallyRigid: return "NotMinimallyRigid";
    case ErrorCode::NotSpanningTree: return "NotSpanningTree";
    case ErrorCode::NotAPartition: return "NotAPartition";
    case ErrorCode::GenerationStalled: return "GenerationStalled";
    case ErrorCode::InternalAssertionFailed: return "InternalAssertionFailed";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Line-numbered failure from the .grf reader.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline void ensure(bool condition, const char* what) {
  if (!condition) throw Error(ErrorCode::InternalAssertionFailed, what);
}

}  // namespace detail
}  // namespace rigidity
