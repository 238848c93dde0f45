#pragma once

#include <stdexcept>
#include <string>

namespace edgesync {

/// Failure categories raised across the library. Each maps to a distinct
/// process exit code in the command-line tool.
enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kNonSymmetric,
  kNoConvergence,
  kSingular,
  kNotPositiveDefinite,
  kMuSearchFailed,
  kNotStabilizable,
  kDiverged,
  kParseError,
  kDisconnectedGraph,
  kEmptyWindow,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the integrator when the state blows up; carries the time of the
/// last finite state.
class DivergedError : public Error {
 public:
  DivergedError(double time, const std::string& what)
      : Error(ErrorCode::kDiverged, what), time_(time) {}

  double time() const { return time_; }

 private:
  double time_;
};

/// Raised by the text parsers; `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(ErrorCode::kParseError,
              "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace edgesync
