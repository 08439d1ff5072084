#pragma once

#include <stdexcept>
#include <string>

namespace vessel {

// Failure categories surfaced by the library. The C API maps these 1:1 to
// vg_status codes; the CLI maps them to process exit codes.
enum class ErrorCode {
  EmptyInput,
  InvalidEdge,
  InvalidRadius,
  InvalidRatio,
  InvalidParams,
  InvalidDomain,
  NotATree,
  ShapeMismatch,
  OutOfBounds,
  EmptyAfterFilter,
  RootNotFound,
  DegenerateStats,
  InvalidWindow,
  IoError,
  ParseError,
};

const char* error_code_name(ErrorCode code) noexcept;

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

}  // namespace vessel
