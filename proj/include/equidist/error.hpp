#pragma once

#include <stdexcept>
#include <string>

namespace equidist {

enum class ErrorCode {
  InvalidArgument = 1,
  Parse,
  NotRepresentable,
  IncompatibleCell,
  Precondition,
  Unsupported,
  Construction,
  InvalidWeight,
  Overflow,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// C layer can map it to a status without string matching.
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

inline void require(bool condition, ErrorCode code, const char* message) {
  if (!condition) throw Error(code, message);
}

}  // namespace equidist
