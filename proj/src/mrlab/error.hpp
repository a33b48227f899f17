#pragma once

#include <stdexcept>
#include <string>

namespace mrlab {

// Numeric values line up with the CLI exit codes where one exists.
enum class ErrorCode {
  kInvalidInstance = 2,
  kInvalidArgument = 3,
  kUnsupported = 4,
  kNumerical = 5,
  kIo = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorCode::kInvalidArgument, what);
}

}  // namespace mrlab
