#pragma once

#include <stdexcept>
#include <string>

namespace recoat {

// Error taxonomy mirrors the process exit codes: config errors exit 1,
// runtime aborts exit 2, partial sweep failures exit 3.
enum class ErrorCode {
  config = 1,
  runtime = 2,
  partial = 3,
  invalid_parameter = 4,
  io = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace recoat
