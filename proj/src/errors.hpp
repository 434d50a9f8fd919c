#pragma once

#include <stdexcept>
#include <string>

namespace annulus {

enum class ErrorCode {
  invalid_argument = 1,
  parse = 2,
  wall_mismatch = 3,
  unsupported = 4,
  size_limit = 5,
  not_invertible = 6,
  io = 7,
  internal = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace annulus
