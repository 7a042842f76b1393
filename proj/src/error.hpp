#pragma once

#include <stdexcept>
#include <string>

namespace dctembed {

enum class ErrorCode {
  invalid_argument,
  parse_error,
  io_error,
  oov_token,
  dim_mismatch,
  empty_input,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace dctembed
