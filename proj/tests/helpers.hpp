#pragma once

#include <unistd.h>

#include <cstdio>
#include <string>

#include "doctest.h"
#include "error.hpp"

namespace test_util {

/// Asserts that fn throws a dctembed::Error with the given code.
template <typename Fn>
void expect_error(dctembed::ErrorCode code, Fn&& fn) {
  try {
    fn();
    FAIL_CHECK("expected an error, none thrown");
  } catch (const dctembed::Error& e) {
    CHECK_MESSAGE(e.code() == code, "unexpected error: ", e.what());
  }
}

/// Unique-ish scratch path under the system temp dir, removed on scope exit.
class TempPath {
 public:
  explicit TempPath(const std::string& name)
      : path_("/tmp/dctembed_test_" + std::to_string(getpid()) + "_" +
              std::to_string(counter_++) + "_" + name) {}
  ~TempPath() { std::remove(path_.c_str()); }
  const std::string& str() const { return path_; }

 private:
  static inline int counter_ = 0;
  std::string path_;
};

}  // namespace test_util
