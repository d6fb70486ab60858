#pragma once

#include <stdexcept>
#include <string>

namespace hopf {

/// Failure categories; each maps onto a CLI exit status.
enum class ErrorKind {
  validation = 1,
  integration = 2,
  inconsistent = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_validation(const std::string& what) {
  throw Error(ErrorKind::validation, what);
}

[[noreturn]] inline void fail_integration(const std::string& what) {
  throw Error(ErrorKind::integration, what);
}

}  // namespace hopf
