#pragma once

#include <stdexcept>
#include <string>

namespace tsgn {

enum class ErrorKind {
  invalid_argument,
  io,
  format,
  incompatible,
  not_found,
};

// Single exception type for the library; the kind drives C API status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tsgn
