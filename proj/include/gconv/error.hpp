#pragma once

#include <stdexcept>
#include <string>

namespace gconv {

enum class ErrorKind {
  InvalidArgument,
  GroupMismatch,
  IllFormed,
  NotInvertible,
  NotCertified,
  NoSolution,
  Unsupported,
  CapExceeded,
  Precondition,
  MixedInfinity,
  Io,
};

const char* to_string(ErrorKind kind);

/// Every recoverable failure in the library is reported as a gconv::Error.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gconv
