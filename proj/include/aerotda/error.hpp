#pragma once

#include <stdexcept>
#include <string>

namespace aerotda {

enum class ErrorKind {
  InvalidInput,
  ContractViolation,
  Numeric,
  UnsupportedDimension,
  InvalidFiltration,
  NotInvertible,
  Parse,
  Validation,
  Io,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; callers switch on kind() when they
// need to map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace aerotda
