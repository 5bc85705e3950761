#include "aerotda/error.hpp"

namespace aerotda {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::ContractViolation: return "contract violation";
    case ErrorKind::Numeric: return "numeric error";
    case ErrorKind::UnsupportedDimension: return "unsupported dimension";
    case ErrorKind::InvalidFiltration: return "invalid filtration";
    case ErrorKind::NotInvertible: return "not invertible";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Validation: return "validation error";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

}  // namespace aerotda
