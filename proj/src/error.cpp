#include "gconv/error.hpp"

namespace gconv {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::GroupMismatch: return "group mismatch";
    case ErrorKind::IllFormed: return "ill-formed";
    case ErrorKind::NotInvertible: return "not invertible";
    case ErrorKind::NotCertified: return "not certified";
    case ErrorKind::NoSolution: return "no solution";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::CapExceeded: return "cap exceeded";
    case ErrorKind::Precondition: return "precondition violated";
    case ErrorKind::MixedInfinity: return "mixed infinity";
    case ErrorKind::Io: return "i/o failure";
  }
  return "error";
}

}  // namespace gconv
