#include "monogamy/error.hpp"

namespace monogamy {

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parse:
      return 2;
    case ErrorKind::dimension:
    case ErrorKind::domain:
    case ErrorKind::state:
      return 3;
    case ErrorKind::io:
      return 4;
    case ErrorKind::numerical:
      return 5;
  }
  return 5;
}

}  // namespace monogamy
