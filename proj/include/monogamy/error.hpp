#pragma once

#include <stdexcept>
#include <string>

namespace monogamy {

/// Failure categories. Each maps to a distinct process exit code in the CLI.
enum class ErrorKind {
  parse,      // malformed input file or flag value
  dimension,  // wrong sizes, bad partitions, out-of-range indices
  domain,     // parameter outside its admissible range
  state,      // unphysical or otherwise inadmissible state
  io,         // unreadable / unwritable path
  numerical,  // eigensolver or optimizer could not certify a result
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

/// Exit code used by the command-line front end for a given failure kind.
int exit_code(ErrorKind kind) noexcept;

}  // namespace monogamy
