#pragma once

#include <stdexcept>
#include <string>

namespace pqhyp {

// Error taxonomy shared by the whole library; the C API maps kinds to status
// codes and the CLI maps them to exit codes.
enum class ErrorKind {
  Parse,      // malformed function spec or polynomial literal
  Domain,     // argument outside a function's domain, invalid configuration
  Numeric,    // non-finite intermediate, divergent iteration, non-convergence
  Internal,   // broken invariant inside the library
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_parse(const std::string& msg) { throw Error(ErrorKind::Parse, msg); }
[[noreturn]] inline void fail_domain(const std::string& msg) { throw Error(ErrorKind::Domain, msg); }
[[noreturn]] inline void fail_numeric(const std::string& msg) { throw Error(ErrorKind::Numeric, msg); }
[[noreturn]] inline void fail_internal(const std::string& msg) { throw Error(ErrorKind::Internal, msg); }

}  // namespace pqhyp
