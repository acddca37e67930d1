#pragma once

#include <stdexcept>
#include <string>

namespace surfcert {

enum class ErrorCode {
  InvalidArgument = 1,
  OutOfRange,
  Parse,
  DataMissing,
  DataCorrupt,
  SizeCapExceeded,
  NotAHomomorphism,
  ComplexNotExact,
  EvidenceInapplicable,
};

/// Base exception for every recoverable failure in the library. The C API
/// maps `code()` one-to-one onto `sc_status`.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace surfcert
