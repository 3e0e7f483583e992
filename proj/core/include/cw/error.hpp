#pragma once

#include <stdexcept>
#include <string>

namespace cw {

enum class Errc {
  OrderCapExceeded,
  InvalidPermutation,
  NotAbelian,
  NotNilpotent,
  NotNormal,
  InvalidTransversal,
  MismatchError,
  HypothesisViolated,
  NonIntegralWarning,
  NonCharacterWarning,
  OrderMismatch,
  ParseError,
  IOError,
  Internal,
};

const char* errc_name(Errc code);

/// Library-wide exception carrying a machine-readable error code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool ok, Errc code, const std::string& message) {
  if (!ok) fail(code, message);
}

}  // namespace cw
