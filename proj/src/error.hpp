#pragma once

#include <stdexcept>
#include <string>

namespace corrfun {

enum class Errc {
  invalid_argument,
  parse,
  not_a_lattice,
  dimension,
  singular,
  bound,
  not_commutative,
  not_split,
  hypothesis,
  verification,
  unknown_name,
  io,
  internal,
};

const char* errc_name(Errc code);

// Domain error carrying a machine-readable code. The C layer maps codes to
// status values; the CLI maps them to exit codes.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
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

}  // namespace corrfun
