#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace corrfun {

// Exact rational scalar. Kept in canonical form: lowest terms, positive
// denominator (arithmetic re-canonicalizes automatically).
using Scalar = mpq_class;

inline Scalar scalar(long num, long den = 1) {
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

// Parses "n" or "n/d" with optional sign; rejects d = 0.
std::optional<Scalar> parse_scalar(const std::string& text);

std::string scalar_text(const Scalar& s);

}  // namespace corrfun
