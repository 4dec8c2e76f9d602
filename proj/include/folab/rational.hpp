#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "folab/errors.hpp"

namespace folab {

using Integer = mpz_class;

/// Exact rational number. GMP keeps values canonical: lowest terms, positive
/// denominator, zero as 0/1.
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "a" or "a/b" with optional leading sign. Throws folab::Error on bad input.
inline Rational parse_rational(std::string_view text) {
  if (text.empty()) throw Error("empty rational literal");
  std::string s(text);
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error("bad rational literal '" + s + "'");
  if (q.get_den() == 0) throw Error("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace folab
