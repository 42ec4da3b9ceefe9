#pragma once

#include <gmpxx.h>

#include <string>

#include "nscap/errors.hpp"

namespace nscap {

// Exact rational scalar. Arbitrary-precision integers back both components,
// so polytope intermediates cannot overflow. All helpers keep values
// canonical: lowest terms, positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "n" or "n/d" in base 10.
inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0)
    throw IoError("malformed rational: '" + text + "'");
  if (r.get_den() == 0) throw IoError("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace nscap
