#pragma once

// Exact rationals. Everything combinatorial or algebraic in this library runs
// on GMP rationals; floating point appears only in spectral.hpp.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace tensorclass {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p", "-p" or "p/q" (q != 0). The result is canonicalized.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw DomainError("empty rational literal");
  Rational r;
  if (r.set_str(s, 10) != 0) throw DomainError("malformed rational literal '" + s + "'");
  if (s.find('/') != std::string::npos && r.get_den() == 0)
    throw DomainError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

/// n / d in canonical form. The two-argument mpq_class constructor does not
/// canonicalize, and GMP arithmetic assumes canonical operands.
inline Rational ratio(long n, long d) {
  if (d == 0) throw DomainError("zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Always "p/q" with q > 0 and gcd(p, q) = 1, also for integers ("3/1").
inline std::string format_rational(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline bool fits_int64(const BigInt& z) {
  static const BigInt lo("-9223372036854775808");
  static const BigInt hi("9223372036854775807");
  return z >= lo && z <= hi;
}

inline std::int64_t to_int64(const BigInt& z) {
  if (!fits_int64(z)) throw DomainError("integer does not fit in 64 bits: " + z.get_str());
  // mpz_get_si is limited to long, which is 64-bit on the supported platforms.
  return static_cast<std::int64_t>(mpz_get_si(z.get_mpz_t()));
}

}  // namespace tensorclass
