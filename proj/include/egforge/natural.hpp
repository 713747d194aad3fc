#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace egforge {

/// Arbitrary-precision integer backed by GMP. Values named Natural are
/// non-negative by contract; Integer is used where signs can appear
/// (Bezout cofactors, intermediate differences).
using Natural = mpz_class;
using Integer = mpz_class;

/// Parses a non-negative decimal integer. Rejects signs, whitespace and
/// empty input.
inline Natural parse_natural(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  for (char c : text) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("not a non-negative decimal integer: " + text);
  }
  return Natural(text, 10);
}

inline std::string to_decimal(const Natural& n) { return n.get_str(10); }

inline std::size_t bit_length(const Natural& n) {
  return n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

/// Canonical representative of a mod n in [0, n). Accepts negative a.
inline Natural mod_floor(const Integer& a, const Natural& n) {
  Natural r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline bool divides(const Natural& d, const Natural& n) {
  return d != 0 && mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Natural ceil_sqrt(const Natural& n) {
  Natural r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  if (r * r < n) ++r;
  return r;
}

}  // namespace egforge
