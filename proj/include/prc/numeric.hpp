#pragma once

// Small exact-arithmetic helpers shared across modules.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace prc {

/// Parses "p/q" or "p" into a canonical rational. Rejects floats and
/// scientific notation so exact parameters stay exact.
mpq_class parse_rational(std::string_view text);

/// Parses a decimal integer string (optional leading '-').
mpz_class parse_integer(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string format_rational(const mpq_class& q);

inline std::string to_decimal(const mpz_class& z) { return z.get_str(10); }

/// Integer power with an arbitrary-size exponent that must fit in unsigned long.
mpz_class ipow(const mpz_class& base, unsigned long exp);

/// floor(x^(num/den)) for x >= 0, num >= 0, den >= 1, computed exactly.
mpz_class floor_rational_power(const mpz_class& x, unsigned long num, unsigned long den);

/// ceil(x^(num/den)) for x >= 0, computed exactly.
mpz_class ceil_rational_power(const mpz_class& x, unsigned long num, unsigned long den);

/// Approximate log2 of a positive integer (bit length).
inline unsigned long bit_length(const mpz_class& z) {
  return z == 0 ? 0UL : static_cast<unsigned long>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

/// Narrowing conversion that throws when the value does not fit.
unsigned long to_ulong(const mpz_class& z, const char* what);

/// Nearest-integer distance ||q|| of a rational.
mpq_class nearest_integer_distance(const mpq_class& q);

}  // namespace prc
