#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace gconv {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", "p", or a finite decimal such as "-1.25". Result is canonical.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
Rational abs(const Rational& q);

/// Least nonnegative residue of a modulo m (m > 0).
Integer mod(const Integer& a, const Integer& m);
std::optional<Integer> mod_inverse(const Integer& a, const Integer& m);

/// True when every prime factor of the denominator divides base.
bool denominator_is_base_power(const Rational& q, const Integer& base);

/// Smallest e >= 0 with q * base^e integral, if any.
std::optional<unsigned> base_exponent(const Rational& q, const Integer& base);

/// (numerator, exponent) with q = numerator / base^exponent and numerator not
/// divisible by base unless exponent == 0. Requires denominator_is_base_power.
std::pair<Integer, unsigned> nadic_parts(const Rational& q, const Integer& base);

/// Upper bound u >= q^(1/m) with u - q^(1/m) <= 2^-precision_bits (q >= 0, m >= 1).
Rational root_upper_bound(const Rational& q, unsigned m, unsigned precision_bits = 32);

/// Integer power with exponent >= 0.
Rational pow(const Rational& q, unsigned e);
Integer pow(const Integer& z, unsigned e);

}  // namespace gconv
