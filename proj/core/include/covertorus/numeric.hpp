#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace covertorus {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms. den must be nonzero.
Rational make_rational(const Integer& num, const Integer& den);

Integer floor(const Rational& q);

/// q - floor(q), always in [0, 1).
Rational fractional_part(const Rational& q);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// gcd of all entries; zero for an empty or all-zero span.
Integer content(std::span<const Integer> values);

/// g = gcd(a, b) = s*a + t*b with g >= 0.
struct ExtendedGcd {
  Integer g;
  Integer s;
  Integer t;
};
ExtendedGcd extended_gcd(const Integer& a, const Integer& b);

/// Least common multiple of the denominators.
Integer common_denominator(std::span<const Rational> values);

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

/// Narrowing for small quantities (counts, exponents in loops). Throws
/// std::overflow_error when the value does not fit.
std::int64_t to_int64(const Integer& value);

}  // namespace covertorus
