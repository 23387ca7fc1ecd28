#include "covertorus/numeric.hpp"

#include <stdexcept>

namespace covertorus {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer floor(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Rational fractional_part(const Rational& q) { return q - Rational(floor(q)); }

Integer gcd(const Integer& a, const Integer& b) {
  Integer out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Integer content(std::span<const Integer> values) {
  Integer g = 0;
  for (const auto& v : values) {
    g = gcd(g, v);
  }
  return g;
}

ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  ExtendedGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

Integer common_denominator(std::span<const Rational> values) {
  Integer d = 1;
  for (const auto& v : values) {
    d = lcm(d, v.get_den());
  }
  return d;
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) { return value.get_str(); }

std::int64_t to_int64(const Integer& value) {
  if (!value.fits_slong_p()) {
    throw std::overflow_error("integer does not fit in 64 bits: " +
                              value.get_str());
  }
  return value.get_si();
}

}  // namespace covertorus
