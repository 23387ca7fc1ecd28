#pragma once

#include <ostream>
#include <random>

#include "covertorus/cover.hpp"
#include "covertorus/lattice.hpp"
#include "covertorus/torus.hpp"

namespace covertorus::testing {

inline Rational small_rational(std::mt19937_64& rng, int num = 6, int den = 4) {
  std::uniform_int_distribution<int> a(-num, num), b(1, den);
  return make_rational(a(rng), b(rng));
}

/// Point over κ and the constants g1, g2.
inline CoverPoint constant_point(std::mt19937_64& rng) {
  CoverPoint v = CoverPoint::kappa(small_rational(rng));
  if (rng() % 2) v += CoverPoint::constant(1, small_rational(rng));
  if (rng() % 3 == 0) v += CoverPoint::constant(2, small_rational(rng));
  return v;
}

/// Consistent torus: random exponents, constants taken at a constant base
/// point, rows occasionally scaled so reducible cases show up.
inline TorusPresentation random_torus_once(std::mt19937_64& rng, std::size_t max_n,
                                           int max_exp) {
  std::size_t n = 1 + rng() % max_n;
  std::size_t rows = rng() % (n + 1);
  std::uniform_int_distribution<int> e(-max_exp, max_exp);
  PointTuple base(n);
  for (auto& p : base) p = constant_point(rng);
  TorusPresentation t(n);
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<Integer> z(n);
    for (auto& x : z) x = e(rng);
    if (rng() % 4 == 0) for (auto& x : z) x *= 2;
    CoverPoint v;
    for (std::size_t j = 0; j < n; ++j) v.add_scaled(base[j], Rational(z[j]));
    t.add_row(z, exp_point(v));
  }
  return t;
}

/// As above, redrawn until the component count is at most `max_components`.
inline TorusPresentation random_torus(std::mt19937_64& rng, std::size_t max_n = 4,
                                      int max_exp = 6, int max_components = 48) {
  for (;;) {
    auto t = random_torus_once(rng, max_n, max_exp);
    if (saturate(t.exponent_matrix()).index <= max_components) return t;
  }
}

/// Generic point of a random component; fresh generics start at `first`.
inline PointTuple sample_log_point(std::mt19937_64& rng, const TorusPresentation& t,
                                   std::uint32_t first = 100) {
  auto comps = components(t);
  std::size_t c = rng() % comps.size();
  std::vector<CoverPoint> coeffs;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    CoverPoint x = CoverPoint::generic(first + static_cast<std::uint32_t>(i), small_rational(rng));
    if (rng() % 3 == 0) x = CoverPoint::kappa(small_rational(rng));
    coeffs.push_back(x);
  }
  auto v = torus_log_point(t, c, coeffs);
  // Shifting by integer κ offsets does not change the field point.
  for (auto& x : v) x += CoverPoint::kappa(Rational(static_cast<int>(rng() % 5) - 2));
  return v;
}

}  // namespace covertorus::testing

namespace covertorus {

inline void PrintTo(const FieldPoint& c, std::ostream* os) { *os << to_string(c); }
inline void PrintTo(const CoverPoint& v, std::ostream* os) { *os << to_string(v); }
inline void PrintTo(const TorusPresentation& t, std::ostream* os) {
  *os << "torus n=" << t.arity();
  for (const auto& r : t.rows()) {
    *os << " [";
    for (const auto& e : r.exponents) *os << e.get_str() << " ";
    *os << "= " << to_string(r.value) << "]";
  }
}

}  // namespace covertorus
