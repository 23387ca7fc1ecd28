#pragma once

#include <atomic>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covertorus/numeric.hpp"

namespace covertorus {

/// A formal basis direction of the cover V.
///
/// The kernel generator κ spans K = Zκ. Constant directions g<i> stand for
/// logarithms of multiplicatively independent algebraic numbers; generic
/// directions e<i> stand for logarithms of algebraically independent
/// transcendentals. Under this interpretation the pregeometry dimension of a
/// tuple is the rational rank of its generic parts.
struct Basis {
  enum class Kind : std::uint8_t { kKernel = 0, kConstant = 1, kGeneric = 2 };

  Kind kind = Kind::kKernel;
  std::uint32_t index = 0;

  static constexpr Basis kernel() { return {Kind::kKernel, 0}; }
  static constexpr Basis constant(std::uint32_t i) { return {Kind::kConstant, i}; }
  static constexpr Basis generic(std::uint32_t i) { return {Kind::kGeneric, i}; }

  bool is_kernel() const noexcept { return kind == Kind::kKernel; }
  bool is_constant() const noexcept { return kind == Kind::kConstant; }
  bool is_generic() const noexcept { return kind == Kind::kGeneric; }

  friend auto operator<=>(const Basis&, const Basis&) = default;
};

/// Element of V: a finitely supported rational vector. Zero coordinates are
/// never stored.
class CoverPoint {
 public:
  using Coords = std::map<Basis, Rational>;

  CoverPoint() = default;
  explicit CoverPoint(Coords coords);

  static CoverPoint kappa(const Rational& q = Rational(1));
  static CoverPoint generic(std::uint32_t i, const Rational& q = Rational(1));
  static CoverPoint constant(std::uint32_t i, const Rational& q = Rational(1));

  const Coords& coords() const noexcept { return coords_; }
  Rational coefficient(Basis b) const;
  Rational kernel_coefficient() const { return coefficient(Basis::kernel()); }

  bool is_zero() const noexcept { return coords_.empty(); }
  /// True when the support avoids every generic direction.
  bool is_constant() const;
  /// True when the support is contained in {κ}.
  bool is_torsion() const;

  CoverPoint generic_part() const;
  CoverPoint without_kernel() const;

  CoverPoint& operator+=(const CoverPoint& other);
  CoverPoint& operator-=(const CoverPoint& other);
  CoverPoint& operator*=(const Rational& q);
  void add_scaled(const CoverPoint& other, const Rational& q);

  friend CoverPoint operator+(CoverPoint a, const CoverPoint& b) { return a += b; }
  friend CoverPoint operator-(CoverPoint a, const CoverPoint& b) { return a -= b; }
  friend CoverPoint operator*(CoverPoint a, const Rational& q) { return a *= q; }
  friend CoverPoint operator*(const Rational& q, CoverPoint a) { return a *= q; }
  CoverPoint operator-() const;

  friend bool operator==(const CoverPoint&, const CoverPoint&) = default;
  friend bool operator<(const CoverPoint& a, const CoverPoint& b) {
    return a.coords_ < b.coords_;
  }

 private:
  Coords coords_;
};

using PointTuple = std::vector<CoverPoint>;

/// Element of F* = V / Zκ, kept as the representative whose κ-coordinate
/// lies in [0, 1).
class FieldPoint {
 public:
  FieldPoint() = default;
  explicit FieldPoint(const CoverPoint& v);

  static FieldPoint one() { return FieldPoint(); }

  const CoverPoint& rep() const noexcept { return rep_; }
  bool is_one() const noexcept { return rep_.is_zero(); }

  /// c^e, e an integer.
  FieldPoint pow(const Integer& e) const;
  FieldPoint inverse() const;

  friend bool operator==(const FieldPoint&, const FieldPoint&) = default;
  friend bool operator<(const FieldPoint& a, const FieldPoint& b) {
    return a.rep_ < b.rep_;
  }

 private:
  CoverPoint rep_;
};

using FieldTuple = std::vector<FieldPoint>;

FieldPoint exp_point(const CoverPoint& v);
FieldTuple exp_tuple(const PointTuple& v);
FieldPoint mul_field(const FieldPoint& c, const FieldPoint& d);

/// The m distinct x with x^m = c, ordered by torsion offset j = 0..m-1:
/// exp((rep c + jκ)/m).
std::vector<FieldPoint> field_roots(const FieldPoint& c, const Integer& m);

/// Multiplicative order when c is a root of unity.
std::optional<Integer> is_root_of_unity(const FieldPoint& c);

/// Declared constants and fresh generic directions.
///
/// Named constants other than g<i> get indices from kNamedConstantBase on,
/// in declaration order. Fresh generic indices are handed out monotonically
/// and the counter is atomic, so concurrent allocations never collide.
class BasisRegistry {
 public:
  static constexpr std::uint32_t kNamedConstantBase = 1u << 20;

  BasisRegistry() = default;
  BasisRegistry(const BasisRegistry& other);
  BasisRegistry& operator=(const BasisRegistry& other);

  /// Declares `name`; `g<i>` maps to constant i. Redeclaring returns the
  /// existing index.
  std::uint32_t declare_constant(const std::string& name);
  std::optional<std::uint32_t> find_constant(const std::string& name) const;
  /// Name used when printing constant direction i.
  std::string constant_name(std::uint32_t index) const;
  const std::map<std::string, std::uint32_t>& constants() const noexcept {
    return constants_;
  }

  /// Makes every later fresh index exceed the generic indices used by v.
  void observe(const CoverPoint& v);
  void observe(const PointTuple& t);
  void observe_generic(std::uint32_t index);

  std::uint32_t fresh_generic();
  std::uint32_t next_generic() const noexcept { return next_generic_.load(); }

 private:
  std::map<std::string, std::uint32_t> constants_;
  std::uint32_t next_named_ = kNamedConstantBase;
  std::atomic<std::uint32_t> next_generic_{1};
};

/// Point syntax: `1/2*k + e1 - 2/3*g1`; zero prints as `0`.
std::string to_string(const CoverPoint& v, const BasisRegistry* names = nullptr);
/// Constant-expression syntax: `u(1/2)*g1^2`; one prints as `u(0)`.
std::string to_string(const FieldPoint& c, const BasisRegistry* names = nullptr);
std::string to_string(const PointTuple& t, const BasisRegistry* names = nullptr);

}  // namespace covertorus
