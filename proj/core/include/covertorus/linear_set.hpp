#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "covertorus/cover.hpp"
#include "covertorus/matrix.hpp"

namespace covertorus {

/// One constraint sum_i q_i v_i = rhs.
struct LinearConstraint {
  std::vector<Rational> coeffs;
  CoverPoint rhs;

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

/// Affine subspace {v in V^n : Q v = b} of V^n.
///
/// Stored in reduced row echelon form, so two nonempty sets are equal iff
/// their stored constraints are equal. An inconsistent system is kept as the
/// canonical empty set.
class LinearSet {
 public:
  /// The whole of V^n.
  explicit LinearSet(std::size_t n = 0);
  LinearSet(std::size_t n, const std::vector<LinearConstraint>& constraints);
  LinearSet(const RatMatrix& q, const std::vector<CoverPoint>& rhs);

  std::size_t arity() const noexcept { return n_; }
  bool empty() const noexcept { return empty_; }
  /// n minus the constraint rank; undefined for the empty set.
  std::size_t dimension() const noexcept { return n_ - q_.rows(); }

  const RatMatrix& coefficients() const noexcept { return q_; }
  const std::vector<CoverPoint>& rhs() const noexcept { return rhs_; }
  std::vector<LinearConstraint> constraints() const;

  bool contains(const PointTuple& v) const;
  /// Every constraint right-hand side avoids generic directions.
  bool is_constant_defined() const;

  /// Point with free coordinates set to zero. Requires nonempty.
  PointTuple particular() const;
  /// HNF integer basis of the direction space.
  IntMatrix directions() const;

  LinearSet intersect(const LinearSet& other) const;
  bool is_subset_of(const LinearSet& other) const;
  /// {m v : v in L}
  LinearSet scaled(const Rational& m) const;
  /// {v + t : v in L}
  LinearSet translated(const PointTuple& t) const;
  /// Image under v -> (v_{sigma(0)}, ..., v_{sigma(n-1)}).
  LinearSet permuted(const std::vector<std::size_t>& sigma) const;
  /// Adds constraints; the result is normalized again.
  LinearSet with(const std::vector<LinearConstraint>& extra) const;

  friend bool operator==(const LinearSet& a, const LinearSet& b);

 private:
  void normalize();

  std::size_t n_ = 0;
  RatMatrix q_;
  std::vector<CoverPoint> rhs_;
  bool empty_ = false;
};

/// sum_i q_i v_i
CoverPoint apply_row(std::span<const Rational> q, const PointTuple& v);
CoverPoint apply_row(std::span<const Integer> z, const PointTuple& v);

}  // namespace covertorus
