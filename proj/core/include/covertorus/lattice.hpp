#pragma once

#include <optional>
#include <span>
#include <vector>

#include "covertorus/cover.hpp"
#include "covertorus/matrix.hpp"

namespace covertorus {

/// Row Hermite normal form: u * m == h, u unimodular.
///
/// h is upper echelon with the nonzero rows on top; each pivot is positive
/// and the entries above a pivot lie in [0, pivot). The form is unique for
/// the row lattice of m.
struct HnfResult {
  IntMatrix h;
  IntMatrix u;
  std::size_t rank = 0;
};
HnfResult hnf(const IntMatrix& m);

/// u * m * v == d with d diagonal, d_1 | d_2 | ... and d_i >= 0.
struct SnfResult {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;

  /// The nonzero diagonal entries (elementary divisors).
  std::vector<Integer> divisors() const;
};
SnfResult snf(const IntMatrix& m);

/// Square matrix whose first row is `row` and whose determinant is 1
/// (the 1x1 case with row (-1) has determinant -1). Rows below the first
/// are reduced so their entry in the first nonzero column of `row` lies in
/// [0, |pivot|). Throws Error(kNonPrimitive) unless gcd(row) == 1.
IntMatrix complete_unimodular(std::span<const Integer> row);

/// Exact determinant by fraction-free elimination.
Integer determinant(const IntMatrix& m);

bool is_unimodular(const IntMatrix& m);

/// Inverse of a unimodular matrix (also integral).
IntMatrix inverse_unimodular(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);
std::size_t rank(const RatMatrix& m);

/// Multiplies each row by the lcm of its denominators and divides by the
/// content, giving a primitive integer row (zero rows stay zero).
IntMatrix clear_denominators(const RatMatrix& m);

/// HNF basis of ker(a) ∩ Z^n, which is also a rational basis of ker(a).
IntMatrix integer_kernel(const RatMatrix& a);
IntMatrix integer_kernel(const IntMatrix& a);

/// Solution of a * x = b with x a column of cover points.
struct LinearSolution {
  PointTuple particular;
  IntMatrix kernel;  ///< rows span the rational kernel (HNF-reduced)
};
std::optional<LinearSolution> linear_solve(const RatMatrix& a,
                                           std::span<const CoverPoint> b);

/// Reduced row echelon form over Q with a cover-point right-hand side,
/// applied in place. Returns the pivot columns. Zero rows are kept at the
/// bottom; a zero row with nonzero rhs marks an inconsistent system.
std::vector<std::size_t> rref(RatMatrix& a, std::vector<CoverPoint>& rhs);
std::vector<std::size_t> rref(RatMatrix& a);

struct SaturationResult {
  IntMatrix basis;  ///< HNF basis of the saturation
  Integer index;    ///< [saturation : lattice], the product of the divisors
};
SaturationResult saturate(const IntMatrix& rows);

}  // namespace covertorus
