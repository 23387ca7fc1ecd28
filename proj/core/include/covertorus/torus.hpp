#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "covertorus/cover.hpp"
#include "covertorus/linear_set.hpp"
#include "covertorus/matrix.hpp"

namespace covertorus {

/// One monomial equation prod_j x_j^{z_j} = c.
struct TorusRow {
  std::vector<Integer> exponents;
  FieldPoint value;

  friend bool operator==(const TorusRow&, const TorusRow&) = default;
};

/// Subset of (F*)^n cut out by monomial equations. No rows means the full
/// torus.
class TorusPresentation {
 public:
  explicit TorusPresentation(std::size_t n = 1, std::vector<TorusRow> rows = {});

  std::size_t arity() const noexcept { return n_; }
  const std::vector<TorusRow>& rows() const noexcept { return rows_; }
  void add_row(std::vector<Integer> exponents, FieldPoint value);

  IntMatrix exponent_matrix() const;

  /// Membership oracle: every row evaluates to its constant on x.
  bool contains(const FieldTuple& x) const;
  bool contains_log(const PointTuple& v) const { return contains(exp_tuple(v)); }

  friend bool operator==(const TorusPresentation&, const TorusPresentation&) = default;

 private:
  std::size_t n_;
  std::vector<TorusRow> rows_;
};

/// Unique description of the solution set: the HNF basis of the row
/// lattice with the value forced on each basis row. All inconsistent
/// presentations of a given arity compare equal.
struct TorusNormalForm {
  std::size_t n = 1;
  IntMatrix lattice;
  std::vector<FieldPoint> values;
  bool consistent = true;

  /// The HNF rows as a presentation. An inconsistent form is presented by
  /// the zero row with value u(1/2).
  TorusPresentation presentation() const;

  friend bool operator==(const TorusNormalForm& a, const TorusNormalForm& b);
};

TorusNormalForm normal_form(const TorusPresentation& t);
bool same_set(const TorusPresentation& a, const TorusPresentation& b);

/// In coordinates y = x^U (y_i = prod_j x_j^{U_ij}) the branch is
/// {y_i = constants[i] : i < k}.
struct CanonicalBranch {
  IntMatrix u;
  std::vector<FieldPoint> constants;

  /// The branch in x coordinates: the first k rows of U with the constants.
  TorusPresentation pulled_back() const;
  bool contains(const FieldTuple& x) const;

  friend bool operator==(const CanonicalBranch&, const CanonicalBranch&) = default;
};

/// Row-by-row elimination. Each row is rewritten in the current y
/// coordinates, the fixed coordinates are substituted, and a nonzero
/// remainder w' = d p (p primitive) becomes the new coordinate y = x^p with
/// one branch per d-th root, offsets ascending. Throws EmptyTorus when T is
/// inconsistent.
std::vector<CanonicalBranch> canonical_form(const TorusPresentation& t);

/// Row lattice saturated. Throws EmptyTorus when T is inconsistent.
bool is_irreducible(const TorusPresentation& t);

/// Irreducible components in normal form, as many as the saturation index.
std::vector<TorusPresentation> components(const TorusPresentation& t);

/// Throws ArityMismatch when the arities differ.
TorusPresentation intersect(const TorusPresentation& a, const TorusPresentation& b);

/// The m^k m-th roots of an irreducible T with k independent rows,
/// ordered lexicographically by the torsion offsets.
std::vector<TorusPresentation> mth_roots(const TorusPresentation& t, const Integer& m);

/// {x^m : x in T} for irreducible T.
TorusPresentation power(const TorusPresentation& t, const Integer& m);

/// L with exp(L) = T for irreducible T; κ offsets are zero.
LinearSet linear_of_torus(const TorusPresentation& t);

/// exp(L) in normal form. Throws EmptySet when L is empty.
TorusPresentation torus_of_linear(const LinearSet& l);

/// Smallest torus defined over constants containing every point.
TorusPresentation minimal_torus(const std::vector<FieldTuple>& points);

/// n minus the rank of the exponent rows. Throws EmptyTorus when
/// inconsistent.
std::size_t torus_dimension(const TorusPresentation& t);

/// log point p + sum_i coeffs[i] K_i of component `component`, where p is
/// the base point and K the direction basis of its linear set. Missing
/// coefficients are zero.
PointTuple torus_log_point(const TorusPresentation& t, std::size_t component,
                           std::span<const CoverPoint> coeffs);

}  // namespace covertorus
