#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "covertorus/cover.hpp"
#include "covertorus/linear_set.hpp"
#include "covertorus/torus.hpp"

namespace covertorus {

/// A nonempty single affine translate; the irreducible closed sets of the
/// fragment.
class IrreducibleSet {
 public:
  /// Throws EmptySet when `l` is empty.
  explicit IrreducibleSet(LinearSet l);

  const LinearSet& linear() const noexcept { return l_; }
  std::size_t arity() const noexcept { return l_.arity(); }
  std::size_t dimension() const noexcept { return l_.dimension(); }
  bool contains(const PointTuple& v) const { return l_.contains(v); }

  friend bool operator==(const IrreducibleSet&, const IrreducibleSet&) = default;

 private:
  LinearSet l_;
};

/// m * (L ∩ log T).
struct Cell {
  Integer m = 1;
  LinearSet linear;
  TorusPresentation torus;

  /// Throws ArityMismatch unless L and T have the same arity, and
  /// InvalidArgument unless m >= 1.
  Cell(Integer m, LinearSet linear, TorusPresentation torus);
  std::size_t arity() const noexcept { return linear.arity(); }
  bool contains(const PointTuple& x) const;

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Finite union of cells.
class PQFSet {
 public:
  explicit PQFSet(std::size_t n, std::vector<Cell> cells = {});

  std::size_t arity() const noexcept { return n_; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  void add(Cell c);

  friend bool operator==(const PQFSet&, const PQFSet&) = default;

 private:
  std::size_t n_;
  std::vector<Cell> cells_;
};

/// Throws ArityMismatch on a length mismatch.
bool member(const PointTuple& x, const PQFSet& s);

/// Translates {h_i . v = rep c_i + o_i κ} over the saturated HNF rows h_i of
/// an irreducible T, for offsets o in [-bound, bound]^k in lexicographic
/// order. Distinct offsets give disjoint translates.
std::vector<IrreducibleSet> log_components(const TorusPresentation& t, std::int64_t bound);

/// Maximal affine pieces of m (L ∩ log T) found with kernel offsets in
/// [-bound, bound], in enumeration order.
std::vector<IrreducibleSet> cell_components(const Cell& c, std::int64_t bound);
std::vector<IrreducibleSet> set_components(const PQFSet& s, std::int64_t bound);

/// Cut out by every rational relation of a whose value lies in the
/// constant subspace.
IrreducibleSet locus(const PointTuple& a);

/// Rational rank of the generic parts of a ∪ over, minus that of over.
std::size_t rank(const PointTuple& a, const PointTuple& over = {});

std::size_t dim_set(const IrreducibleSet& s);
std::size_t dim_set(const TorusPresentation& t);
/// Max over components within the bound; throws EmptyWithinBound.
std::size_t dim_set(const PQFSet& s, std::int64_t bound);

/// rank(a over the parameters of S) == dim S. Throws NotMember.
bool is_generic(const PointTuple& a, const IrreducibleSet& s);

/// Image under x -> (x_{sigma(0)}, ..., x_{sigma(n-1)}). Throws
/// InvalidArgument unless sigma is a permutation of the arity.
PQFSet permute(const PQFSet& s, const std::vector<std::size_t>& sigma);
IrreducibleSet permute(const IrreducibleSet& s, const std::vector<std::size_t>& sigma);
TorusPresentation permute(const TorusPresentation& t, const std::vector<std::size_t>& sigma);
PointTuple permute(const PointTuple& a, const std::vector<std::size_t>& sigma);

/// Base point p followed by p + e_{first+i} K_i for each direction K_i.
std::vector<PointTuple> spanning_sample(const IrreducibleSet& s, std::uint32_t first_generic);

/// Some k in (Zκ)^n, coordinates within the bound, with C ⊆ L + k.
std::optional<PointTuple> containing_translate(const IrreducibleSet& c, const LinearSet& l,
                                               std::int64_t bound);

}  // namespace covertorus
