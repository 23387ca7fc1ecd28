#include "covertorus/linear_set.hpp"

#include <stdexcept>

#include "covertorus/error.hpp"
#include "covertorus/lattice.hpp"

namespace covertorus {

CoverPoint apply_row(std::span<const Rational> q, const PointTuple& v) {
  if (q.size() != v.size()) {
    throw Error(ErrorCode::kArityMismatch, "row length " + std::to_string(q.size()) +
                                               " vs tuple length " +
                                               std::to_string(v.size()));
  }
  CoverPoint out;
  for (std::size_t i = 0; i < q.size(); ++i) out.add_scaled(v[i], q[i]);
  return out;
}

CoverPoint apply_row(std::span<const Integer> z, const PointTuple& v) {
  if (z.size() != v.size()) {
    throw Error(ErrorCode::kArityMismatch, "row length " + std::to_string(z.size()) +
                                               " vs tuple length " +
                                               std::to_string(v.size()));
  }
  CoverPoint out;
  for (std::size_t i = 0; i < z.size(); ++i) out.add_scaled(v[i], Rational(z[i]));
  return out;
}

LinearSet::LinearSet(std::size_t n) : n_(n), q_(0, n) {}

LinearSet::LinearSet(std::size_t n, const std::vector<LinearConstraint>& constraints)
    : n_(n), q_(0, n) {
  for (const auto& c : constraints) {
    if (c.coeffs.size() != n) {
      throw Error(ErrorCode::kArityMismatch,
                  "constraint of length " + std::to_string(c.coeffs.size()) +
                      " in a linear set of arity " + std::to_string(n));
    }
    q_.append_row(c.coeffs);
    rhs_.push_back(c.rhs);
  }
  normalize();
}

LinearSet::LinearSet(const RatMatrix& q, const std::vector<CoverPoint>& rhs)
    : n_(q.cols()), q_(q), rhs_(rhs) {
  if (rhs.size() != q.rows()) {
    throw std::invalid_argument("LinearSet: rhs length does not match rows");
  }
  normalize();
}

void LinearSet::normalize() {
  if (q_.rows() == 0) {
    empty_ = false;
    return;
  }
  auto pivots = rref(q_, rhs_);
  empty_ = false;
  for (std::size_t i = pivots.size(); i < rhs_.size(); ++i) {
    if (!rhs_[i].is_zero()) empty_ = true;
  }
  if (empty_) {
    // Canonical empty set: the single constraint 0 = κ.
    q_ = RatMatrix(1, n_);
    rhs_ = {CoverPoint::kappa()};
    return;
  }
  q_ = q_.row_block(0, pivots.size());
  rhs_.resize(pivots.size());
}

std::vector<LinearConstraint> LinearSet::constraints() const {
  std::vector<LinearConstraint> out;
  for (std::size_t i = 0; i < q_.rows(); ++i) {
    out.push_back({q_.row_vector(i), rhs_[i]});
  }
  return out;
}

bool LinearSet::contains(const PointTuple& v) const {
  if (v.size() != n_) {
    throw Error(ErrorCode::kArityMismatch, "point of length " + std::to_string(v.size()) +
                                               " vs linear set of arity " +
                                               std::to_string(n_));
  }
  if (empty_) return false;
  for (std::size_t i = 0; i < q_.rows(); ++i) {
    if (apply_row(q_.row(i), v) != rhs_[i]) return false;
  }
  return true;
}

bool LinearSet::is_constant_defined() const {
  for (const auto& r : rhs_) {
    if (!r.is_constant()) return false;
  }
  return true;
}

PointTuple LinearSet::particular() const {
  if (empty_) throw Error(ErrorCode::kEmptySet, "empty linear set has no points");
  auto sol = linear_solve(q_, rhs_);
  return sol->particular;
}

IntMatrix LinearSet::directions() const { return integer_kernel(q_); }

LinearSet LinearSet::intersect(const LinearSet& other) const {
  if (other.n_ != n_) {
    throw Error(ErrorCode::kArityMismatch, "intersecting linear sets of arity " +
                                               std::to_string(n_) + " and " +
                                               std::to_string(other.n_));
  }
  if (empty_) return *this;
  if (other.empty_) return other;
  return with(other.constraints());
}

bool LinearSet::is_subset_of(const LinearSet& other) const {
  if (other.n_ != n_) return false;
  if (empty_) return true;
  if (other.empty_) return false;
  return intersect(other) == *this;
}

LinearSet LinearSet::scaled(const Rational& m) const {
  if (empty_ || m == 0) {
    if (m == 0 && !empty_) {
      std::vector<LinearConstraint> zero;
      for (std::size_t i = 0; i < n_; ++i) {
        std::vector<Rational> e(n_, Rational(0));
        e[i] = 1;
        zero.push_back({e, CoverPoint()});
      }
      return LinearSet(n_, zero);
    }
    return *this;
  }
  LinearSet out = *this;
  for (auto& r : out.rhs_) r *= m;
  return out;
}

LinearSet LinearSet::translated(const PointTuple& t) const {
  if (t.size() != n_) {
    throw Error(ErrorCode::kArityMismatch, "translation of the wrong length");
  }
  if (empty_) return *this;
  LinearSet out = *this;
  for (std::size_t i = 0; i < q_.rows(); ++i) out.rhs_[i] += apply_row(q_.row(i), t);
  return out;
}

LinearSet LinearSet::permuted(const std::vector<std::size_t>& sigma) const {
  if (sigma.size() != n_) {
    throw Error(ErrorCode::kArityMismatch, "permutation of the wrong length");
  }
  if (empty_) return *this;
  // y_i = v_{sigma(i)}, so q.v = sum_i q_{sigma(i)} y_i.
  RatMatrix q(q_.rows(), n_);
  for (std::size_t r = 0; r < q_.rows(); ++r) {
    for (std::size_t i = 0; i < n_; ++i) q(r, i) = q_(r, sigma[i]);
  }
  return LinearSet(q, rhs_);
}

LinearSet LinearSet::with(const std::vector<LinearConstraint>& extra) const {
  if (empty_) return *this;
  auto all = constraints();
  all.insert(all.end(), extra.begin(), extra.end());
  return LinearSet(n_, all);
}

bool operator==(const LinearSet& a, const LinearSet& b) {
  if (a.n_ != b.n_ || a.empty_ != b.empty_) return false;
  if (a.empty_) return true;
  return a.q_ == b.q_ && a.rhs_ == b.rhs_;
}

}  // namespace covertorus
