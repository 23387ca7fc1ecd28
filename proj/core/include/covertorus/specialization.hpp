#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "covertorus/cover.hpp"

namespace covertorus {

struct SpecCheck {
  PointTuple source;
  PointTuple target;
  bool verdict = false;
  /// rank(source) - rank(target); present iff verdict.
  std::optional<std::size_t> rank_drop;
};

/// target ∈ locus(source). Throws LengthMismatch.
SpecCheck is_specialization(const PointTuple& a, const PointTuple& b);

/// rank(a / over ∪ b) == rank(a / over).
bool independent(const PointTuple& a, const PointTuple& b, const PointTuple& over = {});

/// Equal loci, both tuples generic in them. Throws LengthMismatch.
bool same_qf_type(const PointTuple& a, const PointTuple& b);

/// Given a → a2 with a[0] != a[1] and a2[0] == a2[1], returns a generic
/// point a1 of locus(a) ∩ {v_0 = v_1} built from fresh directions, with
/// a → a1 → a2 and rank(a) - rank(a1) == 1. Throws PreconditionViolated,
/// or WitnessVerificationFailed if a post-check fails.
PointTuple diagonal_step(const PointTuple& a, const PointTuple& a2, BasisRegistry& reg);

enum class Verdict { kFalse, kTrue, kUnknown };
std::string_view verdict_name(Verdict v);

/// Bounded search over the isomorphism, generic-singleton and independent
/// split clauses. Splits range over bipartitions of the coordinates whose
/// first block holds coordinate 0. Throws NotSpecialization.
Verdict strongly_regular(const PointTuple& a, const PointTuple& a2, std::size_t depth);

/// Coordinates of a split into a_1, a_2, a_3 for the recursive clause:
/// (a_1, a_2) → (a_1', a_2') strongly good, a_1 → a_1' an isomorphism,
/// a_3 ∈ cl(a_1). `inner` certifies the first condition when it is not
/// strongly regular.
struct GoodDecomposition {
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
  std::vector<std::size_t> third;
  std::shared_ptr<const GoodDecomposition> inner;
};

/// Strongly regular within the depth, or certified by the decomposition.
/// kUnknown when neither settles it.
Verdict strongly_good(const PointTuple& a, const PointTuple& a2, std::size_t depth,
                      const GoodDecomposition* decomposition = nullptr);

struct AmalgamateOptions {
  std::size_t depth = 4;
  const GoodDecomposition* decomposition = nullptr;
};

/// b* generic in the fibre of locus(a, b) over a, built from fresh
/// directions. Before returning, checks that (a, b*) and (a, b) have the
/// same type, that b* is independent from c over a, and that
/// (a, b*, c) → (a2, b2, c2).
///
/// Throws PreconditionViolated unless a → a2 is strongly good with rank
/// drop at most 1 and ab → a2b2, ac → a2c2; WitnessVerificationFailed
/// names the failing check otherwise.
PointTuple amalgamate(const PointTuple& a, const PointTuple& a2, const PointTuple& b,
                      const PointTuple& b2, const PointTuple& c, const PointTuple& c2,
                      BasisRegistry& reg, const AmalgamateOptions& options = {});

/// Entries of t at the given positions.
PointTuple subtuple(const PointTuple& t, const std::vector<std::size_t>& idx);
PointTuple concat(const PointTuple& a, const PointTuple& b);

}  // namespace covertorus
