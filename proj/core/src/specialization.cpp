#include "covertorus/specialization.hpp"

#include "covertorus/error.hpp"
#include "covertorus/lattice.hpp"
#include "covertorus/pqf.hpp"

namespace covertorus {

namespace {

void require_same_length(const PointTuple& a, const PointTuple& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, "tuples of length " + std::to_string(a.size()) +
                                                " and " + std::to_string(b.size()));
  }
}

[[noreturn]] void precondition(const std::string& what) {
  throw Error(ErrorCode::kPreconditionViolated, what);
}

[[noreturn]] void witness_failed(const std::string& what) {
  throw Error(ErrorCode::kWitnessVerificationFailed, what);
}

// p + sum_i e_{fresh_i} K_i over the directions of l.
PointTuple generic_point(const LinearSet& l, BasisRegistry& reg) {
  PointTuple v = l.particular();
  IntMatrix dirs = l.directions();
  for (std::size_t i = 0; i < dirs.rows(); ++i) {
    CoverPoint e = CoverPoint::generic(reg.fresh_generic());
    for (std::size_t j = 0; j < v.size(); ++j) v[j].add_scaled(e, Rational(dirs(i, j)));
  }
  return v;
}

}  // namespace

PointTuple subtuple(const PointTuple& t, const std::vector<std::size_t>& idx) {
  PointTuple out;
  for (auto i : idx) {
    if (i >= t.size()) throw Error(ErrorCode::kInvalidArgument, "index out of range");
    out.push_back(t[i]);
  }
  return out;
}

PointTuple concat(const PointTuple& a, const PointTuple& b) {
  PointTuple out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

SpecCheck is_specialization(const PointTuple& a, const PointTuple& b) {
  require_same_length(a, b);
  SpecCheck out{a, b, locus(a).contains(b), std::nullopt};
  if (out.verdict) out.rank_drop = rank(a) - rank(b);
  return out;
}

bool independent(const PointTuple& a, const PointTuple& b, const PointTuple& over) {
  return rank(a, concat(over, b)) == rank(a, over);
}

bool same_qf_type(const PointTuple& a, const PointTuple& b) {
  require_same_length(a, b);
  auto la = locus(a);
  auto lb = locus(b);
  return la == lb && is_generic(a, la) && is_generic(b, lb);
}

PointTuple diagonal_step(const PointTuple& a, const PointTuple& a2, BasisRegistry& reg) {
  require_same_length(a, a2);
  if (a.size() < 2) precondition("tuples need at least two coordinates");
  if (a[0] == a[1]) precondition("the first two coordinates of the source coincide");
  if (a2[0] != a2[1]) precondition("the first two coordinates of the target differ");
  if (!is_specialization(a, a2).verdict) precondition("the target is not a specialization");
  reg.observe(a);
  reg.observe(a2);

  std::vector<Rational> diag(a.size(), Rational(0));
  diag[0] = 1;
  diag[1] = -1;
  LinearSet d = locus(a).linear().with({{diag, CoverPoint()}});
  PointTuple a1 = generic_point(d, reg);

  if (a1[0] != a1[1]) witness_failed("the witness is off the diagonal");
  auto first = is_specialization(a, a1);
  if (!first.verdict) witness_failed("the source does not specialize to the witness");
  if (!is_specialization(a1, a2).verdict) {
    witness_failed("the witness does not specialize to the target");
  }
  if (*first.rank_drop != 1) {
    witness_failed("rank drop " + std::to_string(*first.rank_drop) + " instead of 1");
  }
  return a1;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kFalse:
      return "false";
    case Verdict::kTrue:
      return "true";
    case Verdict::kUnknown:
      return "unknown";
  }
  return "unknown";
}

Verdict strongly_regular(const PointTuple& a, const PointTuple& a2, std::size_t depth) {
  auto spec = is_specialization(a, a2);
  if (!spec.verdict) {
    throw Error(ErrorCode::kNotSpecialization, "the target is not a specialization");
  }
  if (*spec.rank_drop == 0 && same_qf_type(a, a2)) return Verdict::kTrue;
  if (a.size() == 1 && rank(a) == 1) return Verdict::kTrue;
  const std::size_t n = a.size();
  if (n < 2) return Verdict::kFalse;
  if (depth == 0) return Verdict::kUnknown;
  bool unknown = false;
  // Bit i of mask puts coordinate i + 1 in the second block.
  const std::size_t splits = (std::size_t{1} << (n - 1)) - 1;
  for (std::size_t mask = 1; mask <= splits; ++mask) {
    std::vector<std::size_t> left{0}, right;
    for (std::size_t i = 1; i < n; ++i) ((mask >> (i - 1)) & 1 ? right : left).push_back(i);
    auto al = subtuple(a, left), ar = subtuple(a, right);
    if (!independent(al, ar)) continue;
    Verdict l = strongly_regular(al, subtuple(a2, left), depth - 1);
    if (l == Verdict::kFalse) continue;
    Verdict r = strongly_regular(ar, subtuple(a2, right), depth - 1);
    if (l == Verdict::kTrue && r == Verdict::kTrue) return Verdict::kTrue;
    if (r != Verdict::kFalse) unknown = true;
  }
  return unknown ? Verdict::kUnknown : Verdict::kFalse;
}

Verdict strongly_good(const PointTuple& a, const PointTuple& a2, std::size_t depth,
                      const GoodDecomposition* decomposition) {
  Verdict regular = strongly_regular(a, a2, depth);
  if (regular == Verdict::kTrue || decomposition == nullptr) return regular;
  const auto& d = *decomposition;
  std::vector<bool> seen(a.size(), false);
  for (const auto* part : {&d.first, &d.second, &d.third}) {
    for (auto i : *part) {
      if (i >= a.size() || seen[i]) {
        throw Error(ErrorCode::kInvalidArgument, "decomposition is not a partition");
      }
      seen[i] = true;
    }
  }
  for (bool s : seen) {
    if (!s) throw Error(ErrorCode::kInvalidArgument, "decomposition is not a partition");
  }
  std::vector<std::size_t> head = d.first;
  head.insert(head.end(), d.second.begin(), d.second.end());
  auto a1 = subtuple(a, d.first), a1p = subtuple(a2, d.first);
  // Rank drop 0 plus equal type is an isomorphism in the fragment.
  auto iso = is_specialization(a1, a1p);
  bool clause_ii = iso.verdict && *iso.rank_drop == 0 && same_qf_type(a1, a1p);
  bool clause_iii = rank(subtuple(a, d.third), a1) == 0;
  if (!clause_ii || !clause_iii) return regular;
  Verdict clause_i = strongly_good(subtuple(a, head), subtuple(a2, head), depth, d.inner.get());
  if (clause_i == Verdict::kTrue) return Verdict::kTrue;
  return regular == Verdict::kUnknown || clause_i == Verdict::kUnknown ? Verdict::kUnknown
                                                                        : Verdict::kFalse;
}

PointTuple amalgamate(const PointTuple& a, const PointTuple& a2, const PointTuple& b,
                      const PointTuple& b2, const PointTuple& c, const PointTuple& c2,
                      BasisRegistry& reg, const AmalgamateOptions& options) {
  require_same_length(a, a2);
  require_same_length(b, b2);
  require_same_length(c, c2);
  auto base = is_specialization(a, a2);
  if (!base.verdict) precondition("a does not specialize to a'");
  if (*base.rank_drop > 1) {
    precondition("rank drop " + std::to_string(*base.rank_drop) + " exceeds 1");
  }
  if (!is_specialization(concat(a, b), concat(a2, b2)).verdict) {
    precondition("ab does not specialize to a'b'");
  }
  if (!is_specialization(concat(a, c), concat(a2, c2)).verdict) {
    precondition("ac does not specialize to a'c'");
  }
  Verdict good = strongly_good(a, a2, options.depth, options.decomposition);
  if (good != Verdict::kTrue) {
    precondition("a -> a' is not known to be strongly good (verdict " +
                 std::string(verdict_name(good)) + ")");
  }
  for (const auto* t : {&a, &a2, &b, &b2, &c, &c2}) reg.observe(*t);

  // Fibre of locus(a, b) over a: substitute a into the constraints.
  const std::size_t n = a.size(), m = b.size();
  LinearSet joint = locus(concat(a, b)).linear();
  std::vector<LinearConstraint> fibre;
  for (const auto& row : joint.constraints()) {
    std::vector<Rational> qa(row.coeffs.begin(), row.coeffs.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<Rational> qb(row.coeffs.begin() + static_cast<std::ptrdiff_t>(n), row.coeffs.end());
    fibre.push_back({qb, row.rhs - apply_row(qa, a)});
  }
  PointTuple b_star = generic_point(LinearSet(m, fibre), reg);

  if (!same_qf_type(concat(a, b_star), concat(a, b))) witness_failed("type of ab* differs from ab");
  if (!independent(b_star, c, a)) witness_failed("b* is not independent from c over a");
  if (!is_specialization(concat(concat(a, b_star), c), concat(concat(a2, b2), c2)).verdict) {
    witness_failed("ab*c does not specialize to a'b'c'");
  }
  return b_star;
}

}  // namespace covertorus
