#include "covertorus/pqf.hpp"

#include <algorithm>
#include <map>

#include "covertorus/error.hpp"
#include "covertorus/lattice.hpp"

namespace covertorus {

namespace {

void require_arity(std::size_t got, std::size_t want) {
  if (got != want) {
    throw Error(ErrorCode::kArityMismatch,
                "arity " + std::to_string(got) + " where " + std::to_string(want) + " is expected");
  }
}

void require_permutation(const std::vector<std::size_t>& sigma, std::size_t n) {
  std::vector<bool> seen(n, false);
  bool ok = sigma.size() == n;
  for (std::size_t i = 0; ok && i < sigma.size(); ++i) {
    ok = sigma[i] < n && !seen[sigma[i]];
    if (ok) seen[sigma[i]] = true;
  }
  if (!ok) throw Error(ErrorCode::kInvalidArgument, "not a permutation of the coordinates");
}

// Calls f(o) for o in [-bound, bound]^k, lexicographically.
template <class F>
void for_each_offset(std::size_t k, std::int64_t bound, F&& f) {
  std::vector<std::int64_t> o(k, -bound);
  for (;;) {
    f(o);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++o[i] <= bound) break;
      o[i] = -bound;
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

// Rows indexed by generic direction, columns by tuple entries.
RatMatrix generic_matrix(const PointTuple& a) {
  std::map<Basis, std::vector<Rational>> rows;
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (const auto& [b, q] : a[j].coords()) {
      if (!b.is_generic()) continue;
      auto [it, _] = rows.try_emplace(b, std::vector<Rational>(a.size(), Rational(0)));
      it->second[j] = q;
    }
  }
  RatMatrix m(0, a.size());
  for (const auto& [b, row] : rows) m.append_row(row);
  return m;
}

}  // namespace

IrreducibleSet::IrreducibleSet(LinearSet l) : l_(std::move(l)) {
  if (l_.empty()) throw Error(ErrorCode::kEmptySet, "an irreducible set must be nonempty");
}

Cell::Cell(Integer m_, LinearSet linear_, TorusPresentation torus_)
    : m(std::move(m_)), linear(std::move(linear_)), torus(std::move(torus_)) {
  require_arity(torus.arity(), linear.arity());
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "cell scale must be positive");
}

bool Cell::contains(const PointTuple& x) const {
  require_arity(x.size(), arity());
  PointTuple y = x;
  const Rational inv = make_rational(1, m);
  for (auto& v : y) v *= inv;
  return linear.contains(y) && torus.contains_log(y);
}

PQFSet::PQFSet(std::size_t n, std::vector<Cell> cells) : n_(n), cells_(std::move(cells)) {
  for (const auto& c : cells_) require_arity(c.arity(), n_);
}

void PQFSet::add(Cell c) {
  require_arity(c.arity(), n_);
  cells_.push_back(std::move(c));
}

bool member(const PointTuple& x, const PQFSet& s) {
  require_arity(x.size(), s.arity());
  return std::any_of(s.cells().begin(), s.cells().end(),
                     [&](const Cell& c) { return c.contains(x); });
}

std::vector<IrreducibleSet> log_components(const TorusPresentation& t, std::int64_t bound) {
  if (!is_irreducible(t)) throw Error(ErrorCode::kReducible, "the torus is reducible");
  if (bound < 0) throw Error(ErrorCode::kInvalidArgument, "bound must be non-negative");
  auto nf = normal_form(t);
  const std::size_t k = nf.lattice.rows();
  std::vector<IrreducibleSet> out;
  for_each_offset(k, bound, [&](const std::vector<std::int64_t>& o) {
    std::vector<LinearConstraint> cs;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Rational> q;
      for (const auto& z : nf.lattice.row(i)) q.emplace_back(z);
      cs.push_back({std::move(q), nf.values[i].rep() + CoverPoint::kappa(Rational(o[i]))});
    }
    out.emplace_back(LinearSet(t.arity(), cs));
  });
  return out;
}

std::vector<IrreducibleSet> cell_components(const Cell& c, std::int64_t bound) {
  // Pieces from distinct torus components or offsets are disjoint, so
  // nothing here is contained in anything else.
  std::vector<IrreducibleSet> out;
  if (c.linear.empty() || !normal_form(c.torus).consistent) return out;
  if (bound < 0) throw Error(ErrorCode::kInvalidArgument, "bound must be non-negative");
  const std::size_t n = c.linear.arity();
  const RatMatrix& q = c.linear.coefficients();
  const auto& b = c.linear.rhs();
  for (const auto& comp : components(c.torus)) {
    auto nf = normal_form(comp);
    const std::size_t r = q.rows(), k = nf.lattice.rows();
    // A left kernel vector y of [Q; Z] turns Q v = b, Z v = c + o k into
    // y_Q b + y_Z c + (y_Z . o) k = 0, which prunes the offsets o.
    RatMatrix stacked(0, n);
    for (std::size_t i = 0; i < r; ++i) stacked.append_row(q.row_vector(i));
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Rational> z;
      for (const auto& x : nf.lattice.row(i)) z.emplace_back(x);
      stacked.append_row(z);
    }
    std::vector<std::pair<std::vector<Integer>, Rational>> conditions;
    bool possible = true;
    if (r + k > 0) {
      IntMatrix left = integer_kernel(stacked.transpose());
      for (std::size_t i = 0; possible && i < left.rows(); ++i) {
        CoverPoint s;
        for (std::size_t j = 0; j < r; ++j) s.add_scaled(b[j], Rational(left(i, j)));
        for (std::size_t j = 0; j < k; ++j) s.add_scaled(nf.values[j].rep(), Rational(left(i, r + j)));
        const Rational kc = s.kernel_coefficient();
        if (s != CoverPoint::kappa(kc)) possible = false;
        std::vector<Integer> yz(k);
        for (std::size_t j = 0; j < k; ++j) yz[j] = left(i, r + j);
        conditions.emplace_back(std::move(yz), -kc);
      }
    }
    if (!possible) continue;
    for_each_offset(k, bound, [&](const std::vector<std::int64_t>& o) {
      for (const auto& [yz, want] : conditions) {
        Integer dot = 0;
        for (std::size_t j = 0; j < k; ++j) dot += yz[j] * o[j];
        if (Rational(dot) != want) return;
      }
      std::vector<LinearConstraint> cs = c.linear.constraints();
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<Rational> z;
        for (const auto& x : nf.lattice.row(i)) z.emplace_back(x);
        cs.push_back({std::move(z), nf.values[i].rep() + CoverPoint::kappa(Rational(o[i]))});
      }
      LinearSet piece(n, cs);
      if (!piece.empty()) out.emplace_back(piece.scaled(Rational(c.m)));
    });
  }
  return out;
}

std::vector<IrreducibleSet> set_components(const PQFSet& s, std::int64_t bound) {
  std::vector<IrreducibleSet> all;
  for (const auto& c : s.cells()) {
    auto pieces = cell_components(c, bound);
    all.insert(all.end(), pieces.begin(), pieces.end());
  }
  std::vector<IrreducibleSet> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < all.size() && !dominated; ++j) {
      if (i == j) continue;
      const auto& a = all[i].linear();
      const auto& b = all[j].linear();
      // Equal pieces keep the first copy.
      if (a == b) {
        dominated = j < i;
      } else {
        dominated = a.is_subset_of(b);
      }
    }
    if (!dominated) out.push_back(all[i]);
  }
  return out;
}

IrreducibleSet locus(const PointTuple& a) {
  const std::size_t n = a.size();
  RatMatrix g = generic_matrix(a);
  IntMatrix relations = g.rows() == 0 ? IntMatrix::identity(n) : integer_kernel(g);
  std::vector<LinearConstraint> cs;
  for (std::size_t i = 0; i < relations.rows(); ++i) {
    std::vector<Rational> q;
    for (const auto& z : relations.row(i)) q.emplace_back(z);
    cs.push_back({q, apply_row(relations.row(i), a)});
  }
  return IrreducibleSet(LinearSet(n, cs));
}

std::size_t rank(const PointTuple& a, const PointTuple& over) {
  PointTuple all = over;
  all.insert(all.end(), a.begin(), a.end());
  auto r_all = rank(generic_matrix(all));
  auto r_over = over.empty() ? 0 : rank(generic_matrix(over));
  return r_all - r_over;
}

std::size_t dim_set(const IrreducibleSet& s) { return s.dimension(); }

std::size_t dim_set(const TorusPresentation& t) { return torus_dimension(t); }

std::size_t dim_set(const PQFSet& s, std::int64_t bound) {
  auto comps = set_components(s, bound);
  if (comps.empty()) {
    throw Error(ErrorCode::kEmptyWithinBound,
                "no component with kernel offsets within " + std::to_string(bound));
  }
  std::size_t best = 0;
  for (const auto& c : comps) best = std::max(best, c.dimension());
  return best;
}

bool is_generic(const PointTuple& a, const IrreducibleSet& s) {
  if (!s.contains(a)) throw Error(ErrorCode::kNotMember, "the tuple is not in the set");
  return rank(a, s.linear().rhs()) == s.dimension();
}

PointTuple permute(const PointTuple& a, const std::vector<std::size_t>& sigma) {
  require_permutation(sigma, a.size());
  PointTuple out;
  for (auto i : sigma) out.push_back(a[i]);
  return out;
}

TorusPresentation permute(const TorusPresentation& t, const std::vector<std::size_t>& sigma) {
  require_permutation(sigma, t.arity());
  TorusPresentation out(t.arity());
  for (const auto& r : t.rows()) {
    std::vector<Integer> z;
    for (auto i : sigma) z.push_back(r.exponents[i]);
    out.add_row(std::move(z), r.value);
  }
  return out;
}

IrreducibleSet permute(const IrreducibleSet& s, const std::vector<std::size_t>& sigma) {
  require_permutation(sigma, s.arity());
  return IrreducibleSet(s.linear().permuted(sigma));
}

PQFSet permute(const PQFSet& s, const std::vector<std::size_t>& sigma) {
  require_permutation(sigma, s.arity());
  PQFSet out(s.arity());
  for (const auto& c : s.cells()) {
    out.add(Cell(c.m, c.linear.permuted(sigma), permute(c.torus, sigma)));
  }
  return out;
}

std::vector<PointTuple> spanning_sample(const IrreducibleSet& s, std::uint32_t first_generic) {
  PointTuple p = s.linear().particular();
  std::vector<PointTuple> out{p};
  IntMatrix dirs = s.linear().directions();
  for (std::size_t i = 0; i < dirs.rows(); ++i) {
    PointTuple q = p;
    CoverPoint e = CoverPoint::generic(first_generic + static_cast<std::uint32_t>(i));
    for (std::size_t j = 0; j < q.size(); ++j) q[j].add_scaled(e, Rational(dirs(i, j)));
    out.push_back(std::move(q));
  }
  return out;
}

std::optional<PointTuple> containing_translate(const IrreducibleSet& c, const LinearSet& l,
                                               std::int64_t bound) {
  require_arity(c.arity(), l.arity());
  if (l.empty()) return std::nullopt;
  // Directions must already fit; then only the base point matters.
  LinearSet through = LinearSet(l.coefficients(), std::vector<CoverPoint>(
                                                      l.coefficients().rows(), CoverPoint()));
  const IntMatrix dirs = c.linear().directions();
  for (std::size_t i = 0; i < dirs.rows(); ++i) {
    PointTuple d;
    for (const auto& z : dirs.row(i)) d.push_back(CoverPoint::kappa(Rational(z)));
    if (!through.contains(d)) return std::nullopt;
  }
  PointTuple p = c.linear().particular();
  std::optional<PointTuple> found;
  for_each_offset(c.arity(), bound, [&](const std::vector<std::int64_t>& o) {
    if (found) return;
    PointTuple k;
    for (auto x : o) k.push_back(CoverPoint::kappa(Rational(x)));
    PointTuple shifted = p;
    for (std::size_t j = 0; j < p.size(); ++j) shifted[j] -= k[j];
    if (l.contains(shifted)) found = k;
  });
  return found;
}

}  // namespace covertorus
