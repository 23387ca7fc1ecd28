#include "covertorus/torus.hpp"

#include <algorithm>
#include <stdexcept>

#include "covertorus/error.hpp"
#include "covertorus/lattice.hpp"

namespace covertorus {

namespace {

FieldPoint evaluate(std::span<const Integer> z, std::span<const FieldPoint> x) {
  CoverPoint s;
  for (std::size_t j = 0; j < z.size(); ++j) s.add_scaled(x[j].rep(), Rational(z[j]));
  return FieldPoint(s);
}

void require_arity(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorCode::kArityMismatch, std::string(what) + " of length " +
                                               std::to_string(got) + ", expected " +
                                               std::to_string(want));
  }
}

TorusNormalForm consistent_form(const TorusPresentation& t) {
  auto nf = normal_form(t);
  if (!nf.consistent) throw Error(ErrorCode::kEmptyTorus, "the torus is empty");
  return nf;
}

TorusNormalForm irreducible_form(const TorusPresentation& t) {
  auto nf = consistent_form(t);
  if (saturate(nf.lattice).index != 1) {
    throw Error(ErrorCode::kReducible, "the torus is reducible");
  }
  return nf;
}

void require_positive(const Integer& m) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be positive");
}

// Calls f(j) for every j in [0, bounds_0) x ... in lexicographic order.
template <class F>
void for_each_offset(const std::vector<Integer>& bounds, F&& f) {
  std::vector<std::int64_t> lim;
  for (const auto& b : bounds) lim.push_back(to_int64(b));
  std::vector<std::int64_t> j(lim.size(), 0);
  for (;;) {
    f(j);
    std::size_t i = j.size();
    while (i > 0) {
      --i;
      if (++j[i] < lim[i]) break;
      j[i] = 0;
      if (i == 0) return;
    }
    if (j.empty()) return;
  }
}

}  // namespace

TorusPresentation::TorusPresentation(std::size_t n, std::vector<TorusRow> rows)
    : n_(n), rows_(std::move(rows)) {
  if (n_ == 0) throw Error(ErrorCode::kInvalidArgument, "torus arity must be positive");
  for (const auto& r : rows_) require_arity(r.exponents.size(), n_, "exponent row");
}

void TorusPresentation::add_row(std::vector<Integer> exponents, FieldPoint value) {
  require_arity(exponents.size(), n_, "exponent row");
  rows_.push_back({std::move(exponents), std::move(value)});
}

IntMatrix TorusPresentation::exponent_matrix() const {
  IntMatrix m(rows_.size(), n_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = rows_[i].exponents[j];
  }
  return m;
}

bool TorusPresentation::contains(const FieldTuple& x) const {
  require_arity(x.size(), n_, "point");
  for (const auto& r : rows_) {
    if (evaluate(r.exponents, x) != r.value) return false;
  }
  return true;
}

TorusPresentation TorusNormalForm::presentation() const {
  TorusPresentation out(n);
  if (!consistent) {
    out.add_row(std::vector<Integer>(n, 0), exp_point(CoverPoint::kappa(Rational(1, 2))));
    return out;
  }
  for (std::size_t i = 0; i < lattice.rows(); ++i) out.add_row(lattice.row_vector(i), values[i]);
  return out;
}

bool operator==(const TorusNormalForm& a, const TorusNormalForm& b) {
  if (a.n != b.n || a.consistent != b.consistent) return false;
  if (!a.consistent) return true;
  return a.lattice == b.lattice && a.values == b.values;
}

TorusNormalForm normal_form(const TorusPresentation& t) {
  TorusNormalForm nf;
  nf.n = t.arity();
  auto h = hnf(t.exponent_matrix());
  std::vector<FieldPoint> given;
  for (const auto& r : t.rows()) given.push_back(r.value);
  for (std::size_t i = 0; i < t.rows().size(); ++i) {
    FieldPoint v = evaluate(h.u.row(i), given);
    if (i < h.rank) {
      nf.values.push_back(v);
    } else if (!v.is_one()) {
      nf.consistent = false;
    }
  }
  if (!nf.consistent) {
    nf.lattice = IntMatrix(0, nf.n);
    nf.values.clear();
    return nf;
  }
  nf.lattice = h.h.row_block(0, h.rank);
  return nf;
}

bool same_set(const TorusPresentation& a, const TorusPresentation& b) {
  return normal_form(a) == normal_form(b);
}

TorusPresentation CanonicalBranch::pulled_back() const {
  TorusPresentation out(u.rows());
  for (std::size_t i = 0; i < constants.size(); ++i) out.add_row(u.row_vector(i), constants[i]);
  return out;
}

bool CanonicalBranch::contains(const FieldTuple& x) const { return pulled_back().contains(x); }

std::vector<CanonicalBranch> canonical_form(const TorusPresentation& t) {
  consistent_form(t);
  const std::size_t n = t.arity();
  struct State {
    IntMatrix u;
    IntMatrix uinv;
    std::vector<FieldPoint> c;
  };
  std::vector<State> states{{IntMatrix::identity(n), IntMatrix::identity(n), {}}};
  for (const auto& row : t.rows()) {
    std::vector<State> next;
    for (auto& st : states) {
      const std::size_t k = st.c.size();
      std::vector<Integer> w(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) w[i] += row.exponents[j] * st.uinv(j, i);
      }
      CoverPoint rest_value = row.value.rep();
      for (std::size_t i = 0; i < k; ++i) rest_value.add_scaled(st.c[i].rep(), Rational(-w[i]));
      FieldPoint c2(rest_value);
      std::vector<Integer> rest(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
      Integer d = content(rest);
      if (d == 0) {
        if (c2.is_one()) next.push_back(std::move(st));
        continue;
      }
      for (auto& x : rest) x /= d;
      IntMatrix a = complete_unimodular(rest);
      IntMatrix b = IntMatrix::identity(n);
      for (std::size_t i = 0; i < n - k; ++i) {
        for (std::size_t j = 0; j < n - k; ++j) b(k + i, k + j) = a(i, j);
      }
      IntMatrix u = b * st.u;
      IntMatrix uinv = st.uinv * inverse_unimodular(b);
      for (const auto& r : field_roots(c2, d)) {
        State s{u, uinv, st.c};
        s.c.push_back(r);
        next.push_back(std::move(s));
      }
    }
    states = std::move(next);
  }
  std::vector<CanonicalBranch> out;
  for (auto& st : states) out.push_back({std::move(st.u), std::move(st.c)});
  return out;
}

bool is_irreducible(const TorusPresentation& t) {
  return saturate(consistent_form(t).lattice).index == 1;
}

std::vector<TorusPresentation> components(const TorusPresentation& t) {
  auto nf = consistent_form(t);
  const std::size_t r = nf.lattice.rows();
  if (r == 0) return {nf.presentation()};
  auto s = snf(nf.lattice);
  IntMatrix basis = inverse_unimodular(s.v);
  std::vector<FieldPoint> w;
  std::vector<Integer> d;
  for (std::size_t i = 0; i < r; ++i) {
    FieldPoint wi = evaluate(s.u.row(i), nf.values);
    // Leading entry positive, so offsets enumerate in the natural order.
    auto row = basis.row(i);
    auto lead = std::find_if(row.begin(), row.end(), [](const Integer& x) { return x != 0; });
    if (*lead < 0) {
      basis.negate_row(i);
      wi = wi.inverse();
    }
    w.push_back(wi);
    d.push_back(s.d(i, i));
  }
  std::vector<std::vector<FieldPoint>> roots;
  for (std::size_t i = 0; i < r; ++i) roots.push_back(field_roots(w[i], d[i]));
  std::vector<TorusPresentation> out;
  for_each_offset(d, [&](const std::vector<std::int64_t>& j) {
    TorusPresentation c(t.arity());
    for (std::size_t i = 0; i < r; ++i) {
      c.add_row(basis.row_vector(i), roots[i][static_cast<std::size_t>(j[i])]);
    }
    out.push_back(normal_form(c).presentation());
  });
  return out;
}

TorusPresentation intersect(const TorusPresentation& a, const TorusPresentation& b) {
  if (a.arity() != b.arity()) {
    throw Error(ErrorCode::kArityMismatch, "intersecting tori of arity " +
                                               std::to_string(a.arity()) + " and " +
                                               std::to_string(b.arity()));
  }
  TorusPresentation both = a;
  for (const auto& r : b.rows()) both.add_row(r.exponents, r.value);
  return normal_form(both).presentation();
}

std::vector<TorusPresentation> mth_roots(const TorusPresentation& t, const Integer& m) {
  require_positive(m);
  auto nf = irreducible_form(t);
  const std::size_t k = nf.lattice.rows();
  std::vector<std::vector<FieldPoint>> roots;
  for (const auto& v : nf.values) roots.push_back(field_roots(v, m));
  std::vector<TorusPresentation> out;
  for_each_offset(std::vector<Integer>(k, m), [&](const std::vector<std::int64_t>& j) {
    TorusPresentation x(t.arity());
    for (std::size_t i = 0; i < k; ++i) {
      x.add_row(nf.lattice.row_vector(i), roots[i][static_cast<std::size_t>(j[i])]);
    }
    out.push_back(std::move(x));
  });
  return out;
}

TorusPresentation power(const TorusPresentation& t, const Integer& m) {
  require_positive(m);
  return torus_of_linear(linear_of_torus(t).scaled(Rational(m)));
}

LinearSet linear_of_torus(const TorusPresentation& t) {
  auto nf = irreducible_form(t);
  std::vector<LinearConstraint> cs;
  for (std::size_t i = 0; i < nf.lattice.rows(); ++i) {
    std::vector<Rational> q;
    for (const auto& z : nf.lattice.row(i)) q.emplace_back(z);
    cs.push_back({std::move(q), nf.values[i].rep()});
  }
  return LinearSet(t.arity(), cs);
}

TorusPresentation torus_of_linear(const LinearSet& l) {
  if (l.empty()) throw Error(ErrorCode::kEmptySet, "the linear set is empty");
  TorusPresentation out(l.arity());
  if (l.coefficients().rows() == 0) return out;
  IntMatrix rows = saturate(clear_denominators(l.coefficients())).basis;
  PointTuple p = l.particular();
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    out.add_row(rows.row_vector(i), exp_point(apply_row(rows.row(i), p)));
  }
  return normal_form(out).presentation();
}

TorusPresentation minimal_torus(const std::vector<FieldTuple>& points) {
  if (points.empty()) throw Error(ErrorCode::kInvalidArgument, "no points given");
  const std::size_t n = points.front().size();
  for (const auto& p : points) require_arity(p.size(), n, "point");
  // z must kill every generic coordinate and agree on constant directions
  // across the points; κ differences only need to be integral.
  RatMatrix cond(0, n);
  auto add_rows = [&](const FieldTuple& x, const FieldTuple* base, bool generic) {
    std::map<Basis, std::vector<Rational>> rows;
    auto collect = [&](const FieldTuple& y, const Rational& sign) {
      for (std::size_t j = 0; j < n; ++j) {
        for (const auto& [b, q] : y[j].rep().coords()) {
          if (b.is_kernel() || b.is_generic() != generic) continue;
          auto [it, _] = rows.try_emplace(b, std::vector<Rational>(n, Rational(0)));
          it->second[j] += sign * q;
        }
      }
    };
    collect(x, Rational(1));
    if (base) collect(*base, Rational(-1));
    for (const auto& [b, row] : rows) cond.append_row(row);
  };
  for (std::size_t s = 0; s < points.size(); ++s) {
    add_rows(points[s], nullptr, true);
    if (s > 0) add_rows(points[s], &points[0], false);
  }
  IntMatrix kernel = integer_kernel(cond);
  const std::size_t k = kernel.rows();
  IntMatrix lattice(0, n);
  if (k > 0 && points.size() > 1) {
    // u in Z^k with (u N) . delta_s integral for every point s.
    RatMatrix a(k, points.size() - 1);
    for (std::size_t s = 1; s < points.size(); ++s) {
      for (std::size_t i = 0; i < k; ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < n; ++j) {
          acc += Rational(kernel(i, j)) * (points[s][j].rep().kernel_coefficient() -
                                           points[0][j].rep().kernel_coefficient());
        }
        a(i, s - 1) = acc;
      }
    }
    Integer delta = 1;
    for (std::size_t i = 0; i < a.rows(); ++i) delta = lcm(delta, common_denominator(a.row(i)));
    IntMatrix m(k, a.cols());
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = Integer(a(i, j) * delta);
    }
    auto s = snf(m);
    IntMatrix urows(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      Integer di = i < std::min(k, m.cols()) ? s.d(i, i) : Integer(0);
      Integer f = di == 0 ? Integer(1) : Integer(delta / gcd(delta, di));
      for (std::size_t j = 0; j < k; ++j) urows(i, j) = f * s.u(i, j);
    }
    lattice = urows * kernel;
  } else {
    lattice = kernel;
  }
  TorusPresentation out(n);
  for (std::size_t i = 0; i < lattice.rows(); ++i) {
    out.add_row(lattice.row_vector(i), evaluate(lattice.row(i), points[0]));
  }
  return normal_form(out).presentation();
}

std::size_t torus_dimension(const TorusPresentation& t) {
  return t.arity() - consistent_form(t).lattice.rows();
}

PointTuple torus_log_point(const TorusPresentation& t, std::size_t component,
                           std::span<const CoverPoint> coeffs) {
  auto comps = components(t);
  if (component >= comps.size()) {
    throw Error(ErrorCode::kInvalidArgument, "component index out of range");
  }
  LinearSet l = linear_of_torus(comps[component]);
  PointTuple v = l.particular();
  IntMatrix dirs = l.directions();
  for (std::size_t i = 0; i < dirs.rows() && i < coeffs.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) v[j].add_scaled(coeffs[i], Rational(dirs(i, j)));
  }
  return v;
}

}  // namespace covertorus
