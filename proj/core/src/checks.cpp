// The verifier's checks. Each one builds a Document instance from a trial
// generator and evaluates it; evaluation only reads the instance, so a
// printed certificate is enough to replay a failure.

#include <algorithm>
#include <map>

#include "covertorus/error.hpp"
#include "covertorus/lattice.hpp"
#include "covertorus/pqf.hpp"
#include "covertorus/specialization.hpp"
#include "covertorus/verifier.hpp"

namespace covertorus {

namespace {

using Verdict_ = std::optional<std::string>;

constexpr int kMaxComponents = 64;

// Generation.

CoverPoint constant_point(CounterRng& rng) {
  CoverPoint v = CoverPoint::kappa(rng.rational(6, 4));
  if (rng.coin()) v += CoverPoint::constant(1, rng.rational(6, 4));
  if (rng.below(3) == 0) v += CoverPoint::constant(2, rng.rational(6, 4));
  return v;
}

PointTuple constant_tuple(CounterRng& rng, std::size_t n) {
  PointTuple p(n);
  for (auto& x : p) x = constant_point(rng);
  return p;
}

PointTuple random_tuple(CounterRng& rng, std::size_t n, std::uint32_t generics) {
  PointTuple a(n);
  for (auto& x : a) {
    x = constant_point(rng);
    for (std::uint32_t g = 1; g <= generics; ++g) {
      if (rng.coin()) x += CoverPoint::generic(g, rng.rational(3, 2));
    }
  }
  return a;
}

std::size_t arity(CounterRng& rng, const VerifierConfig& cfg, std::size_t cap = 64) {
  return 1 + rng.below(std::min(cfg.max_arity, cap));
}

TorusPresentation torus_with_arity(const VerifierConfig& cfg, CounterRng& rng, std::size_t n,
                                   const PointTuple& base) {
  for (;;) {
    TorusPresentation t(n);
    const std::size_t rows = rng.below(n + 1);
    for (std::size_t i = 0; i < rows; ++i) {
      std::vector<Integer> z(n);
      CoverPoint v;
      for (std::size_t j = 0; j < n; ++j) {
        z[j] = static_cast<long>(rng.between(-cfg.max_exponent, cfg.max_exponent));
        v.add_scaled(base[j], Rational(z[j]));
      }
      t.add_row(std::move(z), exp_point(v));
    }
    if (saturate(t.exponent_matrix()).index <= kMaxComponents) return t;
  }
}

TorusPresentation irreducible_torus(const VerifierConfig& cfg, CounterRng& rng, std::size_t n) {
  auto comps = components(torus_with_arity(cfg, rng, n, constant_tuple(rng, n)));
  return comps[rng.below(comps.size())];
}

// Random constant-defined affine set through p with up to `max_rows` rows.
LinearSet linear_through(const VerifierConfig& cfg, CounterRng& rng, const PointTuple& p,
                         std::size_t max_rows) {
  const std::size_t n = p.size();
  std::vector<LinearConstraint> rows;
  const std::size_t k = rng.below(max_rows + 1);
  for (std::size_t r = 0; r < k; ++r) {
    std::vector<Rational> q(n);
    for (auto& x : q) x = static_cast<long>(rng.between(-cfg.max_exponent, cfg.max_exponent));
    rows.push_back({q, apply_row(q, p)});
  }
  return LinearSet(n, rows);
}

using Substitution = std::map<std::uint32_t, CoverPoint>;

// Generic e_g goes to sub[g]; a specialization of the whole tuple.
PointTuple substitute(const PointTuple& a, const Substitution& sub) {
  PointTuple out;
  for (const auto& x : a) {
    CoverPoint y;
    for (const auto& [b, q] : x.coords()) {
      auto it = b.is_generic() ? sub.find(b.index) : sub.end();
      if (it != sub.end()) {
        y.add_scaled(it->second, q);
      } else {
        y += CoverPoint(CoverPoint::Coords{{b, q}});
      }
    }
    out.push_back(y);
  }
  return out;
}

Substitution random_substitution(CounterRng& rng, std::uint32_t generics) {
  Substitution s;
  for (std::uint32_t g = 1; g <= generics; ++g) {
    CoverPoint v = constant_point(rng);
    if (rng.below(3)) {
      for (std::uint32_t f = 50; f <= 51; ++f) {
        if (rng.coin()) v += CoverPoint::generic(f, rng.rational(2, 2));
      }
    }
    s[g] = v;
  }
  return s;
}

CoverPoint int_param(std::int64_t v) { return CoverPoint::kappa(Rational(static_cast<long>(v))); }

// Instance access.

const TorusPresentation& need_torus(const Document& d, std::string_view name) {
  const auto* t = d.torus(name);
  if (!t) throw Error(ErrorCode::kInvalidArgument, "instance lacks torus " + std::string(name));
  return t->torus;
}

const LinearSet& need_linear(const Document& d, std::string_view name) {
  const auto* l = d.linear(name);
  if (!l) throw Error(ErrorCode::kInvalidArgument, "instance lacks linear " + std::string(name));
  return l->set;
}

PointTuple need_tuple(const Document& d, std::string_view name) {
  auto t = d.tuple(name);
  if (!t) throw Error(ErrorCode::kInvalidArgument, "instance lacks tuple " + std::string(name));
  return *t;
}

std::int64_t int_of(const CoverPoint& v) {
  Rational q = v.kernel_coefficient();
  if (!v.is_torsion() || q.get_den() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "integer parameters are written n*k");
  }
  return to_int64(q.get_num());
}

std::int64_t need_int(const Document& d, std::string_view name) {
  const auto* p = d.point(name);
  if (!p) throw Error(ErrorCode::kInvalidArgument, "instance lacks point " + std::string(name));
  return int_of(p->value);
}

std::vector<std::size_t> need_permutation(const Document& d, std::string_view name) {
  std::vector<std::size_t> out;
  for (const auto& v : need_tuple(d, name)) out.push_back(static_cast<std::size_t>(int_of(v)));
  return out;
}

// Evaluation-time randomness is keyed by the instance text.
CounterRng sampler(const Document& d) { return CounterRng(hash_name(print(d)), 1, 0); }

// A point of log T for irreducible T: its base point plus mixed multiples
// of the directions, shifted by small κ offsets.
PointTuple log_sample(CounterRng& rng, const TorusPresentation& t, std::uint32_t first) {
  std::vector<CoverPoint> coeffs;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    switch (rng.below(3)) {
      case 0:
        coeffs.push_back(CoverPoint::generic(first + static_cast<std::uint32_t>(i),
                                             rng.rational(3, 2)));
        break;
      case 1:
        coeffs.push_back(CoverPoint::kappa(rng.rational(3, 3)));
        break;
      default:
        coeffs.push_back(CoverPoint::constant(1, rng.rational(3, 2)));
    }
  }
  auto v = torus_log_point(t, 0, coeffs);
  for (auto& x : v) x += CoverPoint::kappa(Rational(static_cast<long>(rng.between(-2, 2))));
  return v;
}

// A log point of a canonical branch, built from y = U x.
PointTuple branch_sample(CounterRng& rng, const CanonicalBranch& b, std::uint32_t first) {
  const std::size_t n = b.u.rows();
  PointTuple y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < b.constants.size()) {
      y[i] = b.constants[i].rep() +
             CoverPoint::kappa(Rational(static_cast<long>(rng.between(-2, 2))));
    } else if (rng.coin()) {
      y[i] = CoverPoint::generic(first + static_cast<std::uint32_t>(i), rng.rational(3, 2));
    } else {
      y[i] = constant_point(rng);
    }
  }
  IntMatrix inv = inverse_unimodular(b.u);
  PointTuple x(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) x[j].add_scaled(y[i], Rational(inv(j, i)));
  }
  return x;
}

std::string show(const PointTuple& t) { return to_string(t); }

// Checks.

// Intersections of tori are tori with the expected points.
Document gen_intersection(CounterRng& rng, const VerifierConfig& cfg) {
  const std::size_t n = arity(rng, cfg);
  PointTuple base = constant_tuple(rng, n);
  Document d;
  auto t = torus_with_arity(cfg, rng, n, base);
  if (rng.coin()) base = constant_tuple(rng, n);
  auto u = torus_with_arity(cfg, rng, n, base);
  d.add(TorusDecl{"T", t, {}});
  d.add(TorusDecl{"U", u, {}});
  return d;
}

Verdict_ eval_intersection(const Document& d, const CheckContext& ctx) {
  const auto& t = need_torus(d, "T");
  const auto& u = need_torus(d, "U");
  auto x = ctx.intersect(t, u);
  TorusPresentation stacked(t.arity());
  for (const auto* s : {&t, &u}) {
    for (const auto& r : s->rows()) stacked.add_row(r.exponents, r.value);
  }
  auto rng = sampler(d);
  std::vector<PointTuple> samples;
  for (const TorusPresentation* s : {&t, &u, static_cast<const TorusPresentation*>(&stacked), static_cast<const TorusPresentation*>(&x)}) {
    if (!normal_form(*s).consistent) continue;
    if (saturate(s->exponent_matrix()).index > 4096) continue;
    auto comps = components(*s);
    for (int i = 0; i < 6; ++i) {
      samples.push_back(log_sample(rng, comps[rng.below(comps.size())], 100));
    }
  }
  for (const auto& v : samples) {
    auto f = exp_tuple(v);
    bool want = t.contains(f) && u.contains(f);
    if (x.contains(f) != want) {
      return "membership of " + show(v) + " in the intersection is " +
             (want ? "false" : "true");
    }
  }
  if (normal_form(x) != normal_form(stacked)) return "intersection differs from stacked rows";
  return std::nullopt;
}

// Components: count, irreducibility, disjointness, cover.
Document gen_components(CounterRng& rng, const VerifierConfig& cfg) {
  Document d;
  d.add(TorusDecl{"T", generate_torus(cfg, rng), {}});
  return d;
}

Verdict_ eval_components(const Document& d, const CheckContext&) {
  const auto& t = need_torus(d, "T");
  if (!normal_form(t).consistent) {
    try {
      components(t);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kEmptyTorus) return std::nullopt;
    }
    return "inconsistent torus did not raise EmptyTorus";
  }
  auto comps = components(t);
  Integer index = saturate(t.exponent_matrix()).index;
  if (Integer(static_cast<long>(comps.size())) != index) {
    return std::to_string(comps.size()) + " components, saturation index " + index.get_str();
  }
  const std::size_t dim = torus_dimension(t);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (!is_irreducible(comps[i])) return "component " + std::to_string(i) + " is reducible";
    if (torus_dimension(comps[i]) != dim) return "component " + std::to_string(i) + " has wrong dimension";
    if (!same_set(intersect(comps[i], t), comps[i])) {
      return "component " + std::to_string(i) + " is not inside T";
    }
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      if (normal_form(intersect(comps[i], comps[j])).consistent) {
        return "components " + std::to_string(i) + " and " + std::to_string(j) + " meet";
      }
    }
  }
  // Points from the canonical form lie in exactly one component.
  auto rng = sampler(d);
  auto branches = canonical_form(t);
  for (int s = 0; s < 10; ++s) {
    auto v = branch_sample(rng, branches[rng.below(branches.size())], 100);
    auto f = exp_tuple(v);
    auto hits = std::count_if(comps.begin(), comps.end(),
                              [&](const TorusPresentation& c) { return c.contains(f); });
    if (hits != 1) return show(v) + " lies in " + std::to_string(hits) + " components";
  }
  return std::nullopt;
}

// m-th roots against all torsion lifts of a logarithm.
Document gen_roots(CounterRng& rng, const VerifierConfig& cfg) {
  Document d;
  d.add(TorusDecl{"T", irreducible_torus(cfg, rng, arity(rng, cfg, 3)), {}});
  d.add(PointDecl{"m", int_param(rng.between(1, 4)), {}});
  return d;
}

bool contains_same_set(const std::vector<TorusPresentation>& v, const TorusPresentation& t) {
  return std::any_of(v.begin(), v.end(), [&](const TorusPresentation& x) { return same_set(x, t); });
}

Verdict_ eval_roots(const Document& d, const CheckContext&) {
  const auto& t = need_torus(d, "T");
  const Integer m = static_cast<long>(need_int(d, "m"));
  auto roots = mth_roots(t, m);
  const std::size_t k = normal_form(t).lattice.rows();
  Integer want = 1;
  for (std::size_t i = 0; i < k; ++i) want *= m;
  if (Integer(static_cast<long>(roots.size())) != want) {
    return std::to_string(roots.size()) + " roots, expected " + want.get_str();
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!same_set(power(roots[i], m), t)) return "root " + std::to_string(i) + " ^ m is not T";
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (same_set(roots[i], roots[j])) return "roots " + std::to_string(i) + " and " + std::to_string(j) + " coincide";
    }
  }
  // Oracle: exp((L + tκ)/m) over t in [0, m)^n.
  const std::size_t n = t.arity();
  LinearSet l = linear_of_torus(t);
  std::vector<TorusPresentation> lifts;
  std::vector<long> off(n, 0);
  const long mm = m.get_si();
  for (;;) {
    PointTuple shift;
    for (auto o : off) shift.push_back(CoverPoint::kappa(Rational(o)));
    auto r = torus_of_linear(l.translated(shift).scaled(make_rational(1, m)));
    if (!contains_same_set(lifts, r)) lifts.push_back(r);
    std::size_t i = n;
    while (i > 0 && ++off[i - 1] == mm) off[--i] = 0;
    if (i == 0) break;
  }
  if (lifts.size() != roots.size()) {
    return "oracle finds " + std::to_string(lifts.size()) + " roots, mth_roots " +
           std::to_string(roots.size());
  }
  for (const auto& r : lifts) {
    if (!contains_same_set(roots, r)) return "oracle root missing from mth_roots";
  }
  return std::nullopt;
}

// Powers of irreducible tori.
Document gen_power(CounterRng& rng, const VerifierConfig& cfg) {
  Document d;
  d.add(TorusDecl{"T", irreducible_torus(cfg, rng, arity(rng, cfg)), {}});
  d.add(PointDecl{"m", int_param(rng.between(1, 4)), {}});
  return d;
}

Verdict_ eval_power(const Document& d, const CheckContext&) {
  const auto& t = need_torus(d, "T");
  const Integer m = static_cast<long>(need_int(d, "m"));
  auto p = power(t, m);
  if (!is_irreducible(p)) return "power is reducible";
  if (torus_dimension(p) != torus_dimension(t)) return "power changes the dimension";
  if (!same_set(p, torus_of_linear(linear_of_torus(t).scaled(Rational(m))))) {
    return "power differs from exp(m log T)";
  }
  auto rng = sampler(d);
  for (int s = 0; s < 8; ++s) {
    auto v = log_sample(rng, t, 100);
    for (auto& x : v) x *= Rational(m);
    if (!p.contains(exp_tuple(v))) return "m-th power of a point of T is outside T^m";
  }
  return std::nullopt;
}

// Canonical branches: unimodular, and membership agrees with T.
Document gen_canonical(CounterRng& rng, const VerifierConfig& cfg) {
  Document d;
  d.add(TorusDecl{"T", generate_torus(cfg, rng), {}});
  return d;
}

Verdict_ eval_canonical(const Document& d, const CheckContext&) {
  const auto& t = need_torus(d, "T");
  if (!normal_form(t).consistent) {
    try {
      canonical_form(t);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kEmptyTorus) return std::nullopt;
    }
    return "inconsistent torus did not raise EmptyTorus";
  }
  auto branches = canonical_form(t);
  if (branches.empty()) return "no branches";
  for (std::size_t i = 0; i < branches.size(); ++i) {
    Integer det = determinant(branches[i].u);
    if (det != 1 && det != -1) return "branch " + std::to_string(i) + " has determinant " + det.get_str();
  }
  auto rng = sampler(d);
  auto nf = normal_form(t).presentation();
  for (int s = 0; s < 20; ++s) {
    PointTuple v;
    if (s < 10) {
      v = branch_sample(rng, branches[rng.below(branches.size())], 100);
    } else {
      v = s < 15 ? branch_sample(rng, branches[rng.below(branches.size())], 100)
                 : constant_tuple(rng, t.arity());
      v[rng.below(v.size())] += CoverPoint::kappa(rng.rational(2, 3));
    }
    auto f = exp_tuple(v);
    bool in_t = t.contains(f);
    bool in_branch = std::any_of(branches.begin(), branches.end(),
                                 [&](const CanonicalBranch& b) { return b.contains(f); });
    if (in_t != in_branch || in_t != nf.contains(f)) {
      return "membership of " + show(v) + " disagrees: T " + std::to_string(in_t) +
             ", branches " + std::to_string(in_branch);
    }
    if (s < 10 && !in_t) return "branch point " + show(v) + " is not in T";
  }
  return std::nullopt;
}

// exp(L/m) is exactly one m-th root of exp(L).
Document gen_single_root(CounterRng& rng, const VerifierConfig& cfg) {
  Document d;
  auto t = irreducible_torus(cfg, rng, arity(rng, cfg, 3));
  PointTuple shift;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    shift.push_back(int_param(rng.between(-cfg.kernel_bound, cfg.kernel_bound)));
  }
  d.add(TorusDecl{"T", t, {}});
  d.add(LinearDecl{"L", linear_of_torus(t).translated(shift), {}});
  d.add(PointDecl{"m", int_param(rng.between(1, 4)), {}});
  return d;
}

Verdict_ eval_single_root(const Document& d, const CheckContext&) {
  const auto& t = need_torus(d, "T");
  const auto& l = need_linear(d, "L");
  const Integer m = static_cast<long>(need_int(d, "m"));
  if (!same_set(torus_of_linear(l), t)) return "exp(L) is not T";
  auto x = torus_of_linear(l.scaled(make_rational(1, m)));
  auto roots = mth_roots(t, m);
  auto hits = std::count_if(roots.begin(), roots.end(),
                            [&](const TorusPresentation& r) { return same_set(r, x); });
  if (hits != 1) return "exp(L/m) equals " + std::to_string(hits) + " roots";
  return std::nullopt;
}

// An irreducible set inside the κ-translates of L lies in one of them.
Document gen_linear_irreducible(CounterRng& rng, const VerifierConfig& cfg) {
  const std::size_t n = arity(rng, cfg);
  PointTuple p = constant_tuple(rng, n);
  LinearSet c = linear_through(cfg, rng, p, n);
  IntMatrix dirs = c.directions();
  // Rows vanishing on every direction of C, some of them dropped.
  IntMatrix normals = dirs.rows() == 0 ? IntMatrix::identity(n) : integer_kernel(dirs);
  PointTuple moved = p;
  for (auto& x : moved) {
    x += CoverPoint::kappa(Rational(static_cast<long>(rng.between(-cfg.kernel_bound, cfg.kernel_bound))));
  }
  std::vector<LinearConstraint> rows;
  for (std::size_t i = 0; i < normals.rows(); ++i) {
    if (rng.below(3) == 0) continue;
    std::vector<Rational> q;
    for (const auto& z : normals.row(i)) q.emplace_back(z);
    rows.push_back({q, apply_row(q, moved)});
  }
  Document d;
  d.add(LinearDecl{"C", c, {}});
  d.add(LinearDecl{"L", LinearSet(n, rows), {}});
  return d;
}

Verdict_ eval_linear_irreducible(const Document& d, const CheckContext& ctx) {
  const auto& c = need_linear(d, "C");
  const auto& l = need_linear(d, "L");
  const std::int64_t bound = ctx.config.kernel_bound;
  const std::size_t n = c.arity();
  auto sample = spanning_sample(IrreducibleSet(c), 100);
  // Brute force: offsets k with every sample point in L + k.
  std::vector<std::int64_t> off(n, -bound);
  bool common = false;
  for (;;) {
    PointTuple k;
    for (auto o : off) k.push_back(CoverPoint::kappa(Rational(static_cast<long>(o))));
    LinearSet moved = l.translated(k);
    if (std::all_of(sample.begin(), sample.end(), [&](const PointTuple& s) { return moved.contains(s); })) {
      common = true;
      break;
    }
    std::size_t i = n;
    while (i > 0 && ++off[i - 1] > bound) off[--i] = -bound;
    if (i == 0) break;
  }
  auto found = containing_translate(IrreducibleSet(c), l, bound);
  if (!found) return "no single translate found";
  if (!c.is_subset_of(l.translated(*found))) return "returned translate " + show(*found) + " misses C";
  if (!common) return "sampled points share no translate";
  return std::nullopt;
}

// A subset of log T is a component iff its image is a component of T.
Document gen_components_correspond(CounterRng& rng, const VerifierConfig& cfg) {
  const std::size_t n = arity(rng, cfg, 3);
  TorusPresentation t;
  std::vector<TorusPresentation> comps;
  do {
    t = torus_with_arity(cfg, rng, n, constant_tuple(rng, n));
    comps = components(t);
  } while (comps.size() > 8);
  const auto& comp = comps[rng.below(comps.size())];
  auto nf = normal_form(comp);
  std::vector<LinearConstraint> rows;
  for (std::size_t i = 0; i < nf.lattice.rows(); ++i) {
    std::vector<Rational> q;
    for (const auto& z : nf.lattice.row(i)) q.emplace_back(z);
    auto o = rng.between(-cfg.kernel_bound, cfg.kernel_bound);
    rows.push_back({q, nf.values[i].rep() + CoverPoint::kappa(Rational(static_cast<long>(o)))});
  }
  LinearSet c(n, rows);
  if (rng.coin() && c.dimension() > 0) {
    // Cut by a hyperplane through a point of C: no longer a component.
    auto p = c.particular();
    std::vector<Rational> q(n);
    IntMatrix dirs = c.directions();
    for (std::size_t j = 0; j < n; ++j) q[j] = Rational(dirs(0, j));
    rows.push_back({q, apply_row(q, p)});
    c = LinearSet(n, rows);
  }
  Document d;
  d.add(TorusDecl{"T", t, {}});
  d.add(LinearDecl{"C", c, {}});
  return d;
}

Verdict_ eval_components_correspond(const Document& d, const CheckContext& ctx) {
  const auto& t = need_torus(d, "T");
  const auto& c = need_linear(d, "C");
  if (c.empty()) return "C is empty";
  auto comps = components(t);
  auto base = c.particular();
  if (!t.contains(exp_tuple(base))) return "C is not inside log T";
  bool log_side = false;
  for (const auto& comp : comps) {
    for (const auto& lc : log_components(comp, ctx.config.kernel_bound)) {
      if (lc.linear() == c) log_side = true;
    }
  }
  auto image = torus_of_linear(c);
  bool field_side = contains_same_set(comps, image);
  if (log_side != field_side) {
    return std::string("C is ") + (log_side ? "" : "not ") + "a component of log T but exp(C) is " +
           (field_side ? "" : "not ") + "a component of T";
  }
  return std::nullopt;
}

// Affine dimension against the exponent lattice of the image.
Document gen_dimension_agree(CounterRng& rng, const VerifierConfig& cfg) {
  const std::size_t n = arity(rng, cfg);
  auto t = irreducible_torus(cfg, rng, n);
  LinearSet lc = log_components(t, 0)[0].linear();
  PointTuple p = lc.particular();
  for (std::size_t i = 0; i < n && rng.coin(); ++i) {
    // Move along a direction so the cut is not always through the base.
    IntMatrix dirs = lc.directions();
    if (dirs.rows() == 0) break;
    const CoverPoint step = constant_point(rng);
    for (std::size_t j = 0; j < n; ++j) p[j].add_scaled(step, Rational(dirs(0, j)));
  }
  LinearSet c = lc.intersect(linear_through(cfg, rng, p, n));
  Document d;
  d.add(LinearDecl{"C", c, {}});
  return d;
}

Verdict_ eval_dimension_agree(const Document& d, const CheckContext&) {
  const auto& c = need_linear(d, "C");
  const std::size_t affine = c.dimension();
  const std::size_t lattice = torus_dimension(torus_of_linear(c));
  // A generic point has rank equal to the number of free directions.
  auto sample = spanning_sample(IrreducibleSet(c), 100);
  PointTuple generic = sample[0];
  for (std::size_t i = 1; i < sample.size(); ++i) {
    for (std::size_t j = 0; j < generic.size(); ++j) generic[j] += sample[i][j] - sample[0][j];
  }
  const std::size_t by_rank = rank(generic, c.rhs());
  if (affine != lattice || affine != by_rank) {
    return "affine " + std::to_string(affine) + ", image " + std::to_string(lattice) +
           ", generic rank " + std::to_string(by_rank);
  }
  return std::nullopt;
}

// Strict chains of irreducible sets map to strict chains of tori and have
// length at most n.
Document gen_descending_chains(CounterRng& rng, const VerifierConfig& cfg) {
  const std::size_t n = arity(rng, cfg);
  PointTuple p = constant_tuple(rng, n);
  LinearSet cur = linear_through(cfg, rng, p, 1);
  Document d;
  std::size_t i = 0;
  d.add(LinearDecl{"C0", cur, {}});
  for (int tries = 0; tries < 20 && cur.dimension() > 0; ++tries) {
    std::vector<Rational> q(n);
    for (auto& x : q) x = static_cast<long>(rng.between(-cfg.max_exponent, cfg.max_exponent));
    LinearSet next = cur.with({{q, apply_row(q, p)}});
    if (next.dimension() == cur.dimension()) continue;
    cur = next;
    d.add(LinearDecl{"C" + std::to_string(++i), cur, {}});
  }
  return d;
}

Verdict_ eval_descending_chains(const Document& d, const CheckContext&) {
  std::vector<LinearSet> chain;
  for (std::size_t i = 0; d.linear("C" + std::to_string(i)); ++i) {
    chain.push_back(d.linear("C" + std::to_string(i))->set);
  }
  if (chain.empty()) return "empty chain";
  const std::size_t n = chain[0].arity();
  if (chain.size() > n + 1) return "chain of length " + std::to_string(chain.size()) + " in V^" + std::to_string(n);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const auto& big = chain[i];
    const auto& small = chain[i + 1];
    if (!small.is_subset_of(big) || small == big) return "instance is not a strict chain";
    auto tb = torus_of_linear(big), ts = torus_of_linear(small);
    if (!same_set(intersect(ts, tb), ts) || same_set(ts, tb)) {
      return "images of C" + std::to_string(i) + " and C" + std::to_string(i + 1) + " are not strictly nested";
    }
    if (torus_dimension(ts) >= torus_dimension(tb)) return "dimension does not drop along the chain";
  }
  return std::nullopt;
}

// dim X >= dim C1 + dim C2 - n for components X of the intersection, on
// tori and on irreducible sets of the cover.
Document gen_intersection_dimension(CounterRng& rng, const VerifierConfig& cfg) {
  const std::size_t n = arity(rng, cfg);
  Document d;
  PointTuple shared = constant_tuple(rng, n);
  for (int s = 1; s <= 2; ++s) {
    PointTuple base = rng.coin() ? shared : constant_tuple(rng, n);
    auto comps = components(torus_with_arity(cfg, rng, n, base));
    auto t = comps[rng.below(comps.size())];
    LinearSet lc = log_components(t, 0)[0].linear();
    LinearSet c = lc.intersect(linear_through(cfg, rng, lc.particular(), 1));
    d.add(TorusDecl{"T" + std::to_string(s), t, {}});
    d.add(LinearDecl{"C" + std::to_string(s), c, {}});
  }
  return d;
}

Verdict_ eval_intersection_dimension(const Document& d, const CheckContext& ctx) {
  const auto& t1 = need_torus(d, "T1");
  const auto& t2 = need_torus(d, "T2");
  const auto& c1 = need_linear(d, "C1");
  const auto& c2 = need_linear(d, "C2");
  const long n = static_cast<long>(t1.arity());
  auto x = ctx.intersect(t1, t2);
  if (normal_form(x).consistent) {
    const long want = static_cast<long>(torus_dimension(t1) + torus_dimension(t2)) - n;
    for (const auto& comp : components(x)) {
      if (static_cast<long>(torus_dimension(comp)) < want) {
        return "torus component of dimension " + std::to_string(torus_dimension(comp)) +
               " below " + std::to_string(want);
      }
    }
  }
  LinearSet meet = c1.intersect(c2);
  if (meet.empty() || !normal_form(x).consistent) return std::nullopt;
  const long want = static_cast<long>(c1.dimension() + c2.dimension()) - n;
  for (const auto& comp : cell_components(Cell(1, meet, x), ctx.config.kernel_bound)) {
    if (static_cast<long>(comp.dimension()) < want) {
      return "cover component of dimension " + std::to_string(comp.dimension()) + " below " +
             std::to_string(want);
    }
  }
  return std::nullopt;
}

// Locus checks on a random tuple.
Document gen_tuple(CounterRng& rng, const VerifierConfig& cfg) {
  Document d;
  d.add(TupleDecl{"a", random_tuple(rng, arity(rng, cfg), 3), {}});
  return d;
}

// Loci are defined over the constants and fixed by generic relabelling.
Verdict_ eval_axiom_definable(const Document& d, const CheckContext&) {
  auto a = need_tuple(d, "a");
  auto c = locus(a);
  if (!c.linear().is_constant_defined()) return "locus has a non-constant parameter";
  auto rng = sampler(d);
  Substitution relabel;
  for (std::uint32_t g = 1; g <= 3; ++g) relabel[g] = CoverPoint::generic(200 + 3 - g);
  std::vector<PointTuple> pts = spanning_sample(c, 100);
  pts.push_back(a);
  for (int s = 0; s < 4; ++s) pts.push_back(random_tuple(rng, a.size(), 3));
  for (const auto& x : pts) {
    if (c.contains(x) != c.contains(substitute(x, relabel))) {
      return "relabelling generics changes membership of " + show(x);
    }
  }
  return std::nullopt;
}

Verdict_ eval_axiom_generic(const Document& d, const CheckContext&) {
  auto a = need_tuple(d, "a");
  auto c = locus(a);
  if (!c.contains(a)) return "tuple outside its locus";
  if (!is_generic(a, c)) return "tuple not generic in its locus";
  if (c.dimension() != rank(a)) return "locus dimension differs from rank";
  for (const auto& x : spanning_sample(c, 100)) {
    if (rank(x) > c.dimension()) return "point of the locus exceeds its dimension";
  }
  return std::nullopt;
}

Verdict_ eval_axiom_type(const Document& d, const CheckContext&) {
  auto a = need_tuple(d, "a");
  auto c = locus(a);
  auto rng = sampler(d);
  PointTuple p = c.linear().particular();
  IntMatrix dirs = c.linear().directions();
  auto generic_point = [&](std::uint32_t first) {
    PointTuple v = p;
    for (std::size_t i = 0; i < dirs.rows(); ++i) {
      // Triangular mix of fresh directions keeps them independent.
      CoverPoint e = CoverPoint::generic(first + static_cast<std::uint32_t>(i), Rational(1 + static_cast<long>(rng.below(3))));
      for (std::size_t j = 0; j < i; ++j) e += CoverPoint::generic(first + static_cast<std::uint32_t>(j), rng.rational(2, 2));
      e += constant_point(rng) * Rational(0);
      for (std::size_t j = 0; j < v.size(); ++j) v[j].add_scaled(e, Rational(dirs(i, j)));
    }
    return v;
  };
  auto g1 = generic_point(100), g2 = generic_point(200);
  if (!same_qf_type(g1, g2)) return "generic points " + show(g1) + " and " + show(g2) + " differ in type";
  if (!same_qf_type(a, g1)) return "tuple and generic point " + show(g1) + " differ in type";
  return std::nullopt;
}

// a generic in C and a in D force C inside D.
Document gen_axiom_minimal(CounterRng& rng, const VerifierConfig& cfg) {
  auto a = random_tuple(rng, arity(rng, cfg), 3);
  auto rel = locus(a).linear();
  std::vector<LinearConstraint> rows;
  for (const auto& r : rel.constraints()) {
    if (rng.coin()) continue;
    std::vector<Rational> q = r.coeffs;
    const Rational f(static_cast<long>(rng.between(1, 3)));
    for (auto& x : q) x *= f;
    rows.push_back({q, apply_row(q, a)});
  }
  // Sums of relations are relations too.
  auto all = rel.constraints();
  if (all.size() >= 2) {
    std::vector<Rational> q(a.size());
    for (std::size_t j = 0; j < q.size(); ++j) q[j] = all[0].coeffs[j] - all[1].coeffs[j];
    rows.push_back({q, apply_row(q, a)});
  }
  Document d;
  d.add(TupleDecl{"a", a, {}});
  d.add(LinearDecl{"D", LinearSet(a.size(), rows), {}});
  return d;
}

Verdict_ eval_axiom_minimal(const Document& d, const CheckContext&) {
  auto a = need_tuple(d, "a");
  const auto& dset = need_linear(d, "D");
  if (!dset.contains(a)) return "instance tuple is not in D";
  if (!dset.is_constant_defined()) return "D has a non-constant parameter";
  auto c = locus(a);
  if (!c.linear().is_subset_of(dset)) return "locus is not inside D";
  for (const auto& x : spanning_sample(c, 100)) {
    if (!dset.contains(x)) return "locus point " + show(x) + " outside D";
  }
  return std::nullopt;
}

// (a', b') in locus(a, b) gives a' in locus(a).
Document gen_axiom_projection(CounterRng& rng, const VerifierConfig& cfg) {
  const std::size_t p = arity(rng, cfg), r = arity(rng, cfg);
  auto a = random_tuple(rng, p, 3);
  auto b = random_tuple(rng, r, 3);
  PointTuple a2, b2;
  if (rng.coin()) {
    auto sub = random_substitution(rng, 3);
    a2 = substitute(a, sub);
    b2 = substitute(b, sub);
  } else {
    // Arbitrary point of the joint locus.
    auto l = locus(concat(a, b)).linear();
    PointTuple v = l.particular();
    IntMatrix dirs = l.directions();
    for (std::size_t i = 0; i < dirs.rows(); ++i) {
      CoverPoint coef = rng.coin() ? constant_point(rng) : CoverPoint::generic(60 + static_cast<std::uint32_t>(rng.below(2)));
      for (std::size_t j = 0; j < v.size(); ++j) v[j].add_scaled(coef, Rational(dirs(i, j)));
    }
    a2.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(p));
    b2.assign(v.begin() + static_cast<std::ptrdiff_t>(p), v.end());
  }
  Document d;
  d.add(TupleDecl{"a", a, {}});
  d.add(TupleDecl{"b", b, {}});
  d.add(TupleDecl{"a2", a2, {}});
  d.add(TupleDecl{"b2", b2, {}});
  return d;
}

Verdict_ eval_axiom_projection(const Document& d, const CheckContext&) {
  auto a = need_tuple(d, "a"), b = need_tuple(d, "b");
  auto a2 = need_tuple(d, "a2"), b2 = need_tuple(d, "b2");
  if (!locus(concat(a, b)).contains(concat(a2, b2))) return "instance point is not in the joint locus";
  if (!locus(a).contains(a2)) return "projection " + show(a2) + " is outside locus(a)";
  return std::nullopt;
}

// Coordinate permutations keep sets irreducible and commute with loci.
Document gen_axiom_permutation(CounterRng& rng, const VerifierConfig& cfg) {
  const std::size_t n = arity(rng, cfg);
  auto a = random_tuple(rng, n, 3);
  std::vector<std::size_t> sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(sigma[i - 1], sigma[rng.below(i)]);
  PointTuple s;
  for (auto i : sigma) s.push_back(int_param(static_cast<std::int64_t>(i)));
  Document d;
  d.add(TupleDecl{"a", a, {}});
  d.add(TupleDecl{"sigma", s, {}});
  d.add(TorusDecl{"T", torus_with_arity(cfg, rng, n, constant_tuple(rng, n)), {}});
  d.add(LinearDecl{"L", linear_through(cfg, rng, constant_tuple(rng, n), 1), {}});
  return d;
}

Verdict_ eval_axiom_permutation(const Document& d, const CheckContext&) {
  auto a = need_tuple(d, "a");
  auto sigma = need_permutation(d, "sigma");
  const auto& t = need_torus(d, "T");
  const auto& l = need_linear(d, "L");
  auto c = locus(a);
  auto pc = permute(c, sigma);
  if (!(pc == locus(permute(a, sigma)))) return "permuted locus differs from locus of permuted tuple";
  if (!pc.linear().is_constant_defined()) return "permuted locus has a non-constant parameter";
  PQFSet s(a.size(), {Cell(1, l, t)});
  auto ps = permute(s, sigma);
  auto rng = sampler(d);
  std::vector<PointTuple> pts = spanning_sample(c, 100);
  if (normal_form(t).consistent && saturate(t.exponent_matrix()).index <= 4096) {
    auto comps = components(t);
    for (int i = 0; i < 4; ++i) pts.push_back(log_sample(rng, comps[rng.below(comps.size())], 100));
  }
  pts.push_back(l.particular());
  for (const auto& x : pts) {
    auto px = permute(x, sigma);
    if (c.contains(x) != pc.contains(px)) return "locus membership of " + show(x) + " not permuted";
    if (member(x, s) != member(px, ps)) return "set membership of " + show(x) + " not permuted";
  }
  return std::nullopt;
}

// Amalgamation on strongly regular specializations with rank drop <= 1.
Document gen_axiom_amalgamation(CounterRng& rng, const VerifierConfig& cfg) {
  const std::size_t cap = std::min<std::size_t>(cfg.max_arity, 2);
  PointTuple a, b, c, a2, b2, c2;
  for (int tries = 0; tries < 10000; ++tries) {
    a = random_tuple(rng, 1 + rng.below(cap), 3);
    b = random_tuple(rng, 1 + rng.below(cap), 3);
    c = random_tuple(rng, 1 + rng.below(cap), 3);
    auto sub = random_substitution(rng, 3);
    a2 = substitute(a, sub);
    b2 = substitute(b, sub);
    c2 = substitute(c, sub);
    if (rank(a) - rank(a2) <= 1 && strongly_regular(a, a2, 4) == Verdict::kTrue) break;
  }
  Document d;
  for (auto [name, t] : {std::pair{"a", &a}, {"a2", &a2}, {"b", &b}, {"b2", &b2}, {"c", &c}, {"c2", &c2}}) {
    d.add(TupleDecl{name, *t, {}});
  }
  return d;
}

Verdict_ eval_axiom_amalgamation(const Document& d, const CheckContext&) {
  auto a = need_tuple(d, "a"), a2 = need_tuple(d, "a2");
  auto b = need_tuple(d, "b"), b2 = need_tuple(d, "b2");
  auto c = need_tuple(d, "c"), c2 = need_tuple(d, "c2");
  auto spec = is_specialization(a, a2);
  if (!spec.verdict || *spec.rank_drop > 1 || strongly_regular(a, a2, 4) != Verdict::kTrue) {
    return "instance does not meet the preconditions";
  }
  BasisRegistry reg;
  auto b_star = amalgamate(a, a2, b, b2, c, c2, reg);
  if (!(locus(concat(a, b_star)) == locus(concat(a, b)))) return "b* changes the type over a";
  if (rank(b_star, concat(a, c)) != rank(b_star, a)) return "b* depends on c over a";
  if (!is_specialization(concat(concat(a, b_star), c), concat(concat(a2, b2), c2)).verdict) {
    return "ab*c does not specialize to a'b'c'";
  }
  return std::nullopt;
}

// One diagonal step with rank drop exactly one.
Document gen_axiom_diagonal(CounterRng& rng, const VerifierConfig& cfg) {
  const std::size_t n = 2 + rng.below(std::max<std::size_t>(cfg.max_arity, 2) - 1);
  PointTuple a, a2;
  for (int tries = 0; tries < 1000; ++tries) {
    a = random_tuple(rng, n, 3);
    a[1] = a[0] + CoverPoint::generic(4, rng.rational(3, 2));
    auto sub = random_substitution(rng, 3);
    sub[4] = CoverPoint();
    a2 = substitute(a, sub);
    if (a[0] != a[1]) break;
  }
  Document d;
  d.add(TupleDecl{"a", a, {}});
  d.add(TupleDecl{"a2", a2, {}});
  return d;
}

Verdict_ eval_axiom_diagonal(const Document& d, const CheckContext&) {
  auto a = need_tuple(d, "a"), a2 = need_tuple(d, "a2");
  BasisRegistry reg;
  auto a1 = diagonal_step(a, a2, reg);
  if (a1[0] != a1[1]) return "witness is off the diagonal";
  if (!locus(a).contains(a1)) return "a does not specialize to the witness";
  if (!locus(a1).contains(a2)) return "the witness does not specialize to a'";
  if (rank(a) != rank(a1) + 1) return "rank drop is not one";
  return std::nullopt;
}

}  // namespace

TorusPresentation generate_torus(const VerifierConfig& cfg, CounterRng& rng) {
  const std::size_t n = arity(rng, cfg);
  return torus_with_arity(cfg, rng, n, constant_tuple(rng, n));
}

const std::vector<CheckDef>& all_checks() {
  static const std::vector<CheckDef> checks = {
      {"intersection", "intersections of tori are tori", gen_intersection, eval_intersection},
      {"components", "components of a torus", gen_components, eval_components},
      {"roots", "m-th roots against torsion lifts", gen_roots, eval_roots},
      {"power", "powers of irreducible tori", gen_power, eval_power},
      {"canonical_form", "unimodular branches with matching membership", gen_canonical,
       eval_canonical},
      {"single_root", "exp(L/m) is one m-th root", gen_single_root, eval_single_root},
      {"linear_irreducible", "one translate contains an irreducible set",
       gen_linear_irreducible, eval_linear_irreducible},
      {"components_correspond", "components of log T and of T", gen_components_correspond,
       eval_components_correspond},
      {"dimension_agree", "affine and image dimensions", gen_dimension_agree,
       eval_dimension_agree},
      {"descending_chains", "strict chains stay strict under exp", gen_descending_chains,
       eval_descending_chains},
      {"intersection_dimension", "dimension of intersection components", gen_intersection_dimension,
       eval_intersection_dimension},
      {"axiom_definable", "irreducible sets are defined over constants", gen_tuple,
       eval_axiom_definable},
      {"axiom_generic", "every tuple is generic in its locus", gen_tuple, eval_axiom_generic},
      {"axiom_type", "generic points share a type", gen_tuple, eval_axiom_type},
      {"axiom_minimal", "loci are minimal", gen_axiom_minimal, eval_axiom_minimal},
      {"axiom_projection", "specializations project", gen_axiom_projection,
       eval_axiom_projection},
      {"axiom_permutation", "closure under coordinate permutations", gen_axiom_permutation,
       eval_axiom_permutation},
      {"axiom_amalgamation", "amalgamation of specializations", gen_axiom_amalgamation,
       eval_axiom_amalgamation},
      {"axiom_diagonal", "diagonal step", gen_axiom_diagonal, eval_axiom_diagonal},
  };
  return checks;
}

}  // namespace covertorus
