#include "covertorus/cover.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace covertorus {

CoverPoint::CoverPoint(Coords coords) : coords_(std::move(coords)) {
  for (auto& kv : coords_) kv.second.canonicalize();
  std::erase_if(coords_, [](const auto& kv) { return kv.second == 0; });
}

CoverPoint CoverPoint::kappa(const Rational& q) {
  return CoverPoint(Coords{{Basis::kernel(), q}});
}

CoverPoint CoverPoint::generic(std::uint32_t i, const Rational& q) {
  return CoverPoint(Coords{{Basis::generic(i), q}});
}

CoverPoint CoverPoint::constant(std::uint32_t i, const Rational& q) {
  return CoverPoint(Coords{{Basis::constant(i), q}});
}

Rational CoverPoint::coefficient(Basis b) const {
  auto it = coords_.find(b);
  return it == coords_.end() ? Rational(0) : it->second;
}

bool CoverPoint::is_constant() const {
  return std::none_of(coords_.begin(), coords_.end(),
                      [](const auto& kv) { return kv.first.is_generic(); });
}

bool CoverPoint::is_torsion() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const auto& kv) { return kv.first.is_kernel(); });
}

CoverPoint CoverPoint::generic_part() const {
  CoverPoint out;
  for (const auto& [b, q] : coords_) {
    if (b.is_generic()) out.coords_.emplace(b, q);
  }
  return out;
}

CoverPoint CoverPoint::without_kernel() const {
  CoverPoint out = *this;
  out.coords_.erase(Basis::kernel());
  return out;
}

void CoverPoint::add_scaled(const CoverPoint& other, const Rational& q) {
  if (q == 0) return;
  for (const auto& [b, v] : other.coords_) {
    auto [it, inserted] = coords_.try_emplace(b, 0);
    it->second += q * v;
    if (it->second == 0) coords_.erase(it);
  }
}

CoverPoint& CoverPoint::operator+=(const CoverPoint& other) {
  add_scaled(other, Rational(1));
  return *this;
}

CoverPoint& CoverPoint::operator-=(const CoverPoint& other) {
  add_scaled(other, Rational(-1));
  return *this;
}

CoverPoint& CoverPoint::operator*=(const Rational& q) {
  if (q == 0) {
    coords_.clear();
    return *this;
  }
  for (auto& kv : coords_) kv.second *= q;
  return *this;
}

CoverPoint CoverPoint::operator-() const {
  CoverPoint out = *this;
  out *= Rational(-1);
  return out;
}

FieldPoint::FieldPoint(const CoverPoint& v) : rep_(v) {
  Rational k = v.kernel_coefficient();
  if (k != 0) {
    rep_ -= CoverPoint::kappa(Rational(floor(k)));
  }
}

FieldPoint FieldPoint::pow(const Integer& e) const {
  return FieldPoint(rep_ * Rational(e));
}

FieldPoint FieldPoint::inverse() const { return FieldPoint(-rep_); }

FieldPoint exp_point(const CoverPoint& v) { return FieldPoint(v); }

FieldTuple exp_tuple(const PointTuple& v) {
  FieldTuple out;
  out.reserve(v.size());
  for (const auto& p : v) out.emplace_back(p);
  return out;
}

FieldPoint mul_field(const FieldPoint& c, const FieldPoint& d) {
  return FieldPoint(c.rep() + d.rep());
}

std::vector<FieldPoint> field_roots(const FieldPoint& c, const Integer& m) {
  if (m < 1) {
    throw std::invalid_argument("field_roots needs m >= 1");
  }
  std::vector<FieldPoint> out;
  const auto count = to_int64(m);
  out.reserve(static_cast<std::size_t>(count));
  const Rational inv = make_rational(1, m);
  for (std::int64_t j = 0; j < count; ++j) {
    CoverPoint v = c.rep() + CoverPoint::kappa(Rational(j));
    out.emplace_back(v * inv);
  }
  return out;
}

std::optional<Integer> is_root_of_unity(const FieldPoint& c) {
  if (!c.rep().is_torsion()) return std::nullopt;
  return Integer(c.rep().kernel_coefficient().get_den());
}

BasisRegistry::BasisRegistry(const BasisRegistry& other)
    : constants_(other.constants_),
      next_named_(other.next_named_),
      next_generic_(other.next_generic_.load()) {}

BasisRegistry& BasisRegistry::operator=(const BasisRegistry& other) {
  constants_ = other.constants_;
  next_named_ = other.next_named_;
  next_generic_.store(other.next_generic_.load());
  return *this;
}

namespace {

// Parses `<prefix><digits>`; digits must not be empty.
std::optional<std::uint32_t> indexed_name(const std::string& name, char prefix) {
  if (name.size() < 2 || name[0] != prefix) return std::nullopt;
  std::uint32_t value = 0;
  const char* first = name.data() + 1;
  const char* last = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

}  // namespace

std::uint32_t BasisRegistry::declare_constant(const std::string& name) {
  if (auto it = constants_.find(name); it != constants_.end()) return it->second;
  std::uint32_t index;
  if (auto g = indexed_name(name, 'g')) {
    if (*g >= kNamedConstantBase) {
      throw std::invalid_argument("constant index too large: " + name);
    }
    index = *g;
  } else {
    index = next_named_++;
  }
  constants_.emplace(name, index);
  return index;
}

std::optional<std::uint32_t> BasisRegistry::find_constant(
    const std::string& name) const {
  if (auto it = constants_.find(name); it != constants_.end()) return it->second;
  return std::nullopt;
}

std::string BasisRegistry::constant_name(std::uint32_t index) const {
  if (index >= kNamedConstantBase) {
    for (const auto& [name, i] : constants_) {
      if (i == index) return name;
    }
  }
  return "g" + std::to_string(index);
}

void BasisRegistry::observe_generic(std::uint32_t index) {
  std::uint32_t want = index + 1;
  std::uint32_t cur = next_generic_.load();
  while (cur < want && !next_generic_.compare_exchange_weak(cur, want)) {
  }
}

void BasisRegistry::observe(const CoverPoint& v) {
  for (const auto& [b, q] : v.coords()) {
    if (b.is_generic()) observe_generic(b.index);
  }
}

void BasisRegistry::observe(const PointTuple& t) {
  for (const auto& v : t) observe(v);
}

std::uint32_t BasisRegistry::fresh_generic() { return next_generic_.fetch_add(1); }

namespace {

std::string basis_name(Basis b, const BasisRegistry* names) {
  switch (b.kind) {
    case Basis::Kind::kKernel:
      return "k";
    case Basis::Kind::kConstant:
      return names ? names->constant_name(b.index) : "g" + std::to_string(b.index);
    case Basis::Kind::kGeneric:
      return "e" + std::to_string(b.index);
  }
  return "?";
}

}  // namespace

std::string to_string(const CoverPoint& v, const BasisRegistry* names) {
  if (v.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [b, q] : v.coords()) {
    Rational mag = abs(q);
    if (first) {
      if (q < 0) out += "-";
    } else {
      out += q < 0 ? " - " : " + ";
    }
    first = false;
    if (mag != 1) out += mag.get_str() + "*";
    out += basis_name(b, names);
  }
  return out;
}

std::string to_string(const FieldPoint& c, const BasisRegistry* names) {
  const CoverPoint& r = c.rep();
  if (r.is_zero()) return "u(0)";
  std::string out;
  for (const auto& [b, q] : r.coords()) {
    if (!out.empty()) out += "*";
    if (b.is_kernel()) {
      out += "u(" + q.get_str() + ")";
    } else {
      out += basis_name(b, names);
      if (q != 1) out += "^" + q.get_str();
    }
  }
  return out;
}

std::string to_string(const PointTuple& t, const BasisRegistry* names) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += to_string(t[i], names);
  }
  return out + ")";
}

}  // namespace covertorus
