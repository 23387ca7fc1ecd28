#include "covertorus/lattice.hpp"

#include <algorithm>
#include <stdexcept>

#include "covertorus/error.hpp"

namespace covertorus {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  }
  return out;
}

namespace {

template <class T>
std::string matrix_string(const Matrix<T>& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += m(i, j).get_str();
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace

std::string to_string(const IntMatrix& m) { return matrix_string(m); }
std::string to_string(const RatMatrix& m) { return matrix_string(m); }

HnfResult hnf(const IntMatrix& m) {
  HnfResult r{m, IntMatrix::identity(m.rows()), 0};
  IntMatrix& h = r.h;
  IntMatrix& u = r.u;
  const std::size_t rows = h.rows();
  std::size_t p = 0;
  for (std::size_t col = 0; col < h.cols() && p < rows; ++col) {
    bool has_pivot = false;
    for (;;) {
      // Smallest nonzero entry on or below the pivot row moves up.
      std::size_t best = rows;
      for (std::size_t i = p; i < rows; ++i) {
        if (h(i, col) == 0) continue;
        if (best == rows || abs(h(i, col)) < abs(h(best, col))) best = i;
      }
      if (best == rows) break;
      has_pivot = true;
      h.swap_rows(p, best);
      u.swap_rows(p, best);
      bool clean = true;
      for (std::size_t i = p + 1; i < rows; ++i) {
        if (h(i, col) == 0) continue;
        Integer q = floor_div(h(i, col), h(p, col));
        h.add_row_multiple(i, p, -q);
        u.add_row_multiple(i, p, -q);
        if (h(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (!has_pivot) continue;
    if (h(p, col) < 0) {
      h.negate_row(p);
      u.negate_row(p);
    }
    for (std::size_t i = 0; i < p; ++i) {
      Integer q = floor_div(h(i, col), h(p, col));
      h.add_row_multiple(i, p, -q);
      u.add_row_multiple(i, p, -q);
    }
    ++p;
  }
  r.rank = p;
  return r;
}

std::vector<Integer> SnfResult::divisors() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) {
    if (d(i, i) != 0) out.push_back(d(i, i));
  }
  return out;
}

SnfResult snf(const IntMatrix& m) {
  SnfResult r{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
  IntMatrix& a = r.d;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();

  auto move_to_pivot = [&](std::size_t t, std::size_t i, std::size_t j) {
    a.swap_rows(t, i);
    r.u.swap_rows(t, i);
    a.swap_cols(t, j);
    r.v.swap_cols(t, j);
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    std::size_t bi = rows, bj = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (a(i, j) == 0) continue;
        if (bi == rows || abs(a(i, j)) < abs(a(bi, bj))) {
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == rows) break;
    move_to_pivot(t, bi, bj);

    for (;;) {
      bool residue = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = floor_div(a(i, t), a(t, t));
        a.add_row_multiple(i, t, -q);
        r.u.add_row_multiple(i, t, -q);
        if (a(i, t) != 0) residue = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = floor_div(a(t, j), a(t, t));
        a.add_col_multiple(j, t, -q);
        r.v.add_col_multiple(j, t, -q);
        if (a(t, j) != 0) residue = true;
      }
      if (residue) {
        // A remainder smaller than the pivot exists in row t or column t.
        std::size_t si = t, sj = t;
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (a(i, t) != 0 && abs(a(i, t)) < abs(a(si, sj))) {
            si = i;
            sj = t;
          }
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a(t, j) != 0 && abs(a(t, j)) < abs(a(si, sj))) {
            si = t;
            sj = j;
          }
        }
        move_to_pivot(t, si, sj);
        continue;
      }
      // Enforce the divisor chain on the remaining block.
      std::size_t fix_row = rows;
      for (std::size_t i = t + 1; i < rows && fix_row == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a(i, j) % a(t, t) != 0) {
            fix_row = i;
            break;
          }
        }
      }
      if (fix_row == rows) break;
      a.add_row_multiple(t, fix_row, Integer(1));
      r.u.add_row_multiple(t, fix_row, Integer(1));
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      r.u.negate_row(t);
    }
  }
  return r;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("determinant of a non-square matrix");
  }
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  return abs(determinant(m)) == 1;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  auto r = hnf(m);
  if (m.rows() != m.cols() || !(r.h == IntMatrix::identity(m.rows()))) {
    throw std::invalid_argument("matrix is not unimodular: " + to_string(m));
  }
  return r.u;
}

IntMatrix complete_unimodular(std::span<const Integer> row) {
  const std::size_t n = row.size();
  if (n == 0 || content(row) != 1) {
    std::string s = "(";
    for (std::size_t i = 0; i < n; ++i) s += (i ? "," : "") + row[i].get_str();
    throw Error(ErrorCode::kNonPrimitive, "row " + s + ") is not primitive");
  }
  IntMatrix column(n, 1);
  for (std::size_t i = 0; i < n; ++i) column(i, 0) = row[i];
  // u * column == e_1, so row == e_1^T * (u^{-1})^T.
  IntMatrix a = inverse_unimodular(hnf(column).u).transpose();
  if (n >= 2 && determinant(a) < 0) a.negate_row(n - 1);

  std::size_t p = 0;
  while (row[p] == 0) ++p;
  const Integer mag = abs(row[p]);
  const Integer sign = row[p] > 0 ? 1 : -1;
  for (std::size_t i = 1; i < n; ++i) {
    Integer q = floor_div(a(i, p), mag);
    a.add_row_multiple(i, 0, -q * sign);
  }
  return a;
}

std::size_t rank(const IntMatrix& m) { return hnf(m).rank; }

std::size_t rank(const RatMatrix& m) {
  RatMatrix copy = m;
  return rref(copy).size();
}

IntMatrix clear_denominators(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer d = common_denominator(m.row(i));
    std::vector<Integer> r(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational scaled = m(i, j) * Rational(d);
      r[j] = scaled.get_num();
    }
    Integer g = content(r);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(i, j) = g == 0 ? Integer(0) : Integer(r[j] / g);
    }
  }
  return out;
}

std::vector<std::size_t> rref(RatMatrix& a, std::vector<CoverPoint>& rhs) {
  const bool with_rhs = !rhs.empty();
  if (with_rhs && rhs.size() != a.rows()) {
    throw std::invalid_argument("rref: rhs length does not match rows");
  }
  std::vector<std::size_t> pivots;
  std::size_t p = 0;
  for (std::size_t col = 0; col < a.cols() && p < a.rows(); ++col) {
    std::size_t sel = p;
    while (sel < a.rows() && a(sel, col) == 0) ++sel;
    if (sel == a.rows()) continue;
    a.swap_rows(p, sel);
    if (with_rhs) std::swap(rhs[p], rhs[sel]);
    Rational inv = 1 / a(p, col);
    for (std::size_t j = 0; j < a.cols(); ++j) a(p, j) *= inv;
    if (with_rhs) rhs[p] *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == p || a(i, col) == 0) continue;
      Rational f = -a(i, col);
      a.add_row_multiple(i, p, f);
      if (with_rhs) rhs[i].add_scaled(rhs[p], f);
    }
    pivots.push_back(col);
    ++p;
  }
  return pivots;
}

std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<CoverPoint> none;
  return rref(a, none);
}

namespace {

// Rational kernel basis from an RREF with the given pivots, one vector per
// free column.
RatMatrix kernel_from_rref(const RatMatrix& r, const std::vector<std::size_t>& pivots) {
  const std::size_t n = r.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  RatMatrix out(0, n);
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
    out.append_row(v);
  }
  return out;
}

}  // namespace

IntMatrix integer_kernel(const RatMatrix& a) {
  RatMatrix r = a;
  auto pivots = rref(r);
  RatMatrix k = kernel_from_rref(r, pivots);
  if (k.rows() == 0) return IntMatrix(0, a.cols());
  return saturate(clear_denominators(k)).basis;
}

IntMatrix integer_kernel(const IntMatrix& a) { return integer_kernel(to_rational(a)); }

std::optional<LinearSolution> linear_solve(const RatMatrix& a,
                                           std::span<const CoverPoint> b) {
  if (b.size() != a.rows()) {
    throw std::invalid_argument("linear_solve: rhs length does not match rows");
  }
  RatMatrix r = a;
  std::vector<CoverPoint> rhs(b.begin(), b.end());
  std::vector<std::size_t> pivots;
  if (!rhs.empty()) {
    pivots = rref(r, rhs);
  }
  for (std::size_t i = pivots.size(); i < rhs.size(); ++i) {
    if (!rhs[i].is_zero()) return std::nullopt;
  }
  LinearSolution sol;
  sol.particular.assign(a.cols(), CoverPoint());
  for (std::size_t i = 0; i < pivots.size(); ++i) sol.particular[pivots[i]] = rhs[i];
  RatMatrix kb = kernel_from_rref(r, pivots);
  sol.kernel = kb.rows() == 0 ? IntMatrix(0, a.cols())
                              : saturate(clear_denominators(kb)).basis;
  return sol;
}

SaturationResult saturate(const IntMatrix& rows) {
  const std::size_t n = rows.cols();
  SaturationResult out{IntMatrix(0, n), Integer(1)};
  if (rows.rows() == 0) return out;
  auto s = snf(rows);
  auto divisors = s.divisors();
  IntMatrix vinv = inverse_unimodular(s.v);
  IntMatrix basis = vinv.row_block(0, divisors.size());
  for (const auto& d : divisors) out.index *= d;
  auto h = hnf(basis);
  out.basis = h.h.row_block(0, h.rank);
  return out;
}

}  // namespace covertorus
