#include <gtest/gtest.h>

#include <random>

#include "covertorus/error.hpp"
#include "covertorus/lattice.hpp"

namespace covertorus {
namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// gcd of all k x k minors, by brute-force subset enumeration and cofactor
// expansion. Independent of the elimination code under test.
Integer cofactor_det(const std::vector<std::vector<Integer>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Integer>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(a[i][c]);
      minor.push_back(row);
    }
    Integer term = a[0][j] * cofactor_det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

Integer minor_gcd(const IntMatrix& m, std::size_t k) {
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  subsets(m.rows(), k, 0, cur, rs);
  subsets(m.cols(), k, 0, cur, cs);
  Integer g = 0;
  for (const auto& r : rs) {
    for (const auto& c : cs) {
      std::vector<std::vector<Integer>> a(k, std::vector<Integer>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) a[i][j] = m(r[i], c[j]);
      g = gcd(g, cofactor_det(a));
    }
  }
  return g;
}

std::vector<Integer> oracle_divisors(const IntMatrix& m) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    Integer g = minor_gcd(m, k);
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

bool is_hnf(const IntMatrix& h, std::size_t rank) {
  std::size_t last_col = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    if (i >= rank) {
      if (!h.row_is_zero(i)) return false;
      continue;
    }
    std::size_t p = 0;
    while (p < h.cols() && h(i, p) == 0) ++p;
    if (p == h.cols() || h(i, p) <= 0) return false;
    if (i > 0 && p <= last_col) return false;
    last_col = p;
    for (std::size_t a = 0; a < i; ++a)
      if (h(a, p) < 0 || h(a, p) >= h(i, p)) return false;
  }
  return true;
}

TEST(Hnf, TwoByTwoExample) {
  IntMatrix m{{2, 4}, {1, 3}};
  auto r = hnf(m);
  EXPECT_EQ(r.u * m, r.h);
  EXPECT_EQ(abs(determinant(r.u)), 1);
  EXPECT_EQ(r.h, (IntMatrix{{1, 1}, {0, 2}}));
  EXPECT_EQ(r.rank, 2u);
}

TEST(Hnf, IdentityAndZero) {
  auto id = IntMatrix::identity(3);
  auto r = hnf(id);
  EXPECT_EQ(r.h, id);
  EXPECT_EQ(r.u, id);
  IntMatrix z(2, 2);
  auto rz = hnf(z);
  EXPECT_EQ(rz.h, z);
  EXPECT_EQ(rz.u, IntMatrix::identity(2));
  EXPECT_EQ(rz.rank, 0u);
}

TEST(Hnf, RandomMatricesSatisfyContract) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    auto m = random_matrix(rng, r, c, 9);
    auto res = hnf(m);
    ASSERT_EQ(res.u * m, res.h) << to_string(m);
    ASSERT_EQ(abs(determinant(res.u)), 1) << to_string(m);
    ASSERT_TRUE(is_hnf(res.h, res.rank)) << to_string(res.h);
    ASSERT_EQ(res.rank, rank(m));
    // Uniqueness: a unimodular change of rows gives the same form.
    auto w = random_matrix(rng, r, r, 3);
    if (abs(determinant(w)) == 1) {
      ASSERT_EQ(hnf(w * m).h, res.h);
    }
  }
}

TEST(Snf, Examples) {
  EXPECT_EQ(snf(IntMatrix{{2, 0}, {0, 3}}).divisors(), (std::vector<Integer>{1, 6}));
  auto r = snf(IntMatrix{{2, 3}});
  EXPECT_EQ(r.d, (IntMatrix{{1, 0}}));
  EXPECT_EQ(snf(IntMatrix{{2, 0}, {0, 2}}).divisors(), (std::vector<Integer>{2, 2}));
}

TEST(Snf, AgreesWithDeterminantDivisorOracle) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 250; ++t) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    auto m = random_matrix(rng, r, c, 8);
    auto res = snf(m);
    ASSERT_EQ(res.u * m * res.v, res.d) << to_string(m);
    ASSERT_EQ(abs(determinant(res.u)), 1);
    ASSERT_EQ(abs(determinant(res.v)), 1);
    for (std::size_t i = 0; i < res.d.rows(); ++i) {
      for (std::size_t j = 0; j < res.d.cols(); ++j) {
        if (i != j) {
          ASSERT_EQ(res.d(i, j), 0);
        }
      }
    }
    auto div = res.divisors();
    for (std::size_t i = 0; i + 1 < div.size(); ++i) ASSERT_TRUE(div[i + 1] % div[i] == 0);
    ASSERT_EQ(div, oracle_divisors(m)) << to_string(m);
  }
}

TEST(CompleteUnimodular, Examples) {
  std::vector<Integer> a{2, 3};
  EXPECT_EQ(complete_unimodular(a), (IntMatrix{{2, 3}, {1, 2}}));
  std::vector<Integer> b{1, 0, 0};
  EXPECT_EQ(complete_unimodular(b), IntMatrix::identity(3));
  std::vector<Integer> c{2, 4};
  try {
    complete_unimodular(c);
    FAIL() << "expected NonPrimitive";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonPrimitive);
  }
}

TEST(CompleteUnimodular, RandomPrimitiveRows) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-20, 20);
  int done = 0;
  while (done < 400) {
    std::size_t n = 1 + rng() % 6;
    std::vector<Integer> row(n);
    for (auto& x : row) x = d(rng);
    if (content(row) != 1) continue;
    ++done;
    auto a = complete_unimodular(row);
    ASSERT_EQ(a.row_vector(0), row);
    ASSERT_EQ(abs(determinant(a)), 1);
  }
}

TEST(LinearSolve, Examples) {
  {
    RatMatrix a{{1, -1}};
    std::vector<CoverPoint> b{CoverPoint()};
    auto s = linear_solve(a, b);
    ASSERT_TRUE(s);
    EXPECT_EQ(s->particular, (PointTuple{CoverPoint(), CoverPoint()}));
    EXPECT_EQ(s->kernel, (IntMatrix{{1, 1}}));
  }
  {
    RatMatrix a{{1}, {1}};
    std::vector<CoverPoint> b{CoverPoint::kappa(), CoverPoint::kappa(2)};
    EXPECT_FALSE(linear_solve(a, b));
  }
  {
    RatMatrix a{{2, 3}};
    std::vector<CoverPoint> b{CoverPoint::kappa()};
    auto s = linear_solve(a, b);
    ASSERT_TRUE(s);
    EXPECT_EQ(s->particular[0] * Rational(2) + s->particular[1] * Rational(3),
              CoverPoint::kappa());
    EXPECT_EQ(s->particular, (PointTuple{CoverPoint::kappa(Rational(1, 2)), CoverPoint()}));
    EXPECT_EQ(s->kernel, (IntMatrix{{3, -2}}));
  }
}

TEST(Saturate, Examples) {
  auto a = saturate(IntMatrix{{2, 2}});
  EXPECT_EQ(a.basis, (IntMatrix{{1, 1}}));
  EXPECT_EQ(a.index, 2);
  auto b = saturate(IntMatrix{{1, 0}});
  EXPECT_EQ(b.basis, (IntMatrix{{1, 0}}));
  EXPECT_EQ(b.index, 1);
  auto c = saturate(IntMatrix{{6}});
  EXPECT_EQ(c.basis, (IntMatrix{{1}}));
  EXPECT_EQ(c.index, 6);
}

TEST(Saturate, IndexAndIdempotence) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 3, c = 1 + rng() % 4;
    auto m = random_matrix(rng, r, c, 6);
    auto s = saturate(m);
    auto again = saturate(s.basis);
    ASSERT_EQ(again.basis, s.basis);
    ASSERT_EQ(again.index, 1);
    ASSERT_EQ(s.basis.rows(), rank(m));
    // index * v lies in the row lattice of m for every basis vector v.
    auto hm = hnf(m).h;
    for (std::size_t i = 0; i < s.basis.rows(); ++i) {
      IntMatrix stacked = hm;
      std::vector<Integer> v = s.basis.row_vector(i);
      for (auto& x : v) x *= s.index;
      stacked.append_row(v);
      ASSERT_EQ(hnf(stacked).h.row_block(0, stacked.rows() - 1), hm);
    }
    Integer prod = 1;
    for (const auto& d : snf(m).divisors()) prod *= d;
    ASSERT_EQ(prod, s.index);
  }
}

TEST(IntegerKernel, AnnihilatesAndIsSaturated) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 3, c = 1 + rng() % 5;
    auto m = random_matrix(rng, r, c, 5);
    auto k = integer_kernel(m);
    ASSERT_EQ(k.rows(), c - rank(m));
    if (k.rows() == 0) continue;
    ASSERT_TRUE((m * k.transpose()).is_zero());
    ASSERT_EQ(saturate(k).index, 1);
  }
}

}  // namespace
}  // namespace covertorus
