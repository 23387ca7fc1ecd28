#include <gtest/gtest.h>

#include <random>
#include <set>
#include <thread>

#include "covertorus/cover.hpp"
#include "covertorus/linear_set.hpp"

namespace covertorus {
namespace {

CoverPoint random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4), idx(1, 3);
  CoverPoint v = CoverPoint::kappa(make_rational(num(rng), den(rng)));
  v += CoverPoint::generic(idx(rng), make_rational(num(rng), den(rng)));
  v += CoverPoint::constant(idx(rng), make_rational(num(rng), den(rng)));
  return v;
}

TEST(CoverPoint, ZeroCoordinatesAreDropped) {
  CoverPoint v = CoverPoint::generic(1) - CoverPoint::generic(1);
  EXPECT_TRUE(v.is_zero());
  EXPECT_EQ(to_string(v), "0");
}

TEST(CoverPoint, Printing) {
  CoverPoint v = CoverPoint::kappa(Rational(1, 2)) + CoverPoint::generic(1) -
                 CoverPoint::constant(1, Rational(2, 3));
  EXPECT_EQ(to_string(v), "1/2*k - 2/3*g1 + e1");
}

TEST(ExpPoint, Examples) {
  EXPECT_TRUE(exp_point(CoverPoint()).is_one());
  EXPECT_TRUE(exp_point(CoverPoint::kappa()).is_one());
  auto c = exp_point(CoverPoint::kappa(Rational(3, 2)) + CoverPoint::generic(1));
  EXPECT_EQ(c.rep(), CoverPoint::kappa(Rational(1, 2)) + CoverPoint::generic(1));
}

TEST(ExpPoint, HomomorphismWithKernelZKappa) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 500; ++t) {
    auto u = random_point(rng), v = random_point(rng);
    ASSERT_EQ(exp_point(u + v), mul_field(exp_point(u), exp_point(v)));
    Rational k = exp_point(u).rep().kernel_coefficient();
    ASSERT_TRUE(k >= 0 && k < 1);
    bool in_kernel = u.is_torsion() && u.kernel_coefficient().get_den() == 1;
    ASSERT_EQ(exp_point(u).is_one(), in_kernel);
  }
}

TEST(MulField, Examples) {
  auto minus_one = exp_point(CoverPoint::kappa(Rational(1, 2)));
  EXPECT_TRUE(mul_field(minus_one, minus_one).is_one());
  auto c = exp_point(CoverPoint::generic(4));
  EXPECT_EQ(mul_field(c, FieldPoint::one()), c);
  EXPECT_EQ(mul_field(exp_point(CoverPoint::generic(1)), exp_point(CoverPoint::generic(2))),
            exp_point(CoverPoint::generic(1) + CoverPoint::generic(2)));
}

TEST(FieldRoots, Examples) {
  auto sq = field_roots(FieldPoint::one(), 2);
  ASSERT_EQ(sq.size(), 2u);
  EXPECT_TRUE(sq[0].is_one());
  EXPECT_EQ(sq[1], exp_point(CoverPoint::kappa(Rational(1, 2))));
  EXPECT_EQ(field_roots(FieldPoint::one(), 1).size(), 1u);
  auto c = exp_point(CoverPoint::generic(1));
  auto cube = field_roots(c, 3);
  ASSERT_EQ(cube.size(), 3u);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_EQ(cube[j], exp_point(CoverPoint::generic(1, Rational(1, 3)) +
                                 CoverPoint::kappa(Rational(j, 3))));
    EXPECT_EQ(mul_field(mul_field(cube[j], cube[j]), cube[j]), c);
  }
}

TEST(FieldRoots, CountDistinctPowersAndTransitivity) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    auto c = exp_point(random_point(rng));
    int m = 1 + rng() % 6;
    auto roots = field_roots(c, m);
    std::set<FieldPoint> distinct(roots.begin(), roots.end());
    ASSERT_EQ(distinct.size(), static_cast<std::size_t>(m));
    for (const auto& r : roots) ASSERT_EQ(r.pow(m), c);
    // Roots of unity act simply transitively.
    auto unity = field_roots(FieldPoint::one(), m);
    for (const auto& r : roots) {
      std::set<FieldPoint> orbit;
      for (const auto& z : unity) orbit.insert(mul_field(z, r));
      ASSERT_EQ(orbit, distinct);
    }
    // Every mk-th root is a k-th root of some m-th root.
    int k = 1 + rng() % 3;
    std::set<FieldPoint> nested;
    for (const auto& r : roots)
      for (const auto& s : field_roots(r, k)) nested.insert(s);
    auto big = field_roots(c, m * k);
    ASSERT_EQ(nested, std::set<FieldPoint>(big.begin(), big.end()));
  }
}

TEST(RootOfUnity, Examples) {
  EXPECT_EQ(*is_root_of_unity(exp_point(CoverPoint::kappa(Rational(1, 2)))), 2);
  EXPECT_EQ(*is_root_of_unity(exp_point(CoverPoint::kappa(Rational(2, 3)))), 3);
  EXPECT_FALSE(is_root_of_unity(exp_point(CoverPoint::generic(1))));
  EXPECT_EQ(*is_root_of_unity(FieldPoint::one()), 1);
}

TEST(FieldPoint, Printing) {
  EXPECT_EQ(to_string(FieldPoint::one()), "u(0)");
  auto c = exp_point(CoverPoint::kappa(Rational(1, 2)) + CoverPoint::constant(1, 2));
  EXPECT_EQ(to_string(c), "u(1/2)*g1^2");
}

TEST(BasisRegistry, ConstantsAndFreshIndices) {
  BasisRegistry reg;
  EXPECT_EQ(reg.declare_constant("g3"), 3u);
  auto pi = reg.declare_constant("pi");
  EXPECT_EQ(pi, BasisRegistry::kNamedConstantBase);
  EXPECT_EQ(reg.constant_name(pi), "pi");
  EXPECT_EQ(reg.declare_constant("pi"), pi);
  reg.observe(PointTuple{CoverPoint::generic(7)});
  EXPECT_EQ(reg.fresh_generic(), 8u);
  EXPECT_EQ(reg.fresh_generic(), 9u);
}

TEST(BasisRegistry, ConcurrentAllocationsAreDistinct) {
  BasisRegistry reg;
  std::vector<std::vector<std::uint32_t>> got(4);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 1000; ++i) got[t].push_back(reg.fresh_generic());
    });
  }
  for (auto& th : threads) th.join();
  std::set<std::uint32_t> all;
  for (const auto& g : got) all.insert(g.begin(), g.end());
  EXPECT_EQ(all.size(), 4000u);
}

TEST(LinearSet, NormalizationMakesEqualityStructural) {
  LinearSet a(2, {{{Rational(1), Rational(-1)}, CoverPoint::kappa(Rational(1, 3))}});
  LinearSet b(2, {{{Rational(-2), Rational(2)}, CoverPoint::kappa(Rational(-2, 3))}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.dimension(), 1u);
  EXPECT_TRUE(a.contains({CoverPoint::kappa(Rational(1, 3)), CoverPoint()}));
  LinearSet empty = a.with({{{Rational(1), Rational(-1)}, CoverPoint()}});
  EXPECT_TRUE(empty.empty());
}

TEST(LinearSet, PermutedSwapsCoordinates) {
  // y - x = κ/3 becomes x - y = κ/3 under the swap.
  LinearSet s(2, {{{Rational(-1), Rational(1)}, CoverPoint::kappa(Rational(1, 3))}});
  LinearSet t(2, {{{Rational(1), Rational(-1)}, CoverPoint::kappa(Rational(1, 3))}});
  EXPECT_EQ(s.permuted({1, 0}), t);
  PointTuple p{CoverPoint::generic(1), CoverPoint::generic(1) + CoverPoint::kappa(Rational(1, 3))};
  EXPECT_TRUE(s.contains(p));
  EXPECT_TRUE(t.contains({p[1], p[0]}));
}

}  // namespace
}  // namespace covertorus
