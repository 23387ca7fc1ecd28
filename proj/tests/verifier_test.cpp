#include <gtest/gtest.h>

#include <regex>

#include "covertorus/error.hpp"
#include "covertorus/verifier.hpp"

namespace covertorus {
namespace {

VerifierConfig small(std::size_t trials) {
  VerifierConfig c;
  c.trials = trials;
  c.seed = 7;
  return c;
}

// Extra row x1 = 1 on every intersection.
TorusPresentation faulty_intersect(const TorusPresentation& a, const TorusPresentation& b) {
  auto x = intersect(a, b);
  std::vector<Integer> z(x.arity(), 0);
  z[0] = 1;
  x.add_row(z, FieldPoint());
  return x;
}

TEST(Rng, CounterStreamsAreReproducible) {
  CounterRng a(1, 2, 3), b(1, 2, 3), c(1, 2, 4);
  std::vector<std::uint64_t> xa, xb, xc;
  for (int i = 0; i < 8; ++i) {
    xa.push_back(a());
    xb.push_back(b());
    xc.push_back(c());
  }
  EXPECT_EQ(xa, xb);
  EXPECT_NE(xa, xc);
  CounterRng r(5, 0, 0);
  for (int i = 0; i < 1000; ++i) {
    auto v = r.between(-3, 3);
    EXPECT_GE(v, -3);
    EXPECT_LE(v, 3);
  }
}

TEST(Generate, RespectsBounds) {
  VerifierConfig cfg;
  cfg.max_arity = 1;
  cfg.max_exponent = 1;
  for (std::size_t i = 0; i < 200; ++i) {
    CounterRng rng(3, 0, i);
    auto t = generate_torus(cfg, rng);
    EXPECT_EQ(t.arity(), 1u);
    for (const auto& r : t.rows()) {
      for (const auto& z : r.exponents) EXPECT_LE(abs(z), 1);
    }
  }
  cfg = VerifierConfig{};
  for (std::size_t i = 0; i < 200; ++i) {
    CounterRng r1(3, 0, i), r2(3, 0, i);
    auto t = generate_torus(cfg, r1);
    EXPECT_EQ(t, generate_torus(cfg, r2));
    EXPECT_LE(t.arity(), 4u);
    EXPECT_LE(components(t).size(), 64u);
  }
}

TEST(Verify, ZeroTrials) {
  CheckContext ctx{small(0)};
  auto r = run_suite(ctx);
  EXPECT_EQ(r.checks.size(), all_checks().size());
  for (const auto& c : r.checks) EXPECT_EQ(c.trials, 0u);
  EXPECT_TRUE(r.passed());
}

TEST(Verify, InvalidConfig) {
  auto cfg = small(1);
  cfg.max_arity = 0;
  EXPECT_THROW(run_suite(CheckContext{cfg}), Error);
  cfg = small(1);
  cfg.only = {"no_such_check"};
  EXPECT_THROW(run_suite(CheckContext{cfg}), Error);
}

TEST(Verify, AllChecksPass) {
  auto cfg = small(25);
  cfg.jobs = 4;
  auto r = run_suite(CheckContext{cfg});
  for (const auto& c : r.checks) {
    for (const auto& f : c.failures) {
      ADD_FAILURE() << c.name << " trial " << f.trial << ": " << f.detail << "\n" << f.instance;
    }
  }
}

TEST(Verify, DeterministicAcrossJobs) {
  auto cfg = small(10);
  auto one = format_report(run_suite(CheckContext{cfg}), false);
  cfg.jobs = 3;
  auto three = format_report(run_suite(CheckContext{cfg}), false);
  EXPECT_EQ(one, three);
  EXPECT_EQ(one.rfind("verify seed=7 trials=10", 0), 0u);
  EXPECT_NE(one.find("result=pass"), std::string::npos);
}

TEST(Verify, CatchesFaultyIntersectionAndReplays) {
  auto cfg = small(60);
  cfg.only = {"intersection_dimension"};
  CheckContext bad{cfg, faulty_intersect};
  auto r = run_suite(bad);
  ASSERT_EQ(r.checks.size(), 1u);
  ASSERT_FALSE(r.checks[0].failures.empty());
  EXPECT_FALSE(r.passed());

  auto text = format_report(r);
  EXPECT_TRUE(std::regex_search(text, std::regex("check=intersection_dimension trials=60 failures=[1-9]")));
  auto replayed = replay_report(text, bad);
  ASSERT_EQ(replayed.size(), r.checks[0].failures.size());
  for (std::size_t i = 0; i < replayed.size(); ++i) {
    EXPECT_TRUE(replayed[i].reproduced) << replayed[i].detail;
    EXPECT_EQ(replayed[i].detail, r.checks[0].failures[i].detail);
  }
  // With the correct intersection the same certificates pass.
  for (const auto& o : replay_report(text, CheckContext{cfg})) EXPECT_FALSE(o.reproduced) << o.detail;
}

TEST(Replay, RejectsOtherText) {
  EXPECT_THROW(replay_report("hello\n", CheckContext{}), Error);
}

}  // namespace
}  // namespace covertorus
