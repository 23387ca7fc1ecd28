#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "covertorus/pqf.hpp"
#include "covertorus/specialization.hpp"
#include "covertorus/syntax.hpp"

namespace covertorus {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

Document reparse(const Run& r) {
  auto p = parse(r.out);
  EXPECT_TRUE(p.ok()) << r.out;
  return p.ok() ? *p.document : Document();
}

std::vector<TorusPresentation> tori(const Document& d) {
  std::vector<TorusPresentation> out;
  for (const auto& decl : d.decls()) {
    if (const auto* t = std::get_if<TorusDecl>(&decl)) out.push_back(t->torus);
  }
  return out;
}

TEST(Cli, Examples) {
  auto d = run({"dim", "torus T n=2 eq x1^2*x2^3 = g1"});
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.out, "dim=1\n");

  auto r = run({"roots", "-m", "2", "torus T n=1 eq x1 = u(0)"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto roots = tori(reparse(r));
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[0].rows()[0].value, exp_point(CoverPoint()));
  EXPECT_EQ(roots[1].rows()[0].value, exp_point(CoverPoint::kappa(make_rational(1, 2))));

  auto s = run({"spec", "(e1, e2)", "(e3, e3)"});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(s.out, "specialization=true rank_drop=1\n");
  EXPECT_EQ(run({"spec", "(e1, e1)", "(e2, e3)"}).out, "specialization=false\n");
}

TEST(Cli, ExitCodes) {
  auto p = run({"-f", "-", "dim", "T"}, "torus T n=1 eq x1^ = u(1)\n");
  EXPECT_EQ(p.code, 2);
  EXPECT_NE(p.err.find("<stdin>:1:18: error:"), std::string::npos) << p.err;

  auto e = run({"components", "torus T n=1 eq x1^0 = u(1/2)"});
  EXPECT_EQ(e.code, 1);
  EXPECT_EQ(e.err.rfind("error: EmptyTorus: ", 0), 0u) << e.err;

  EXPECT_EQ(run({"spec", "(e1)", "(e1, e2)"}).err.rfind("error: LengthMismatch: ", 0), 0u);
  EXPECT_EQ(run({"roots", "-m", "2", "torus T n=1 eq x1^2 = u(0)"}).code, 1);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"roots", "torus T n=1"}).code, 2);
  EXPECT_EQ(run({"dim", "nosuch"}).code, 2);
  EXPECT_EQ(run({"intersect", "torus T n=1"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, MalformedFilesExitTwoWithSpans) {
  for (const auto& f : fs::directory_iterator(COVERTORUS_MALFORMED_DIR)) {
    SCOPED_TRACE(f.path().filename().string());
    std::FILE* fp = std::fopen(f.path().c_str(), "r");
    ASSERT_NE(fp, nullptr);
    std::size_t line = 0, col = 0;
    ASSERT_EQ(std::fscanf(fp, "# expect %zu:%zu", &line, &col), 2);
    std::fclose(fp);
    auto r = run({"-f", f.path().string(), "rank", "(e1)"});
    EXPECT_EQ(r.code, 2);
    std::string where = f.path().string() + ":" + std::to_string(line) + ":" + std::to_string(col) + ": error:";
    EXPECT_EQ(r.err.rfind(where, 0), 0u) << r.err;
  }
}

TEST(Cli, OutputsReparseToTheComputedObjects) {
  const std::string src =
      "const c\n"
      "torus T n=2 eq x1^2*x2^4 = c^2*u(1/3)\n"
      "torus U n=2 eq x1^3*x2^-1 = u(1/4)\n"
      "point a = e1 + c\n"
      "tuple t = (a, 2*e1 - k, e2)\n";
  auto doc = *parse(src).document;
  const auto& t = doc.torus("T")->torus;
  const auto& u = doc.torus("U")->torus;

  auto comps = tori(reparse(run({"-f", "-", "components", "T"}, src)));
  auto want = components(t);
  ASSERT_EQ(comps.size(), want.size());
  for (std::size_t i = 0; i < comps.size(); ++i) EXPECT_TRUE(same_set(comps[i], want[i]));

  auto canon = tori(reparse(run({"-f", "-", "canon", "T"}, src)));
  auto branches = canonical_form(t);
  ASSERT_EQ(canon.size(), branches.size());
  for (std::size_t i = 0; i < canon.size(); ++i) {
    // Each branch is a piece of T cut out by rows of a unimodular matrix.
    EXPECT_TRUE(is_irreducible(canon[i]));
    EXPECT_TRUE(same_set(intersect(canon[i], t), canon[i]));
    EXPECT_EQ(torus_dimension(canon[i]), torus_dimension(t));
  }

  auto x = tori(reparse(run({"-f", "-", "intersect", "T", "U"}, src)));
  ASSERT_EQ(x.size(), 1u);
  EXPECT_EQ(normal_form(x[0]), normal_form(intersect(t, u)));

  auto p = tori(reparse(run({"-f", "-", "power", "-m", "3", "U"}, src)));
  ASSERT_EQ(p.size(), 1u);
  EXPECT_TRUE(same_set(p[0], power(u, 3)));

  auto r = tori(reparse(run({"-f", "-", "roots", "-m", "2", "U"}, src)));
  auto rw = mth_roots(u, 2);
  ASSERT_EQ(r.size(), rw.size());
  for (std::size_t i = 0; i < r.size(); ++i) EXPECT_TRUE(same_set(r[i], rw[i]));

  auto l = reparse(run({"-f", "-", "locus", "t"}, src));
  EXPECT_EQ(l.linear("locus")->set, locus(*doc.tuple("t")).linear());

  auto lc = reparse(run({"-f", "-", "log-components", "-B", "1", "U"}, src));
  auto lw = log_components(u, 1);
  ASSERT_EQ(lc.decls().size(), lw.size() + 1);  // plus the const line
  for (std::size_t i = 0; i < lw.size(); ++i) {
    EXPECT_EQ(lc.linear("L" + std::to_string(i + 1))->set, lw[i].linear());
  }

  EXPECT_EQ(run({"-f", "-", "rank", "t"}, src).out, "rank=2\n");
  EXPECT_EQ(run({"-f", "-", "rank", "t", "over", "a"}, src).out, "rank=1\n");
  EXPECT_EQ(run({"-f", "-", "dim", "T"}, src).out, "dim=1\n");
}

TEST(Cli, WitnessesAreVerified) {
  auto d = run({"diag-step", "(e1, e2, e1+e2)", "(e3, e3, 2*e3)"});
  ASSERT_EQ(d.code, 0) << d.err;
  auto w = *reparse(d).tuple("witness");
  PointTuple a{CoverPoint::generic(1), CoverPoint::generic(2),
               CoverPoint::generic(1) + CoverPoint::generic(2)};
  EXPECT_EQ(w[0], w[1]);
  EXPECT_TRUE(is_specialization(a, w).verdict);
  EXPECT_EQ(*is_specialization(a, w).rank_drop, 1u);

  auto m = run({"amalgamate", "(e1)", "(e3)", "(e1+e2)", "(e3)", "(e4)", "(e3)"});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_TRUE(reparse(m).tuple("b_star"));
  EXPECT_EQ(run({"diag-step", "(e1, e2)", "(e1, e2)"}).err.rfind("error: PreconditionViolated", 0), 0u);
}

TEST(Cli, VerifyAndReplay) {
  auto a = run({"verify", "--seed", "5", "--trials", "3", "--no-time"});
  auto b = run({"verify", "--seed", "5", "--trials", "3", "--no-time", "--jobs", "2"});
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.find("wall_ms"), std::string::npos);

  ::setenv("COVERTORUS_SEED", "5", 1);
  EXPECT_EQ(run({"verify", "--trials", "3", "--no-time"}).out, a.out);
  ::unsetenv("COVERTORUS_SEED");

  auto bad = run({"verify", "--seed", "5", "--trials", "40", "--only", "intersection_dimension",
                  "--inject-fault", "intersect"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("result=fail"), std::string::npos);
  auto again = run({"replay", "-", "--inject-fault", "intersect"}, bad.out);
  EXPECT_EQ(again.code, 1);
  EXPECT_NE(again.out.find("reproduced=true"), std::string::npos);
  EXPECT_EQ(again.out.find("reproduced=false"), std::string::npos);
  EXPECT_EQ(run({"replay", "-"}, bad.out).code, 0);
  EXPECT_EQ(run({"replay", "-"}, "nonsense\n").code, 1);
}

}  // namespace
}  // namespace covertorus
