#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "covertorus/syntax.hpp"
#include "support.hpp"

namespace covertorus {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> files_in(const char* dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

Document parse_ok(std::string_view text) {
  auto r = parse(text);
  for (const auto& d : r.diagnostics) ADD_FAILURE() << format_diagnostic(d, "input");
  if (!r.ok()) return Document();
  return *r.document;
}

TEST(Parse, TorusExample) {
  auto doc = parse_ok("torus T n=2  eq x1^2*x2^3 = u(1/2)");
  ASSERT_EQ(doc.decls().size(), 1u);
  const auto* t = doc.torus("T");
  ASSERT_NE(t, nullptr);
  ASSERT_EQ(t->torus.arity(), 2u);
  ASSERT_EQ(t->torus.rows().size(), 1u);
  EXPECT_EQ(t->torus.rows()[0].exponents, (std::vector<Integer>{2, 3}));
  EXPECT_EQ(t->torus.rows()[0].value, exp_point(CoverPoint::kappa(Rational(1, 2))));
  EXPECT_EQ(t->span.offset, 0u);
  EXPECT_EQ(t->span.length, 34u);
}

TEST(Parse, PointExample) {
  auto doc = parse_ok("point a = 1/2*k + e1");
  const auto* p = doc.point("a");
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->value, CoverPoint::kappa(make_rational(1, 2)) + CoverPoint::generic(1));
}

TEST(Parse, DanglingCaret) {
  std::string text = "torus T n=1 eq x1^ = u(1)";
  auto r = parse(text);
  ASSERT_FALSE(r.ok());
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.diagnostics[0].span.offset, text.find('^'));
  EXPECT_EQ(r.diagnostics[0].span.length, 1u);
}

TEST(Parse, NamesAndValues) {
  auto doc = parse_ok(
      "const c\n"
      "point a = e1 + c\n"
      "point b = 2*a - k\n"
      "tuple t = (a, -g2)\n"
      "torus T n=2 eq x1*x2^-1 = c^1/2*u(3/4)\n");
  auto c = CoverPoint::constant(BasisRegistry::kNamedConstantBase);
  EXPECT_EQ(doc.point("b")->value, 2 * (CoverPoint::generic(1) + c) - CoverPoint::kappa());
  EXPECT_EQ(*doc.tuple("t"), (PointTuple{CoverPoint::generic(1) + c, -CoverPoint::constant(2)}));
  EXPECT_EQ(*doc.tuple("a"), PointTuple{CoverPoint::generic(1) + c});
  EXPECT_EQ(doc.torus("T")->torus.rows()[0].value,
            exp_point(c * make_rational(1, 2) + CoverPoint::kappa(make_rational(3, 4))));
  EXPECT_FALSE(doc.tuple("T"));
}

TEST(Parse, CellsWithOneNameFormAUnion) {
  auto doc = parse_ok(slurp(fs::path(COVERTORUS_CORPUS_DIR) / "cell_union.ct"));
  auto s = doc.set("S");
  ASSERT_TRUE(s);
  EXPECT_EQ(s->cells().size(), 2u);
  EXPECT_TRUE(member({CoverPoint::generic(1), CoverPoint::generic(1)}, *s));
  EXPECT_TRUE(member({CoverPoint::kappa(), CoverPoint()}, *s));
  EXPECT_FALSE(member({CoverPoint::kappa(), CoverPoint::kappa(2)}, *s));
}

TEST(Parse, ContextNamesAreVisible) {
  auto base = parse_ok("const c\npoint a = e1");
  auto r = parse("tuple t = (a, c)", &base);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.document->decls().size(), 3u);
  EXPECT_EQ(r.document->tuple("t")->size(), 2u);
}

TEST(Print, Monomials) {
  EXPECT_EQ(print_monomial({2, 3}), "x1^2*x2^3");
  EXPECT_EQ(print_monomial({0, -1, 1}), "x2^-1*x3");
  EXPECT_EQ(print_monomial({0, 0}), "x1^0");
}

TEST(Corpus, RoundTrip) {
  auto files = files_in(COVERTORUS_CORPUS_DIR);
  EXPECT_GE(files.size(), 30u);
  for (const auto& f : files) {
    SCOPED_TRACE(f.filename().string());
    auto first = parse(slurp(f));
    ASSERT_TRUE(first.ok()) << format_diagnostic(first.diagnostics[0], f.string());
    std::string printed = print(*first.document);
    auto second = parse(printed);
    ASSERT_TRUE(second.ok()) << printed;
    EXPECT_EQ(*second.document, *first.document) << printed;
    EXPECT_EQ(print(*second.document), printed);
  }
}

TEST(Malformed, DiagnosticsPointAtTheError) {
  auto files = files_in(COVERTORUS_MALFORMED_DIR);
  EXPECT_GE(files.size(), 10u);
  for (const auto& f : files) {
    SCOPED_TRACE(f.filename().string());
    std::string text = slurp(f);
    std::size_t line = 0, col = 0;
    ASSERT_EQ(std::sscanf(text.c_str(), "# expect %zu:%zu", &line, &col), 2);
    auto r = parse(text);
    ASSERT_FALSE(r.ok());
    ASSERT_FALSE(r.diagnostics.empty());
    const auto& d = r.diagnostics[0];
    EXPECT_EQ(d.span.line, line) << d.message;
    EXPECT_EQ(d.span.column, col) << d.message;
    EXPECT_FALSE(d.message.empty());
    EXPECT_LE(d.span.offset + d.span.length, text.size());
  }
}

TEST(Malformed, RecoversAndReportsLaterErrors) {
  auto r = parse("point a = ?\npoint b = e1\npoint c = nope\n");
  ASSERT_EQ(r.diagnostics.size(), 2u);
  EXPECT_EQ(r.diagnostics[1].span.line, 3u);
}

TEST(RoundTrip, RandomObjects) {
  std::mt19937_64 rng(137);
  for (int t = 0; t < 200; ++t) {
    Document doc;
    auto tor = testing::random_torus(rng, 4, 8);
    doc.add(TorusDecl{"T", tor, {}});
    PointTuple tup;
    for (std::size_t i = 0; i < 1 + rng() % 4; ++i) {
      auto v = testing::constant_point(rng);
      if (rng() % 2) v += CoverPoint::generic(1 + rng() % 5, testing::small_rational(rng));
      tup.push_back(v);
    }
    doc.add(TupleDecl{"t", tup, {}});
    doc.add(PointDecl{"p", tup[0], {}});
    std::vector<LinearConstraint> rows;
    for (std::size_t r = 0; r < rng() % 3; ++r) {
      std::vector<Rational> q(tup.size());
      for (auto& x : q) x = testing::small_rational(rng, 3, 3);
      rows.push_back({q, testing::constant_point(rng)});
    }
    LinearSet l(tup.size(), rows);
    doc.add(LinearDecl{"L", l, {}});
    if (l.arity() == tor.arity()) doc.add(CellDecl{"S", 1 + rng() % 3, "L", "T", {}});
    auto r = parse(print(doc));
    ASSERT_TRUE(r.ok()) << print(doc);
    ASSERT_EQ(*r.document, doc) << print(doc);
  }
}

}  // namespace
}  // namespace covertorus
