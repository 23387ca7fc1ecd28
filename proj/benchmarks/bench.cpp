#include <benchmark/benchmark.h>

#include "covertorus/lattice.hpp"
#include "covertorus/pqf.hpp"
#include "covertorus/syntax.hpp"
#include "covertorus/verifier.hpp"

namespace {

using namespace covertorus;

std::vector<TorusPresentation> sample_tori(std::size_t arity, std::size_t count) {
  VerifierConfig cfg;
  cfg.max_arity = arity;
  std::vector<TorusPresentation> out;
  for (std::size_t i = 0; i < count; ++i) {
    CounterRng rng(11, arity, i);
    out.push_back(generate_torus(cfg, rng));
  }
  return out;
}

void BM_Snf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  CounterRng rng(3, n, 0);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>(rng.between(-9, 9));
  }
  for (auto _ : state) benchmark::DoNotOptimize(snf(m));
}
BENCHMARK(BM_Snf)->DenseRange(2, 8, 2);

void BM_NormalForm(benchmark::State& state) {
  auto tori = sample_tori(static_cast<std::size_t>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(normal_form(tori[i++ % tori.size()]));
}
BENCHMARK(BM_NormalForm)->DenseRange(1, 5);

void BM_Components(benchmark::State& state) {
  auto tori = sample_tori(static_cast<std::size_t>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(components(tori[i++ % tori.size()]));
}
BENCHMARK(BM_Components)->DenseRange(1, 4);

void BM_Locus(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  PointTuple a;
  for (std::size_t i = 0; i < n; ++i) {
    a.push_back(CoverPoint::generic(1 + static_cast<std::uint32_t>(i % 3), Rational(static_cast<long>(i + 1))) +
                CoverPoint::kappa(make_rational(1, static_cast<long>(i + 2))));
  }
  for (auto _ : state) benchmark::DoNotOptimize(locus(a));
}
BENCHMARK(BM_Locus)->RangeMultiplier(2)->Range(2, 16);

void BM_ParsePrint(benchmark::State& state) {
  Document doc;
  auto tori = sample_tori(4, 32);
  for (std::size_t i = 0; i < tori.size(); ++i) doc.add(TorusDecl{"T" + std::to_string(i), tori[i], {}});
  const std::string text = print(doc);
  for (auto _ : state) benchmark::DoNotOptimize(print(*parse(text).document));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParsePrint);

void BM_CheckTrial(benchmark::State& state, const char* name) {
  const auto* check = find_check(name);
  VerifierConfig cfg;
  CheckContext ctx{cfg};
  std::size_t i = 0;
  for (auto _ : state) {
    CounterRng rng(5, 0, i++);
    benchmark::DoNotOptimize(check->evaluate(check->generate(rng, cfg), ctx));
  }
}
BENCHMARK_CAPTURE(BM_CheckTrial, roots, "roots");
BENCHMARK_CAPTURE(BM_CheckTrial, intersection_dimension, "intersection_dimension");
BENCHMARK_CAPTURE(BM_CheckTrial, axiom_amalgamation, "axiom_amalgamation");

}  // namespace
BENCHMARK_MAIN();
