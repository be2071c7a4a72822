#include <benchmark/benchmark.h>

#include "limitcone/groups.hpp"
#include "limitcone/limits.hpp"

using namespace limitcone;

namespace {

const GroupSpec& hecke5() {
  static GroupSpec spec = hecke_group(5);
  return spec;
}

void BM_FieldMul(benchmark::State& state) {
  FieldPtr f = hecke5().field;
  FieldElement a(f, {Rational(3), Rational(-2)});
  FieldElement b(f, {Rational(-7), Rational(5)});
  for (auto _ : state) {
    FieldElement c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_FieldMul);

void BM_MatrixProduct(benchmark::State& state) {
  const GroupSpec& spec = hecke5();
  MoebiusElement t = spec.generators[1].mat;
  MoebiusElement s = spec.generators[0].mat;
  MoebiusElement acc = t * s;
  for (auto _ : state) {
    MoebiusElement c = acc * t;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_MatrixProduct);

void BM_ClassifyTuple(benchmark::State& state) {
  const GroupSpec& spec = hecke5();
  MoebiusElement g = evaluate_word(spec, "T^2*S");
  for (auto _ : state) {
    auto classes = classify_tuple(g, spec.embedding_order);
    benchmark::DoNotOptimize(classes);
  }
}
BENCHMARK(BM_ClassifyTuple);

void BM_Enumerate(benchmark::State& state) {
  const GroupSpec& spec = hecke5();
  for (auto _ : state) {
    EnumerationResult e = enumerate_group(spec, state.range(0), 1000000);
    benchmark::DoNotOptimize(e.elements.size());
  }
}
BENCHMARK(BM_Enumerate)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_TranslationDirection(benchmark::State& state) {
  const GroupSpec& spec = hecke5();
  MoebiusElement g = evaluate_word(spec, "T^4*S");
  IsometryTuple t = tuple_embed(g, spec.embedding_order, 64);
  for (auto _ : state) {
    Direction d = translation_direction(t, 64);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_TranslationDirection);

void BM_TorusOrbit(benchmark::State& state) {
  Interval alpha(0.35604, 64), beta(0.43878, 64);
  for (auto _ : state) {
    TorusOrbitResult r = torus_orbit(alpha, beta, state.range(0), 64);
    benchmark::DoNotOptimize(r.discrepancy);
  }
}
BENCHMARK(BM_TorusOrbit)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
