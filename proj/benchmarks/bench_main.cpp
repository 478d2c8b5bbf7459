#include <benchmark/benchmark.h>

#include "abnorm/abnormal.hpp"
#include "abnorm/adjoint_ode.hpp"
#include "abnorm/catalog.hpp"
#include "abnorm/seminorm.hpp"
#include "abnorm/subspace.hpp"

using namespace abnorm;

namespace {

struct Fixture {
  StructureConstants alg;
  std::vector<Vector4> plane;
  SeminormBody body;
};

Fixture g47() {
  const Catalog& c = Catalog::builtin();
  const AlgebraId id{"g4.7", {}};
  return {c.instantiate(id), c.generating_subspaces(id).front().span,
          SeminormBody::polygon({{1, 0}, {0, 1}, {-2, 0}, {0, -1}})};
}

void BM_CatalogInstantiate(benchmark::State& state) {
  const Catalog& c = Catalog::builtin();
  const AlgebraId id{"g4.5", {0.5, 0.75}};
  for (auto _ : state) benchmark::DoNotOptimize(c.instantiate(id));
}
BENCHMARK(BM_CatalogInstantiate);

void BM_Generates(benchmark::State& state) {
  const Fixture f = g47();
  for (auto _ : state) benchmark::DoNotOptimize(generates(f.alg, f.plane));
}
BENCHMARK(BM_Generates);

void BM_CanonicalBasis(benchmark::State& state) {
  const Fixture f = g47();
  for (auto _ : state) benchmark::DoNotOptimize(canonical_basis(f.alg, f.plane));
}
BENCHMARK(BM_CanonicalBasis);

void BM_Classify(benchmark::State& state) {
  const Fixture f = g47();
  for (auto _ : state) benchmark::DoNotOptimize(classify(f.alg, f.plane, f.body));
}
BENCHMARK(BM_Classify);

void BM_WitnessSearch(benchmark::State& state) {
  const Fixture f = g47();
  const CanonicalBasis b = canonical_basis(f.alg, f.plane);
  for (auto _ : state) benchmark::DoNotOptimize(witness_search(b, f.body, 1));
}
BENCHMARK(BM_WitnessSearch);

void BM_Integrate(benchmark::State& state) {
  const Vector4 c(1.0, 0.0, -0.3, 0.0);
  const double dt = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(integrate(c, 1.0, {Vector4(0.1, 1.0, 0.0, 1.0), 0.0}, 5.0, dt));
}
BENCHMARK(BM_Integrate)->Arg(100)->Arg(1000);

void BM_PolygonGauge(benchmark::State& state) {
  const SeminormBody body = SeminormBody::polygon({{1, 0}, {0.7, 0.7}, {0, 1}, {-2, 0}, {-1, -1}, {0, -1}});
  Vector2 v(0.3, 0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(body.gauge(v));
    v.x() += 1e-9;
  }
}
BENCHMARK(BM_PolygonGauge);

void BM_EllipseSupport(benchmark::State& state) {
  Matrix2 s;
  s << 2.0, 0.3, 0.3, 0.5;
  const SeminormBody body = SeminormBody::ellipse({0.2, -0.1}, s);
  Vector2 w(0.3, 0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(body.support(w));
    w.x() += 1e-9;
  }
}
BENCHMARK(BM_EllipseSupport);

}  // namespace

BENCHMARK_MAIN();
