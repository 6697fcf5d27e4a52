#include <benchmark/benchmark.h>

#include "jnalg/catalog.hpp"

namespace {

void BM_schouten(benchmark::State& state) {
  jnalg::SpecDocument doc = jnalg::fixture("contact_r3");
  jnalg::JacobiAlgebroid J = doc.jacobi();
  for (auto _ : state) {
    benchmark::DoNotOptimize(jnalg::sj_bracket(J, doc.P, doc.P));
  }
}
BENCHMARK(BM_schouten);

void BM_dual_build(benchmark::State& state) {
  jnalg::SpecDocument doc = jnalg::fixture("tmr_of_jacobi");
  jnalg::JacobiAlgebroid J = doc.jacobi();
  for (auto _ : state) {
    benchmark::DoNotOptimize(jnalg::dual_structure(J, doc.P));
  }
}
BENCHMARK(BM_dual_build);

void BM_battery_small(benchmark::State& state) {
  jnalg::SpecDocument doc = jnalg::fixture("abelian2");
  jnalg::JacobiAlgebroid J = doc.jacobi();
  jnalg::Sampling s = doc.sampling;
  s.points = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jnalg::gerstenhaber_battery(J, s));
  }
}
BENCHMARK(BM_battery_small);

}  // namespace

BENCHMARK_MAIN();
