#include <benchmark/benchmark.h>

#include "trcomm/array_ops.hpp"
#include "trcomm/products.hpp"
#include "trcomm/rng.hpp"
#include "trcomm/scenario.hpp"
#include "trcomm/stepper.hpp"

using namespace trcomm;

namespace {

SceneSpec bench_spec(int n, int nt) {
  SceneSpec spec;
  spec.nx = n;
  spec.ny = n;
  spec.nt = nt;
  spec.dx = 1.0;
  spec.dy = 1.0;
  spec.medium.kind = MediumRecipeKind::RandomScatterers;
  spec.medium.count = 8;
  spec.medium.radius_min = 2.0;
  spec.medium.radius_max = 4.0;
  spec.medium.contrast_min = 1.2;
  spec.medium.contrast_max = 1.8;
  spec.base_count = 4;
  spec.user_count = 2;
  spec.pilot.kind = WaveletKind::Ricker;
  spec.pilot.f0 = 0.04;
  spec.seed = 7;
  return spec;
}

void BM_forward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  BuiltScene b = build_scene(bench_spec(n, 2 * n));
  const Scene& sc = b.scene;
  SignalSet r = zero_base_signal(sc);
  Rng rng(1);
  for (auto& v : r.data()) v = rng.uniform(-1.0, 1.0);
  FieldMovie q = apply_Q(r, sc.base, sc.medium, sc.grid, sc.mspec);
  for (auto _ : state) {
    FieldMovie u = run_forward(q, sc.medium, sc.grid, sc.stepper);
    benchmark::DoNotOptimize(u.frames.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n) * n *
                          sc.grid.nt);
}
BENCHMARK(BM_forward)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_apply_A(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  BuiltScene b = build_scene(bench_spec(n, 2 * n));
  SignalSet r = zero_base_signal(b.scene);
  Rng rng(1);
  for (auto& v : r.data()) v = rng.uniform(-1.0, 1.0);
  for (auto _ : state) {
    SignalSet s = apply_A(r, b.scene);
    benchmark::DoNotOptimize(s.data().data());
  }
}
BENCHMARK(BM_apply_A)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_apply_A_star(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  BuiltScene b = build_scene(bench_spec(n, 2 * n));
  SignalSet s = zero_user_signal(b.scene);
  Rng rng(1);
  for (auto& v : s.data()) v = rng.uniform(-1.0, 1.0);
  for (auto _ : state) {
    SignalSet r = apply_A_star(s, b.scene);
    benchmark::DoNotOptimize(r.data().data());
  }
}
BENCHMARK(BM_apply_A_star)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_inner_product_fields(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  BuiltScene b = build_scene(bench_spec(n, 2 * n));
  const Scene& sc = b.scene;
  Rng rng(2);
  FieldMovie u(sc.grid, MovieKind::State);
  for (auto& f : u.frames)
    for (auto& c : f.ch)
      for (auto& v : c) v = rng.uniform(-1.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inner_product_fields(u, u, sc.medium, sc.grid));
  }
}
BENCHMARK(BM_inner_product_fields)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
