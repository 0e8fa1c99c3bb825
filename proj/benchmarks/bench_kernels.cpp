#include <benchmark/benchmark.h>

#include "ecoinv/forward.hpp"
#include "ecoinv/shaperec.hpp"
#include "ecoinv/specfun.hpp"
#include "ecoinv/srcrec.hpp"

using namespace ecoinv;

static void BM_Hankel0to3(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::hankel1_0to3(x));
    x = x < 60.0 ? x + 0.37 : 0.5;
  }
}
BENCHMARK(BM_Hankel0to3);

static void BM_Green(benchmark::State& state) {
  const ElasticMedium m(1.0, 1.0, 8.0);
  Vec2 x(1.3, -0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::green(m, x, Vec2(0.1, 0.2)));
    x.x() += 1e-6;
  }
}
BENCHMARK(BM_Green);

static void BM_KernelWithGrad(benchmark::State& state) {
  const ElasticMedium m(1.0, 1.0, 8.0);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::kernel_K_with_grad(m, Vec2(1.3, -0.4), Vec2(0.7, 0.0)));
}
BENCHMARK(BM_KernelWithGrad);

static void BM_IndicatorFields(benchmark::State& state) {
  const ElasticMedium m(1.0, 1.0, 8.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  const SamplingGrid grid(-5, 5, -5, 5, n, n);
  const CurveNodes rx = geometry::ring(10.0, 120);
  const FieldRecord rec = forward::incident_record(m, SourceSpec::make(Vec2(3, 0), Vec2(1, 1)), rx);
  for (auto _ : state) benchmark::DoNotOptimize(srcrec::indicator_fields(m, {rec}, grid));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * n));
}
BENCHMARK(BM_IndicatorFields)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_RigidScattering(benchmark::State& state) {
  const ElasticMedium m(1.0, 1.0, 8.0);
  const ClosedCurve leaf = geometry::l_leaf(3);
  ForwardSolverParams p;
  p.charge_count = static_cast<std::size_t>(state.range(0));
  p.collocation_count = 2 * p.charge_count;
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward::solve_rigid_scattering(m, leaf, SourceSpec::make(Vec2(3, 0), Vec2(1, 0)), p));
  }
}
BENCHMARK(BM_RigidScattering)->Arg(120)->Arg(280)->Unit(benchmark::kMillisecond);

static void BM_Tikhonov(benchmark::State& state) {
  const ElasticMedium m(1.0, 1.0, 8.0);
  const AnsatzSystem sys = shaperec::assemble(m, geometry::circle(0.7).discretize(100), geometry::ring(10.0, 120));
  const FieldRecord rec = forward::incident_record(m, SourceSpec::make(Vec2(0.1, 0), Vec2(1, 0)), sys.receivers);
  for (auto _ : state) benchmark::DoNotOptimize(shaperec::tikhonov_solve(sys.matrix, rec.stacked(), 1e-2));
}
BENCHMARK(BM_Tikhonov)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
