#include <benchmark/benchmark.h>

#include "berger/ambient.hpp"
#include "berger/helix.hpp"
#include "berger/verify.hpp"

namespace {

using namespace berger;

const HelixSpec& fig2_spec() {
  static const HelixSpec spec =
      example1_spec({1.0, 2.0, +1},
                    ScalarCurve::make([](double v) { return std::exp(v); },
                                      [](double v) { return std::exp(v); }),
                    -2.0, 2.0);
  return spec;
}

void BM_SurfaceJet(benchmark::State& state) {
  const HelixSpec& spec = fig2_spec();
  double u = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(surface_jet(spec, u, 0.3));
    u += 1e-6;
  }
}
BENCHMARK(BM_SurfaceJet);

void BM_UnitNormal(benchmark::State& state) {
  const HelixSpec& spec = fig2_spec();
  const SurfaceJet jet = surface_jet(spec, 0.1, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(unit_normal(jet, spec.params));
  }
}
BENCHMARK(BM_UnitNormal);

void BM_ShapeOperator(benchmark::State& state) {
  const HelixSpec& spec = fig2_spec();
  const JetField field = jet_field(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shape_operator(field, 0.1, 0.3, spec.params));
  }
}
BENCHMARK(BM_ShapeOperator);

void BM_CurvatureFrameTable(benchmark::State& state) {
  const BergerParams params{1.0, 2.0, +1};
  const AmbientPoint p(Vec4(0.5, 0.5, 0.5, 0.5));
  const Frame fr = frame_at(params, p);
  const TangentVector x = fr.E1, y = fr.E2, z = fr.E3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        curvature(params, x, y, z, CurvatureMode::frame_table));
  }
}
BENCHMARK(BM_CurvatureFrameTable);

void BM_CurvatureClosedForm(benchmark::State& state) {
  const BergerParams params{1.0, 2.0, +1};
  const AmbientPoint p(Vec4(0.5, 0.5, 0.5, 0.5));
  const Frame fr = frame_at(params, p);
  const TangentVector x = fr.E1, y = fr.E2, z = fr.E3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        curvature(params, x, y, z, CurvatureMode::closed_form));
  }
}
BENCHMARK(BM_CurvatureClosedForm);

void BM_FullReportSmall(benchmark::State& state) {
  const HelixSpec& spec = fig2_spec();
  GridSpec grid;
  grid.u_min = -0.5;
  grid.u_max = 0.5;
  grid.v_min = -0.5;
  grid.v_max = 0.5;
  grid.n_u = 4;
  grid.n_v = 4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(full_report(spec, grid));
  }
}
BENCHMARK(BM_FullReportSmall);

}  // namespace

BENCHMARK_MAIN();
