// Microbenchmarks for the hot evaluation kernels and the end-to-end
// pipeline stages (integrate, curve reconstruction, numeric curvature,
// mesh export).

#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "helisol/curve.hpp"
#include "helisol/phase.hpp"
#include "helisol/surface.hpp"
#include "helisol/trajectory.hpp"

namespace {

using namespace helisol;

const SolitonParams kParams{1.0};
const PhasePoint kPoint{0.7, -0.4};

std::shared_ptr<const CurvatureLaw> rotator() {
  static const auto law = std::make_shared<RotatorLaw>();
  return law;
}

Trajectory reference_trajectory() {
  return integrate_trajectory({0.0, 0.0, 0.0}, kParams, rotator(), {-20.0, 20.0}, {});
}

void BM_RotatorCurvature(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rotator_curvature(kPoint, kParams));
}
BENCHMARK(BM_RotatorCurvature);

void BM_AuxQuantities(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(aux_quantities(kPoint, kParams));
}
BENCHMARK(BM_AuxQuantities);

void BM_ClosedFormH(benchmark::State& state) {
  const double k = rotator_curvature(kPoint, kParams);
  for (auto _ : state) benchmark::DoNotOptimize(closed_form_H(kPoint, kParams, k));
}
BENCHMARK(BM_ClosedFormH);

void BM_PhaseRhs(benchmark::State& state) {
  const RotatorLaw law;
  for (auto _ : state) benchmark::DoNotOptimize(phase_rhs(kPoint, kParams, law));
}
BENCHMARK(BM_PhaseRhs);

void BM_IntegrateTrajectory(benchmark::State& state) {
  const double tol = 1.0 / static_cast<double>(state.range(0));
  IntegratorOptions opts;
  opts.abs_tol = opts.rel_tol = tol;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        integrate_trajectory({0.0, 0.0, 0.0}, kParams, rotator(), {-20.0, 20.0}, opts));
}
BENCHMARK(BM_IntegrateTrajectory)->Arg(1000000)->Arg(100000000)->Arg(1000000000000);

void BM_DenseEvaluate(benchmark::State& state) {
  const Trajectory traj = reference_trajectory();
  std::mt19937_64 rng(7);
  std::vector<double> probes(1024);
  for (double& s : probes)
    s = -20.0 + 40.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(traj.evaluate(probes[i]));
    i = (i + 1) & 1023;
  }
}
BENCHMARK(BM_DenseEvaluate);

void BM_BuildGeneratingCurve(benchmark::State& state) {
  const Trajectory traj = reference_trajectory();
  for (auto _ : state) benchmark::DoNotOptimize(build_generating_curve(traj));
}
BENCHMARK(BM_BuildGeneratingCurve);

void BM_NumericMeanCurvature(benchmark::State& state) {
  const GeneratingCurve curve = build_generating_curve(reference_trajectory());
  for (auto _ : state)
    benchmark::DoNotOptimize(numeric_mean_curvature(curve, kParams, 1e-2));
}
BENCHMARK(BM_NumericMeanCurvature);

void BM_ExportMesh(benchmark::State& state) {
  const GeneratingCurve curve = build_generating_curve(reference_trajectory());
  MeshChannels channels;
  channels.mean_curvature = true;
  channels.rotator_residual = true;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        export_mesh(curve, kParams, 0.0, 6.283185307179586, 64, channels));
}
BENCHMARK(BM_ExportMesh);

}  // namespace

BENCHMARK_MAIN();
