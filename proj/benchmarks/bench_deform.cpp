#include <benchmark/benchmark.h>

#include <cmath>

#include "polydeform/metrics.hpp"
#include "polydeform/poisson_deform.hpp"

namespace {

using namespace polydeform;

// UV sphere, ~2 * n_phi * (n_theta - 1) faces.
SurfaceMesh make_sphere(int n_phi, int n_theta) {
  const double pi = std::acos(-1.0);
  Positions P(2 + n_phi * (n_theta - 1), 3);
  P.row(0) << 0, 0, 1;
  P.row(P.rows() - 1) << 0, 0, -1;
  auto ring = [&](int i, int j) { return 1 + (i - 1) * n_phi + (j % n_phi); };
  for (int i = 1; i < n_theta; ++i)
    for (int j = 0; j < n_phi; ++j) {
      const double theta = pi * i / n_theta;
      const double phi = 2.0 * pi * (j + 0.5) / n_phi;
      P.row(ring(i, j)) << std::sin(theta) * std::cos(phi),
          std::sin(theta) * std::sin(phi), std::cos(theta);
    }

  Faces F(2 * n_phi * (n_theta - 1), 3);
  int f = 0;
  for (int j = 0; j < n_phi; ++j) F.row(f++) << 0, ring(1, j), ring(1, j + 1);
  for (int i = 1; i + 1 < n_theta; ++i)
    for (int j = 0; j < n_phi; ++j) {
      F.row(f++) << ring(i, j), ring(i + 1, j), ring(i + 1, j + 1);
      F.row(f++) << ring(i, j), ring(i + 1, j + 1), ring(i, j + 1);
    }
  const int south = static_cast<int>(P.rows()) - 1;
  for (int j = 0; j < n_phi; ++j)
    F.row(f++) << south, ring(n_theta - 1, j + 1), ring(n_theta - 1, j);
  return SurfaceMesh(std::move(P), std::move(F));
}

const SurfaceMesh& sphere() {
  static const SurfaceMesh mesh = make_sphere(32, 32);
  return mesh;
}

const FaceLabeling& labels() {
  static const FaceLabeling value = nearest_axis_labels(sphere());
  return value;
}

void BM_rotation_field(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(compute_rotation_field(sphere(), labels()));
}
BENCHMARK(BM_rotation_field);

void BM_assemble_laplacian(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(assemble_laplacian(sphere()));
}
BENCHMARK(BM_assemble_laplacian);

void BM_assemble_rhs(benchmark::State& state) {
  const RotationField field = compute_rotation_field(sphere(), labels());
  for (auto _ : state)
    benchmark::DoNotOptimize(
        assemble_rhs(sphere(), sphere().vertices(), sphere().vertices(), field));
}
BENCHMARK(BM_assemble_rhs);

void BM_solve_poisson(benchmark::State& state) {
  const RotationField field = compute_rotation_field(sphere(), labels());
  const PoissonSystem system =
      build_poisson_system(sphere(), sphere().vertices(), sphere().vertices(), field);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_poisson(system, sphere(), 1e-10));
}
BENCHMARK(BM_solve_poisson);

void BM_deform_iteration(benchmark::State& state) {
  DeformConfig config;
  config.max_iterations = 1;
  config.angle_tolerance = 1e-300;
  for (auto _ : state)
    benchmark::DoNotOptimize(deform(sphere(), labels(), config));
}
BENCHMARK(BM_deform_iteration);

void BM_deform_converged(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(deform(sphere(), labels()));
}
BENCHMARK(BM_deform_converged);

void BM_quality_report(benchmark::State& state) {
  const DeformResult result = deform(sphere(), labels());
  for (auto _ : state)
    benchmark::DoNotOptimize(quality_report(sphere(), result.mesh, labels()));
}
BENCHMARK(BM_quality_report);

}  // namespace

BENCHMARK_MAIN();
