// Microbenchmarks for the hot paths: halfspace intersection, facet areas,
// measure distance, the planar chain, and the full Newton solve.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "coco/coconvex.hpp"
#include "coco/measures.hpp"
#include "coco/solver.hpp"
#include "test_util.hpp"

using namespace coco;

namespace {

std::vector<Halfspace> boxed(int dim, int cuts, std::mt19937_64& g) {
  std::vector<Halfspace> hs;
  for (int a = 0; a < dim; ++a)
    for (double s : {1.0, -1.0}) {
      Vec n = dim == 2 ? Vec(0.0, 0.0) : Vec(0.0, 0.0, 0.0);
      n[a] = s;
      hs.push_back({n, 1.0});
    }
  for (int i = 0; i < cuts; ++i)
    hs.push_back({testutil::rand_unit(g, dim), testutil::uni(g, 0.2, 0.9)});
  return hs;
}

void BM_HalfspaceIntersection(benchmark::State& state) {
  int dim = static_cast<int>(state.range(0));
  std::mt19937_64 g(11);
  std::vector<Halfspace> hs = boxed(dim, 10, g);
  for (auto _ : state) benchmark::DoNotOptimize(halfspace_intersection(dim, hs));
}
BENCHMARK(BM_HalfspaceIntersection)->Arg(2)->Arg(3);

void BM_CutFacetAreas(benchmark::State& state) {
  int dim = static_cast<int>(state.range(0));
  std::mt19937_64 g(12);
  Cone c = testutil::rand_cone(g, dim);
  CFullSet k = testutil::rand_cfull(g, c, dim == 2 ? 12 : 8);
  for (auto _ : state) benchmark::DoNotOptimize(cut_facet_areas(k));
}
BENCHMARK(BM_CutFacetAreas)->Arg(2)->Arg(3);

void BM_CoconvexVolume(benchmark::State& state) {
  std::mt19937_64 g(13);
  Cone c = testutil::rand_cone(g, 3);
  CFullSet k = testutil::rand_cfull(g, c, 8);
  VolumeMethod m = state.range(0) ? VolumeMethod::direct : VolumeMethod::integral;
  for (auto _ : state) benchmark::DoNotOptimize(coconvex_volume(k, m));
}
BENCHMARK(BM_CoconvexVolume)->Arg(0)->Arg(1);

void BM_Hausdorff(benchmark::State& state) {
  std::mt19937_64 g(14);
  Cone c = testutil::rand_cone(g, 3);
  CFullSet k = testutil::rand_cfull(g, c, 8);
  CFullSet l = testutil::rand_cfull(g, c, 8);
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff_cfull(k, l));
}
BENCHMARK(BM_Hausdorff);

void BM_LpDistance(benchmark::State& state) {
  int atoms = static_cast<int>(state.range(0));
  std::mt19937_64 g(15);
  std::vector<Vec> ax, ay;
  std::vector<double> mx, my;
  for (int i = 0; i < atoms; ++i) {
    double t = testutil::uni(g, 0, 2 * M_PI), s = testutil::uni(g, 0, 2 * M_PI);
    ax.push_back(Vec(std::cos(t), std::sin(t)));
    ay.push_back(Vec(std::cos(s), std::sin(s)));
    mx.push_back(testutil::uni(g, 0.1, 2.0));
    my.push_back(testutil::uni(g, 0.1, 2.0));
  }
  DiscreteMeasure mu = make_measure(2, ax, mx), nu = make_measure(2, ay, my);
  for (auto _ : state) benchmark::DoNotOptimize(lp_distance(mu, nu));
}
BENCHMARK(BM_LpDistance)->Arg(4)->Arg(16)->Arg(64);

void BM_Chain2(benchmark::State& state) {
  std::mt19937_64 g(16);
  Cone c = testutil::rand_cone2(g);
  DiscreteMeasure phi = testutil::rand_measure(g, c, 30, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_chain_2d(c, phi));
}
BENCHMARK(BM_Chain2);

void BM_Solve(benchmark::State& state) {
  int dim = static_cast<int>(state.range(0));
  int atoms = static_cast<int>(state.range(1));
  std::mt19937_64 g(17);
  Cone c = testutil::rand_cone(g, dim);
  DiscreteMeasure phi = testutil::rand_measure(g, c, atoms, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve(c, phi));
}
BENCHMARK(BM_Solve)->Args({2, 8})->Args({2, 32})->Args({3, 6});

}  // namespace

BENCHMARK_MAIN();
