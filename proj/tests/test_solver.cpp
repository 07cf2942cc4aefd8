#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "coco/coconvex.hpp"
#include "coco/solver.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace coco;
using testutil::u53;
using testutil::uni;

TEST_CASE("two cuts of the quadrant: chain construction and descent agree") {
  Cone quad = make_cone(2, {Vec(1, 0), Vec(0, 1)});
  DiscreteMeasure phi = make_measure(2, {Vec(-0.8, -0.6), Vec(-0.6, -0.8)}, {1.0, 1.0});
  CFullSet k = solve_chain_2d(quad, phi);
  CHECK(support_value(k, Vec(-0.8, -0.6)) == doctest::Approx(-0.84).epsilon(1e-12));
  CHECK(support_value(k, Vec(-0.6, -0.8)) == doctest::Approx(-0.84).epsilon(1e-12));
  CHECK(clearance_radius(k) == doctest::Approx(0.6 * std::sqrt(2.0)).epsilon(1e-12));
  DiscreteMeasure sam = surface_area_measure(k);
  REQUIRE(sam.size() == 2);
  CHECK(sam.total() == doctest::Approx(2.0).epsilon(1e-12));

  SolveReport rep = solve(quad, phi);
  CHECK(rep.converged);
  CHECK(support_value(rep.k, Vec(-0.8, -0.6)) == doctest::Approx(-0.84).epsilon(1e-8));
  CHECK(hausdorff_cfull(rep.k, k) <= 1e-7);
}

TEST_CASE("single cut of the octant: exact depth and volume consistency") {
  double s3 = std::sqrt(3.0);
  Cone oct = make_cone(3, {Vec(1, 0, 0), Vec(0, 1, 0), Vec(0, 0, 1)});
  DiscreteMeasure phi = make_measure(3, {Vec(-1 / s3, -1 / s3, -1 / s3)}, {3 * s3 / 2});
  SolveReport rep = solve(oct, phi);
  CHECK(rep.converged);
  CHECK(support_value(rep.k, phi.atoms[0]) == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(coconvex_volume(rep.k, VolumeMethod::direct) ==
        doctest::Approx(coconvex_volume(rep.k, VolumeMethod::integral)).epsilon(1e-9));
  CHECK(coconvex_volume(rep.k, VolumeMethod::direct) == doctest::Approx(s3 / 2).epsilon(1e-7));
}

TEST_CASE("random instances: descent matches the exact planar chain") {
  std::mt19937_64 g(601);
  int solved = 0;
  for (int trial = 0; trial < 30; ++trial) {
    Cone c = testutil::rand_cone2(g);
    DiscreteMeasure phi = testutil::rand_measure(g, c, 1 + static_cast<int>(u53(g) * 20), 2.0);
    if (phi.size() == 0) continue;
    double fmax = *std::max_element(phi.masses.begin(), phi.masses.end());
    SolveOptions opts;
    opts.tol = 1e-10 / std::max(1.0, fmax);  // an absolute 1e-10 bar
    opts.max_iter = 1000;
    SolveReport rep = solve(c, phi, opts);
    REQUIRE(rep.converged);
    CHECK(rep.residual_inf <= 1e-10);
    CHECK(hausdorff_cfull(rep.k, solve_chain_2d(c, phi)) <= 1e-8);
    ++solved;
  }
  CHECK(solved >= 25);
}

TEST_CASE("random spatial instances: measure round trip within relative tolerance") {
  std::mt19937_64 g(602);
  int solved = 0;
  for (int trial = 0; trial < 12; ++trial) {
    Cone c = testutil::rand_cone3(g);
    DiscreteMeasure phi = testutil::rand_measure(g, c, 1 + static_cast<int>(u53(g) * 8), 2.0);
    if (phi.size() == 0) continue;
    double fmin = phi.masses[0], fmax = phi.masses[0];
    for (double m : phi.masses) fmin = std::min(fmin, m), fmax = std::max(fmax, m);
    SolveOptions opts;
    // converged means residual <= tol * max(1, fmax); aim it at 1e-6 * fmin
    // so the bound covers even the smallest atom's relative check below
    opts.tol = 1e-6 * fmin / std::max(1.0, fmax);
    opts.max_iter = 1000;
    SolveReport rep = solve(c, phi, opts);
    REQUIRE(rep.converged);
    std::vector<double> areas = cut_facet_areas(rep.k);
    for (std::size_t i = 0; i < phi.size(); ++i)
      CHECK(std::fabs(areas[i] - phi.masses[i]) <= 1e-6 * phi.masses[i]);
    ++solved;
  }
  CHECK(solved >= 10);
}

TEST_CASE("uniqueness: solutions from far-apart starting depths coincide") {
  std::mt19937_64 g(603);
  int solved = 0;
  for (int trial = 0; trial < 10; ++trial) {
    int dim = 2 + trial % 2;
    Cone c = testutil::rand_cone(g, dim);
    DiscreteMeasure phi =
        testutil::rand_measure(g, c, dim == 2 ? 10 : 5, 2.0);
    if (phi.size() == 0) continue;
    SolveOptions lo, hi;
    lo.init_scale = 0.1;
    hi.init_scale = 10.0;
    lo.max_iter = hi.max_iter = 1000;
    SolveReport a = solve(c, phi, lo), b = solve(c, phi, hi);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(hausdorff_cfull(a.k, b.k) <= 1e-7);
    ++solved;
  }
  CHECK(solved >= 8);
}

TEST_CASE("boundary blow-up family: masses, margins and the profile flag") {
  Cone quad = make_cone(2, {Vec(1, 0), Vec(0, 1)});
  Cone oct = make_cone(3, {Vec(1, 0, 0), Vec(0, 1, 0), Vec(0, 0, 1)});
  DiscreteMeasure b2 = gen_boundary_blowup_measure(quad, 3);
  CHECK(b2.masses[0] == 2.0);
  CHECK(b2.masses[1] == 8.0);
  CHECK(b2.masses[2] == 24.0);
  DiscreteMeasure b3 = gen_boundary_blowup_measure(oct, 3);
  CHECK(b3.masses[0] == 4.0);
  CHECK(b3.masses[1] == 32.0);
  CHECK(b3.masses[2] == 192.0);
  std::vector<double> bm = boundary_margins(quad, b2.atoms);
  for (int kk = 1; kk <= 3; ++kk)
    CHECK(bm[kk - 1] == doctest::Approx(std::ldexp(1.0, -kk)).epsilon(2e-3));

  DiscreteMeasure bu = gen_boundary_blowup_measure(quad, 20);
  std::vector<double> margins;
  for (int j = 1; j <= 18; ++j) margins.push_back(std::ldexp(1.0, -j));
  ProfileReport pr = necessary_profile(bu, quad, margins);
  REQUIRE(pr.points.size() == 18);
  for (int j = 1; j <= 18; ++j)
    CHECK(pr.points[j - 1].value == doctest::Approx(static_cast<double>(j)).epsilon(1e-9));
  CHECK(pr.unbounded_suspect);

  DiscreteMeasure benign = make_measure(2, {Vec(-std::sqrt(0.5), -std::sqrt(0.5))}, {1.0});
  CHECK_FALSE(necessary_profile(benign, quad, {0.5, 0.05, 0.005, 0.0005}).unbounded_suspect);
}

TEST_CASE("profiles of solved surface area measures stay unflagged") {
  std::mt19937_64 g(604);
  std::vector<double> margins;
  for (int j = 1; j <= 18; ++j) margins.push_back(std::ldexp(1.0, -j));
  for (int trial = 0; trial < 5; ++trial) {
    Cone c = testutil::rand_cone2(g);
    DiscreteMeasure phi = testutil::rand_measure(g, c, 6, 2.0);
    if (phi.size() == 0) continue;
    SolveOptions opts;
    opts.max_iter = 1000;
    SolveReport rep = solve(c, phi, opts);
    REQUIRE(rep.converged);
    CHECK_FALSE(necessary_profile(surface_area_measure(rep.k), c, margins).unbounded_suspect);
  }
}

TEST_CASE("margin exhaustion: growing stages, bounded volumes, Cauchy tail") {
  Cone quad = make_cone(2, {Vec(1, 0), Vec(0, 1)});
  DiscreteMeasure bu = gen_boundary_blowup_measure(quad, 6);
  std::vector<double> margins;
  for (int j = 1; j <= 9; ++j) margins.push_back(0.6 * std::ldexp(1.0, -j));
  auto stages = solve_exhaustion(quad, bu, margins);
  REQUIRE(stages.size() == 9);
  for (std::size_t j = 0; j < stages.size(); ++j) {
    CHECK(stages[j].atom_count == std::min<std::size_t>(j + 1, 6));
    CHECK(stages[j].volume <= stages[j].volume_bound + 1e-9);
    if (j > 0) CHECK(stages[j].volume >= stages[j - 1].volume - 1e-12);
  }
  // once the restricted measure stops changing the bodies are Cauchy
  CHECK(stages[6].hausdorff_prev <= 1e-9);
  CHECK(stages[7].hausdorff_prev <= 1e-9);
  CHECK(stages[8].hausdorff_prev <= 1e-9);
  CHECK(stages[1].hausdorff_prev > 0.0);
}

TEST_CASE("staircase bands: closed-form first area, diagonal cross-check, series") {
  OrthantExample e1 = gen_orthant_example(1);
  CHECK(e1.areas[0] == doctest::Approx(1.0004881621).epsilon(1e-9));

  // Planar-quadrilateral identity: area is half the cross product of the
  // diagonals.  Independent of the generator's own shoelace route.
  OrthantExample e = gen_orthant_example(120);
  REQUIRE(e.vertices.size() == 2 * 121);
  for (int n = 0; n < 120; ++n) {
    Vec p = e.vertices[2 * n], q = e.vertices[2 * n + 1];
    Vec pn = e.vertices[2 * n + 2], qn = e.vertices[2 * n + 3];
    double diag = 0.5 * norm(cross3(pn - q, qn - p));
    CHECK(e.areas[n] == doctest::Approx(diag).epsilon(1e-9));
    CHECK(std::fabs(dot(e.normals[n], pn - p)) <= 1e-12);  // normal orthogonal to the band
    CHECK(std::fabs(norm(e.normals[n]) - 1.0) <= 1e-12);
  }

  // full hull cross-check path runs clean at the largest covered size
  OrthantExample e200 = gen_orthant_example(200);
  CHECK(e200.areas.size() == 200);

  OrthantExample big = gen_orthant_example(100000);
  CHECK(std::fabs(big.width_series - (M_PI * M_PI / 3 - 1) / std::sqrt(2.0)) <= 1e-4);
  CHECK(big.area_series > big.width_series);  // slant excess keeps the two apart
  CHECK(std::fabs(big.area_series - 1.7373) <= 1e-3);
}

TEST_CASE("solver options: convergence report fields are coherent") {
  Cone quad = make_cone(2, {Vec(1, 0), Vec(0, 1)});
  DiscreteMeasure phi = make_measure(2, {Vec(-0.8, -0.6), Vec(-0.6, -0.8)}, {1.0, 1.0});
  SolveOptions opts;
  opts.max_iter = 1;  // starvation must yield a report, never a throw
  SolveReport rep = solve(quad, phi, opts);
  CHECK(rep.iterations <= 1);
  CHECK(rep.objective_trace.size() >= 2);  // initial and final residuals
  SolveReport full = solve(quad, phi);
  CHECK(full.converged);
  CHECK(full.residual_inf <= 2e-10);  // default tolerance is relative to the masses
  CHECK(full.objective_trace.back() == full.residual_inf);
}
