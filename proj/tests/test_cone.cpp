#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "coco/cone.hpp"
#include "coco/errors.hpp"
#include "coco/geom.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace coco;
using testutil::uni;

TEST_CASE("quadrant: extreme rays, aperture, axis, facet normals") {
  double s2 = std::sqrt(2.0);
  Cone q = make_cone(2, {Vec(1, 0), Vec(0, 1), Vec(3, 1)});  // one redundant generator
  CHECK(q.generators.size() == 2);
  CHECK(aperture(q) == doctest::Approx(M_PI / 2).epsilon(1e-12));
  CHECK(dist(q.w, Vec(1 / s2, 1 / s2)) <= 1e-12);
  CHECK(dist(q.facet_normals[0], Vec(0, -1)) <= 1e-12);
  CHECK(dist(q.facet_normals[1], Vec(-1, 0)) <= 1e-12);
}

TEST_CASE("polar cones: worked half-quadrant and involution on random cones") {
  double s2 = std::sqrt(2.0);
  Cone halfq = make_cone(2, {Vec(1, 0), Vec(1 / s2, 1 / s2)});
  Cone hp = polar(halfq);
  REQUIRE(hp.generators.size() == 2);
  bool m1 = dist(hp.generators[0], Vec(0, -1)) <= 1e-12 ||
            dist(hp.generators[1], Vec(0, -1)) <= 1e-12;
  bool m2 = dist(hp.generators[0], Vec(-1 / s2, 1 / s2)) <= 1e-12 ||
            dist(hp.generators[1], Vec(-1 / s2, 1 / s2)) <= 1e-12;
  CHECK(m1);
  CHECK(m2);

  std::mt19937_64 g(301);
  for (int trial = 0; trial < 40; ++trial) {
    Cone c = testutil::rand_cone(g, 2 + trial % 2);
    CHECK(same_cone(c, polar(polar(c))));  // generator sets within 1e-12
  }
}

TEST_CASE("sign octants partition the sphere: apertures sum to 4 pi") {
  double total = 0.0;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1})
        total += aperture(make_cone(
            3, {Vec(sx, 0, 0), Vec(0, sy, 0), Vec(0, 0, sz)}));
  CHECK(total == doctest::Approx(4 * M_PI).epsilon(1e-9));
}

TEST_CASE("window membership, boundary margins and the normal gap (worked)") {
  double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
  Cone q = make_cone(2, {Vec(1, 0), Vec(0, 1)});

  CHECK(omega_contains(q, Vec(-0.8, -0.6)).inside);
  CHECK_FALSE(omega_contains(q, Vec(0, -1)).inside);  // boundary is excluded
  CHECK_FALSE(omega_contains(q, Vec(1, 0)).inside);
  CHECK_THROWS_AS(normal_gap(q, {Vec(0, -1)}), AtomOutsideOmega);

  std::vector<Vec> atoms2 = {Vec(-0.8, -0.6), Vec(-0.6, -0.8)};
  CHECK(boundary_margin(q, atoms2) == doctest::Approx(std::asin(0.6)).epsilon(1e-12));
  CHECK(normal_gap(q, atoms2) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(normal_gap(q, {Vec(-1 / s2, -1 / s2)}) == doctest::Approx(1 / s2).epsilon(1e-12));
  CHECK(boundary_margin(q, {Vec(-1 / s2, -1 / s2)}) == doctest::Approx(M_PI / 4).epsilon(1e-12));

  Cone oct = make_cone(3, {Vec(1, 0, 0), Vec(0, 1, 0), Vec(0, 0, 1)});
  Vec ustar(-1 / s3, -1 / s3, -1 / s3);
  CHECK(std::fabs(boundary_margin(oct, {ustar}) - std::asin(1 / s3)) <= 2e-3);
  CHECK(normal_gap(oct, {ustar}) == doctest::Approx(1 / s3).epsilon(1e-12));

  // Planar identity: the gap of a single atom is the sine of its margin.
  std::mt19937_64 g(302);
  for (int trial = 0; trial < 30; ++trial) {
    Cone c = testutil::rand_cone2(g);
    Vec u = testutil::rand_in_omega(g, c);
    CHECK(normal_gap(c, {u}) ==
          doctest::Approx(std::sin(boundary_margin(c, {u}))).epsilon(2e-3));
  }
}

TEST_CASE("normal gap bounds the inner product against every cone direction") {
  std::mt19937_64 g(303);
  for (int dim : {2, 3}) {
    for (int trial = 0; trial < 25; ++trial) {
      Cone c = testutil::rand_cone(g, dim);
      DiscreteMeasure phi = testutil::rand_measure(g, c, 4, 2.0);
      if (phi.size() == 0) continue;
      double a = normal_gap(c, phi.atoms);
      for (int s = 0; s < 40; ++s) {
        Vec x = testutil::rand_in_cone(g, c);
        for (const Vec& u : phi.atoms) CHECK(a <= std::fabs(dot(x, u)) + 1e-9);
      }
    }
  }
}

TEST_CASE("truncation volumes: worked values and d-homogeneity") {
  double s3 = std::sqrt(3.0);
  Cone q = make_cone(2, {Vec(1, 0), Vec(0, 1)});
  Cone oct = make_cone(3, {Vec(1, 0, 0), Vec(0, 1, 0), Vec(0, 0, 1), Vec(1, 1, 1)});
  CHECK(oct.generators.size() == 3);
  CHECK(volume(truncate(q, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(volume(truncate(oct, 1.0)) == doctest::Approx(s3 / 2).epsilon(1e-12));

  std::mt19937_64 g(304);
  for (int dim : {2, 3}) {
    for (int trial = 0; trial < 15; ++trial) {
      Cone c = testutil::rand_cone(g, dim);
      double v1 = volume(truncate(c, 1.0));
      for (double t : {0.5, 1.0, 2.0, 7.0}) {
        double vt = volume(truncate(c, t));
        CHECK(vt == doctest::Approx(std::pow(t, dim) * v1).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("spatial cones: pyramid margins and a skewed interior axis") {
  std::vector<Vec> pg;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1}) pg.push_back(normalized(Vec(0.5 * sx, 0.5 * sy, 1.0)));
  Cone pyr = make_cone(3, pg);
  CHECK(pyr.generators.size() == 4);
  double ap = aperture(pyr);
  CHECK(ap > 0);
  CHECK(ap < 2 * M_PI);
  CHECK(std::fabs(boundary_margin(pyr, {Vec(0, 0, -1)}) -
                  std::asin(1.0 / std::sqrt(1.5))) <= 2e-3);

  std::vector<Vec> skew;
  for (double deg : {0.0, 0.3, 0.6, 179.9}) {
    double th = deg * M_PI / 180.0;
    skew.push_back(normalized(Vec(std::cos(th), std::sin(th), 0.05)));
  }
  Cone sk = make_cone(3, skew);
  double wg = 1e300, wn = -1e300;
  for (const Vec& gen : sk.generators) wg = std::min(wg, dot(gen, sk.w));
  for (const Vec& n : sk.facet_normals) wn = std::max(wn, dot(n, sk.w));
  CHECK(wg > 1e-9);   // axis strictly inside the cone
  CHECK(wn < -1e-9);  // and strictly inside the polar's interior cone
}

TEST_CASE("degenerate generator sets are rejected") {
  CHECK_THROWS_AS(make_cone(2, {Vec(1, 0), Vec(-1, 0), Vec(0, 1)}), NotPointed);
  CHECK_THROWS_AS(make_cone(3, {Vec(1, 0, 0), Vec(0, 1, 0), Vec(1, 1, 0)}), NotFullDim);
}
