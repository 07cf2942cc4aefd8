#pragma once

// Polytope kernel for dimensions 2 and 3: bounded intersections of closed
// halfspaces, volumes, facet areas, point-to-body distance and Hausdorff
// distance.  All tolerances are absolute unless noted, scaled by
// (1 + magnitude of the coordinates involved).

#include <array>
#include <cmath>
#include <vector>

#include "coco/errors.hpp"

namespace coco {

// Small fixed-capacity vector holding a point or direction in R^2 or R^3.
class Vec {
 public:
  Vec() = default;
  Vec(double x, double y) : c_{x, y, 0.0}, dim_(2) {}
  Vec(double x, double y, double z) : c_{x, y, z}, dim_(3) {}
  static Vec zero(int dim) { return dim == 2 ? Vec(0, 0) : Vec(0, 0, 0); }

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[i]; }
  double& operator[](int i) { return c_[i]; }

  Vec operator+(const Vec& o) const {
    Vec r = *this;
    for (int i = 0; i < dim_; ++i) r.c_[i] += o.c_[i];
    return r;
  }
  Vec operator-(const Vec& o) const {
    Vec r = *this;
    for (int i = 0; i < dim_; ++i) r.c_[i] -= o.c_[i];
    return r;
  }
  Vec operator*(double s) const {
    Vec r = *this;
    for (int i = 0; i < dim_; ++i) r.c_[i] *= s;
    return r;
  }
  Vec operator-() const { return *this * -1.0; }
  Vec& operator+=(const Vec& o) { return *this = *this + o; }

  friend Vec operator*(double s, const Vec& v) { return v * s; }

 private:
  std::array<double, 3> c_{0.0, 0.0, 0.0};
  int dim_ = 0;
};

double dot(const Vec& a, const Vec& b);
double norm(const Vec& v);
double dist(const Vec& a, const Vec& b);
Vec normalized(const Vec& v);  // throws InternalError on (near-)zero input
// z-component of the 2d cross product
double cross2(const Vec& a, const Vec& b);
Vec cross3(const Vec& a, const Vec& b);
// counterclockwise / clockwise quarter turns in the plane
Vec rot90ccw(const Vec& v);
Vec rot90cw(const Vec& v);
// geodesic distance between unit vectors
double angle_between(const Vec& a, const Vec& b);

// The closed halfspace {x : <normal, x> <= offset}.
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

// One facet of a polytope.  `normal` and `offset` are copied verbatim from
// the defining input halfspace; `source` is its index in the input list
// (-1 when not applicable).  `vertices` indexes Polytope::vertices and is
// ordered along the facet boundary (an edge pair in d=2, a convex polygon
// in d=3 counterclockwise around the outer normal).
struct Facet {
  Vec normal;
  double offset = 0.0;
  std::vector<int> vertices;
  double area = 0.0;
  int source = -1;
};

struct Polytope {
  int dim = 0;
  std::vector<Vec> vertices;
  std::vector<Facet> facets;
};

// Bounded, full-dimensional intersection of halfspaces.
//
// Throws Unbounded when the normals fail to positively span R^d (detected on
// the recession cone), EmptyIntersection when no interior point exists
// (this includes lower-dimensional degenerate intersections).  Redundant
// halfspaces produce no facet.  The second overload takes a strictly
// feasible point and skips the interior-point search.
Polytope halfspace_intersection(int dim, const std::vector<Halfspace>& hs);
Polytope halfspace_intersection(int dim, const std::vector<Halfspace>& hs,
                                const Vec& interior_hint);

// Volume by fan decomposition from the vertex centroid:
// sum of area_f * (offset_f - <n_f, centroid>) / dim.
double volume(const Polytope& p);

// (unit outer normal, d-1 dimensional facet measure) per facet.
std::vector<std::pair<Vec, double>> facet_areas(const Polytope& p);

// Exact Euclidean distance from x to the solid polytope (0 inside).
double distance_to(const Polytope& p, const Vec& x);

// Hausdorff distance between two convex polytopes; the maximum over
// directions is attained at a vertex, so scanning vertices is exact.
double hausdorff(const Polytope& p, const Polytope& q);

// Convex hull of a planar point set, counterclockwise, no duplicated or
// collinear vertices.  Used for cone cross-sections and hull cross-checks.
std::vector<int> convex_hull_2d(const std::vector<Vec>& pts);

// Shoelace area of a simple polygon given in order.
double polygon_area_2d(const std::vector<Vec>& poly);

// Checks the structural invariants of a constructed polytope (vertices lie
// on their facet planes, satisfy all facet inequalities, areas nonnegative).
// Throws InternalError on violation; used by tests and after construction.
void validate_polytope(const Polytope& p);

}  // namespace coco
