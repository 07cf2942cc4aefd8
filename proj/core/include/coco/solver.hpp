#pragma once

// Discrete Minkowski problem in a cone: given a finite measure on Omega,
// find the C-full set whose surface area measure it is.  An exact planar
// chain construction serves as the d=2 oracle; the general path minimizes
// the convex-variational objective V(C\K(h)) + sum f_i h_i with damped
// Newton steps (exact facet-length Hessian in the plane, finite differences
// in space) under a strict-descent line search.
// Also: the margin-exhaustion procedure, the boundary-profile probe for the
// necessary condition, and two example generators (the orthant staircase
// with its two series, and the boundary-concentrated blow-up measure).

#include <cstdint>
#include <vector>

#include "coco/coconvex.hpp"
#include "coco/cone.hpp"
#include "coco/geom.hpp"
#include "coco/measures.hpp"

namespace coco {

// Exact d=2 construction: atoms sorted by angle across the window, edge
// vectors f_i * rot90ccw(u_i) chained between the two boundary rays, the
// endpoint scales recovered from a 2x2 linear solve.  The surface area
// measure of the result equals the input exactly (to roundoff).
CFullSet solve_chain_2d(const Cone& c, const DiscreteMeasure& phi);

struct SolveOptions {
  double tol = 1e-10;       // converged when residual_inf <= tol*max(1, max f)
  int max_iter = 200;
  std::uint64_t seed = 0;   // drives only the jittered restarts
  double init_scale = 1.0;  // multiplies the initial support numbers
};

struct SolveReport {
  CFullSet k;
  double residual_inf = 0.0;  // max_i |area_i(K) - f_i| on the certified body
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_trace;  // residual_inf after each iteration
};

// Minimizes G(h) = V(C\K(h)) + sum_i f_i h_i over h < 0, whose unique
// stationary point is the solution (grad G = f - facet areas).  Damped
// Newton with a backtracking strict-descent line search; pure Newton steps
// take over in the endgame where the area map is smooth.  Starts from the
// uniform depth -(max f/aperture)^{1/(d-1)} * init_scale (every cut tangent
// to one ball, so no facet starts swallowed); on a stall outside the
// endgame it restarts from mass-scaled and then seed-jittered depths.
SolveReport solve(const Cone& c, const DiscreteMeasure& phi, const SolveOptions& opts = {});

struct ExhaustionStage {
  double margin = 0.0;          // restriction threshold delta_j
  CFullSet k;                   // solution for the restricted measure
  std::size_t atom_count = 0;   // atoms of the restricted measure
  double volume = 0.0;          // coconvex volume (direct route)
  double clearance = 0.0;
  double hausdorff_prev = 0.0;  // distance to the previous stage (0 at stage 0)
  double volume_bound = 0.0;    // (c1/d) * total mass of the full measure
};

// Solves along a strictly decreasing margin ladder; each stage's volume must
// stay below (c1/d)*phi(total) (checked, InternalError on violation).
std::vector<ExhaustionStage> solve_exhaustion(const Cone& c, const DiscreteMeasure& phi,
                                              const std::vector<double>& margins);

struct ProfilePoint {
  double margin = 0.0;  // bin threshold delta; the bin is margin in [delta, 2*delta)
  double value = 0.0;   // delta^{d-1} * (mass of the bin)
};

struct ProfileReport {
  std::vector<ProfilePoint> points;
  // Raised when, over the trailing window spanning the last four decades of
  // delta, all bin values are positive, nondecreasing as delta shrinks, and
  // at least double overall: the measure cannot be a surface area measure.
  bool unbounded_suspect = false;
};

ProfileReport necessary_profile(const DiscreteMeasure& phi, const Cone& c,
                                const std::vector<double>& margins);

struct OrthantExample {
  std::vector<Vec> vertices;   // p_1,q_1,...,p_{N+1},q_{N+1}
  std::vector<Vec> normals;    // outer unit normal of band n, 1 <= n <= N
  std::vector<double> areas;   // exact trapezoid area of band n
  double width_series = 0.0;   // (1/sqrt2) sum (a_n + a_{n+1}): widths only
  double area_series = 0.0;    // sum of exact areas (includes slant factor)
};

// Staircase body in the octant with a_n = 1/n^2: vertices p_n=(a_n,0,n-1),
// q_n=(0,a_n,n-1).  Every band facet is re-derived from the vertex set by a
// supporting-plane check plus an in-plane hull (full check for N <= 200,
// per-band coplanarity + shoelace otherwise); disagreement beyond 1e-9
// relative is an InternalError.  width_series converges to (pi^2/3-1)/sqrt2
// while area_series converges to a strictly larger limit (~1.7373); both are
// finite, which is the point of the example.
OrthantExample gen_orthant_example(int n);

// Measure with atoms at margins 2^-k (k = 1..count) along the inward
// geodesic from the nearest boundary point of the window's deepest
// direction, masses k * 2^{k(d-1)}: locally finite on Omega but with
// margin^{d-1}-weighted bin mass growing like k, so the boundary-profile
// probe must flag it.  count <= 50 (double-precision placement limit).
DiscreteMeasure gen_boundary_blowup_measure(const Cone& c, int count);

}  // namespace coco
