#pragma once

// Finite discrete Borel measures on the unit sphere, the exact
// Levy-Prokhorov distance between them (breakpoint scan + max-flow
// feasibility, with a brute-force subset-enumeration oracle for small
// supports), bounded-Lipschitz norms of functions sampled on atom sets, and
// margin-threshold restriction used by the exhaustion procedure.

#include <cstddef>
#include <vector>

#include "coco/cone.hpp"
#include "coco/geom.hpp"

namespace coco {

struct DiscreteMeasure {
  int dim = 0;
  std::vector<Vec> atoms;     // pairwise distinct unit directions
  std::vector<double> masses; // strictly positive, parallel to atoms
  double total() const;
  std::size_t size() const { return atoms.size(); }
};

// Validates units (1e-12) and positivity; merges duplicate directions
// (within 1e-12) by adding masses, keeping first-occurrence order.
DiscreteMeasure make_measure(int dim, const std::vector<Vec>& atoms,
                             const std::vector<double>& masses);

// Exact Levy-Prokhorov distance:
//   inf { eps : mu(A) <= nu(A_eps) + eps and nu(A) <= mu(A_eps) + eps }
// with A_eps the open eps-neighborhood (strict ||x-y|| < eps).  The
// one-sided excess g(eps) = max_A [mu(A) - nu(A_eps)] is piecewise constant
// with breakpoints at cross pairwise distances and is evaluated by max-flow
// min-cut on each half-open breakpoint interval.
double lp_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// Same value by exhaustive subset enumeration; requires
// |supp mu| + |supp nu| <= 16 (TooManyAtoms).  Agrees with lp_distance
// bit-for-bit: both evaluate candidate sets with the same index-ascending
// summation.
double lp_distance_oracle(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// A real-valued function known at finitely many sphere points.
struct SphereFunction {
  std::vector<Vec> atoms;
  std::vector<double> values;
  double at(const Vec& u) const;  // throws MissingValue
};

struct BlNorm {
  double lip = 0.0;  // max |f(u)-f(v)| / ||u-v|| over distinct pairs
  double sup = 0.0;  // max |f|
  double bl = 0.0;   // lip + sup
};
BlNorm bl_norm(const SphereFunction& f, const std::vector<Vec>& omega);

// | integral of f d(mu) - integral of f d(nu) |
double pairing_gap(const SphereFunction& f, const DiscreteMeasure& mu,
                   const DiscreteMeasure& nu);

// Sub-measure of the atoms whose boundary margin is >= delta.
DiscreteMeasure restrict_margin(const DiscreteMeasure& mu, const Cone& c, double delta);

}  // namespace coco
