#pragma once

// Pointed full-dimensional polyhedral cones in R^2 / R^3, their polars, and
// the spherical geometry of the normal-direction window
// Omega = S^{d-1} ∩ int(polar cone): apertures, geodesic margins to the
// boundary of Omega, and the uniform normal gap
// a = min over atoms u of min over unit x in C of |<x,u>|.

#include <vector>

#include "coco/geom.hpp"

namespace coco {

struct Cone {
  int dim = 0;
  // extreme unit generators; d=2: (g0,g1) counterclockwise, d=3: cyclic
  // counterclockwise around w
  std::vector<Vec> generators;
  // unit outer facet normals, <n,x> <= 0 on the cone; in d=3 facet i is
  // spanned by generators i and i+1 (cyclically)
  std::vector<Vec> facet_normals;
  // unit axis direction with <n,w> < 0 for every facet normal and
  // <g,w> > 0 for every generator
  Vec w;
};

// Builds the cone spanned by `gens` (any positive multiples, any order,
// redundant generators allowed).  Throws NotPointed when the positive hull
// contains a line, NotFullDim when it spans a proper subspace.
Cone make_cone(int dim, const std::vector<Vec>& gens);

// Polar cone {x : <x,y> <= 0 for all y in C}; an involution.
Cone polar(const Cone& c);

struct OmegaCheck {
  bool inside = false;
  double margin = 0.0;  // min over generators of -<u,g>; positive iff inside
};

// Strict membership of the unit vector u in Omega = S ∩ int(polar).
OmegaCheck omega_contains(const Cone& c, const Vec& u);

// C ∩ {x : <w,x> <= t}, t > 0.
Polytope truncate(const Cone& c, double t);

// Spherical measure of S^{d-1} ∩ C: the opening angle in d=2, the geodesic
// polygon area (angle excess) in d=3.
double aperture(const Cone& c);

// Geodesic distance from each atom direction to the boundary of Omega,
// computed per polar facet as arcsin(-<u,g>) with nearest-point membership
// verified against the polar facet structure, plus the polar extreme rays.
// Every call cross-checks against a dense sampling of bd Omega at 1e-3 rad
// resolution and insists on agreement within 2e-3 rad.
std::vector<double> boundary_margins(const Cone& c, const std::vector<Vec>& atoms);
// min over atoms (the quantity usually denoted Delta(omega))
double boundary_margin(const Cone& c, const std::vector<Vec>& atoms);

// a = min over atoms u of -max{<x,u> : x in C, |x|=1}; the maximum is
// attained on an extreme ray (candidate feet interior to faces are checked
// and never win for u in Omega).  Throws AtomOutsideOmega.
double normal_gap(const Cone& c, const std::vector<Vec>& atoms);

// Generators and w agree within 1e-12 (set-wise for generators).
bool same_cone(const Cone& a, const Cone& b);

}  // namespace coco
