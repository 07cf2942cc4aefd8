#pragma once

// C-full sets K = C ∩ ⋂ H^-(u_i, h_i) encoded by support numbers h_i <= 0 at
// unit normals u_i in Omega.  All geometry happens on a certified truncation
// body = K ∩ {<w,x> <= t}: t is grown until (a) the w-facet of the body has
// the same area as the w-facet of the plain truncated cone (the cut region
// does not reach the lid) and (b) every boundary vertex interior to the cone
// lies below height t/2 (the excavation is confined near the apex).

#include <vector>

#include "coco/cone.hpp"
#include "coco/geom.hpp"
#include "coco/measures.hpp"

namespace coco {

struct CFullSet {
  Cone cone;
  std::vector<Vec> normals;     // unit directions in Omega
  std::vector<double> support;  // h_i <= 0, parallel to normals
  double trunc_height = 0.0;    // certified t
  Polytope body;                // K truncated at t
};

// Builds and certifies the truncation, starting at
// t0 = 4 (1 + max|h| / normal_gap) and doubling at most 20 times.
CFullSet build(const Cone& c, const std::vector<Vec>& normals,
               const std::vector<double>& support);

// Facet area attached to each prescribed normal whose facet is present in
// the body; facets of the cone itself and the truncation lid are excluded.
DiscreteMeasure surface_area_measure(const CFullSet& k);

// Area of the facet at each prescribed normal (0 when absent), computed on
// an uncertified truncation at height t.  Every boundary point x of the cut
// region satisfies ||x|| <= |h|/normal_gap, so any t above max|h|/normal_gap
// yields height-independent areas; iterative solvers use this as their
// evaluation kernel and certify only the final body.
// Same as build, but certifies the caller's truncation height t instead of
// searching for one; throws CertificationFailed if t is not large enough.
CFullSet build_at_height(const Cone& c, const std::vector<Vec>& normals,
                         const std::vector<double>& support, double t);

std::vector<double> cut_facet_areas(const Cone& c, const std::vector<Vec>& normals,
                                    const std::vector<double>& support, double t);

// Per-normal facet areas of a certified body, aligned with k.normals
// (zero where the facet vanished).
std::vector<double> cut_facet_areas(const CFullSet& k);

// Volume of the excavated region on the same uncertified truncation; exact
// (height-independent) under the same condition on t as cut_facet_areas.
double excavated_volume(const Cone& c, const std::vector<Vec>& normals,
                        const std::vector<double>& support, double t);

// h(K,u) = max over body vertices of <x,u>, for u in the closure of Omega
// (margin >= -1e-12); exact for C-full sets by the certification.
double support_value(const CFullSet& k, const Vec& u);

enum class VolumeMethod { integral, direct };

// Volume of C \ K.  integral: -(1/d) Σ h(K,u_i) S(K,{u_i})  (support
// numbers against facet areas); direct: volume(C_t) - volume(body).
double coconvex_volume(const CFullSet& k, VolumeMethod method);

// Radius of the largest origin-centered ball missing int K.
double clearance_radius(const CFullSet& k);

// Hausdorff distance of K and L through a common certified truncation;
// recomputed at doubled height and required to agree within 1e-9.
double hausdorff_cfull(const CFullSet& k, const CFullSet& l);

struct BoundsReport {
  double r = 0.0;          // clearance radius
  double c1 = 0.0;         // (b / aperture)^{1/(d-1)}
  double a = 0.0;          // normal gap of the atom family
  double c8 = 0.0;         // c1 / a
  double sup_abs_h = 0.0;  // max |h(K,u)| over the family
  double lip_h = 0.0;      // Lipschitz quotient of h over the family
  double bl_h = 0.0;       // sup_abs_h + lip_h
  bool all_checks_pass = false;
};

// Certified bound suite: r <= c1; -r <= h(K,u) <= 0 on the family;
// sup|h| <= c1; lip h <= c8.  b must dominate the total surface area.
BoundsReport bounds_report(const CFullSet& k, const std::vector<Vec>& omega, double b);

}  // namespace coco
