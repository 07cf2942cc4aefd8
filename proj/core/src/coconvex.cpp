#include "coco/coconvex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "coco/errors.hpp"

namespace coco {

namespace {

double linf(const Vec& v) {
  double m = 0.0;
  for (int i = 0; i < v.dim(); ++i) m = std::max(m, std::fabs(v[i]));
  return m;
}

Polytope assemble(const Cone& c, const std::vector<Vec>& normals,
                  const std::vector<double>& support, double t) {
  std::vector<Halfspace> hs;
  for (const Vec& n : c.facet_normals) hs.push_back({n, 0.0});
  for (std::size_t i = 0; i < normals.size(); ++i) hs.push_back({normals[i], support[i]});
  hs.push_back({c.w, t});
  return halfspace_intersection(c.dim, hs, (0.5 * t) * c.w);
}

double facet_area_by_source(const Polytope& p, int source) {
  for (const Facet& f : p.facets)
    if (f.source == source) return f.area;
  return -1.0;  // absent
}

// Certification that t is "sufficiently large": the lid is untouched by the
// cuts, and the excavated boundary stays below half height.
bool certify(const Cone& c, const Polytope& body, std::size_t m, double t) {
  int ncone = static_cast<int>(c.facet_normals.size());
  int lid_source = ncone + static_cast<int>(m);
  double lid_area = facet_area_by_source(body, lid_source);
  if (lid_area < 0.0) return false;
  Polytope ct = truncate(c, t);
  double plain_lid = facet_area_by_source(ct, ncone);
  if (plain_lid < 0.0) return false;
  if (std::fabs(lid_area - plain_lid) > 1e-9 * plain_lid) return false;
  for (const Vec& v : body.vertices) {
    double hw = dot(c.w, v);
    if (hw <= 0.5 * t + 1e-9 * (1.0 + t)) continue;
    bool on_lid = hw >= t - 1e-9 * (1.0 + t);
    double worst = -1e300;
    for (const Vec& n : c.facet_normals) worst = std::max(worst, dot(n, v));
    bool on_cone = worst >= -1e-9 * (1.0 + linf(v));
    if (!on_lid && !on_cone) return false;
  }
  return true;
}

void validate_support(const std::vector<Vec>& normals,
                      const std::vector<double>& support) {
  if (normals.size() != support.size())
    throw ValidationError("normal and support lists have different lengths");
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (!std::isfinite(support[i]) || support[i] > 0.0) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "support number %zu is %.17g, must be <= 0", i, support[i]);
      throw PositiveSupportNumber(buf);
    }
  }
}

}  // namespace

CFullSet build_at_height(const Cone& c, const std::vector<Vec>& normals,
                         const std::vector<double>& support, double t) {
  validate_support(normals, support);
  Polytope body = assemble(c, normals, support, t);
  if (!certify(c, body, normals.size(), t)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "truncation at height %.6g is not large enough", t);
    throw CertificationFailed(buf);
  }
  CFullSet k;
  k.cone = c;
  k.normals = normals;
  k.support = support;
  k.trunc_height = t;
  k.body = std::move(body);
  return k;
}

CFullSet build(const Cone& c, const std::vector<Vec>& normals,
               const std::vector<double>& support) {
  validate_support(normals, support);
  double t = 4.0;
  if (!normals.empty()) {
    double a = normal_gap(c, normals);  // validates membership in Omega
    double hmax = 0.0;
    for (double h : support) hmax = std::max(hmax, std::fabs(h));
    t = 4.0 * (1.0 + hmax / a);
  }
  for (int attempt = 0; attempt < 20; ++attempt) {
    Polytope body = assemble(c, normals, support, t);
    if (certify(c, body, normals.size(), t)) {
      CFullSet k;
      k.cone = c;
      k.normals = normals;
      k.support = support;
      k.trunc_height = t;
      k.body = std::move(body);
      return k;
    }
    t *= 2.0;
  }
  throw CertificationFailed("truncation certificate not reached after 20 doublings");
}

std::vector<double> cut_facet_areas(const Cone& c, const std::vector<Vec>& normals,
                                    const std::vector<double>& support, double t) {
  Polytope body = assemble(c, normals, support, t);
  int ncone = static_cast<int>(c.facet_normals.size());
  std::vector<double> areas(normals.size(), 0.0);
  for (const Facet& f : body.facets)
    if (f.source >= ncone && f.source < ncone + static_cast<int>(normals.size()))
      areas[f.source - ncone] = f.area;
  return areas;
}

double excavated_volume(const Cone& c, const std::vector<Vec>& normals,
                        const std::vector<double>& support, double t) {
  Polytope body = assemble(c, normals, support, t);
  return volume(truncate(c, t)) - volume(body);
}

std::vector<double> cut_facet_areas(const CFullSet& k) {
  int ncone = static_cast<int>(k.cone.facet_normals.size());
  std::vector<double> areas(k.normals.size(), 0.0);
  for (const Facet& f : k.body.facets)
    if (f.source >= ncone && f.source < ncone + static_cast<int>(k.normals.size()))
      areas[f.source - ncone] = f.area;
  return areas;
}

DiscreteMeasure surface_area_measure(const CFullSet& k) {
  int ncone = static_cast<int>(k.cone.facet_normals.size());
  int m = static_cast<int>(k.normals.size());
  std::vector<Vec> atoms;
  std::vector<double> masses;
  for (const Facet& f : k.body.facets)
    if (f.source >= ncone && f.source < ncone + m) {
      atoms.push_back(k.normals[f.source - ncone]);
      masses.push_back(f.area);
    }
  return make_measure(k.cone.dim, atoms, masses);
}

double support_value(const CFullSet& k, const Vec& u) {
  OmegaCheck oc = omega_contains(k.cone, u);
  if (oc.margin < -1e-12) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "direction outside closure of Omega (margin %.3e)", oc.margin);
    throw DirectionOutsideClosure(buf);
  }
  double best = -1e300;
  for (const Vec& v : k.body.vertices) best = std::max(best, dot(v, u));
  return best;
}

double coconvex_volume(const CFullSet& k, VolumeMethod method) {
  if (method == VolumeMethod::integral) {
    DiscreteMeasure sam = surface_area_measure(k);
    double s = 0.0;
    for (std::size_t i = 0; i < sam.size(); ++i)
      s -= support_value(k, sam.atoms[i]) * sam.masses[i];
    return s / k.cone.dim;
  }
  return volume(truncate(k.cone, k.trunc_height)) - volume(k.body);
}

double clearance_radius(const CFullSet& k) {
  return distance_to(k.body, Vec::zero(k.cone.dim));
}

double hausdorff_cfull(const CFullSet& k, const CFullSet& l) {
  if (!same_cone(k.cone, l.cone)) throw ConeMismatch("sets live in different cones");
  double t = 2.0 * std::max(k.trunc_height, l.trunc_height);
  CFullSet ka = build_at_height(k.cone, k.normals, k.support, t);
  CFullSet la = build_at_height(l.cone, l.normals, l.support, t);
  double d1 = hausdorff(ka.body, la.body);
  CFullSet kb = build_at_height(k.cone, k.normals, k.support, 2.0 * t);
  CFullSet lb = build_at_height(l.cone, l.normals, l.support, 2.0 * t);
  double d2 = hausdorff(kb.body, lb.body);
  if (std::fabs(d1 - d2) > 1e-9 * (1.0 + d1)) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "Hausdorff distance not stable under truncation doubling: %.12g vs %.12g", d1,
                  d2);
    throw CertificationFailed(buf);
  }
  return d1;
}

BoundsReport bounds_report(const CFullSet& k, const std::vector<Vec>& omega, double b) {
  DiscreteMeasure sam = surface_area_measure(k);
  if (b < sam.total() - 1e-12) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "bound %.17g is below the total surface area %.17g", b,
                  sam.total());
    throw InsufficientBound(buf);
  }
  for (const Vec& atom : sam.atoms) {
    bool covered = false;
    for (const Vec& u : omega)
      if (dist(atom, u) <= 1e-12) {
        covered = true;
        break;
      }
    if (!covered) throw ValidationError("atom family must contain every measure atom");
  }
  BoundsReport rep;
  rep.r = clearance_radius(k);
  double sigma = aperture(k.cone);
  int d = k.cone.dim;
  rep.c1 = (b <= 0.0) ? 0.0 : (d == 2 ? b / sigma : std::sqrt(b / sigma));
  bool pass = rep.r <= rep.c1 + 1e-9;
  if (!omega.empty()) {
    rep.a = normal_gap(k.cone, omega);
    rep.c8 = rep.c1 / rep.a;
    std::vector<double> h;
    for (const Vec& u : omega) h.push_back(support_value(k, u));
    for (std::size_t i = 0; i < omega.size(); ++i) {
      rep.sup_abs_h = std::max(rep.sup_abs_h, std::fabs(h[i]));
      pass = pass && h[i] <= 1e-9 && h[i] >= -rep.r - 1e-9;
      for (std::size_t j = i + 1; j < omega.size(); ++j) {
        double dd = dist(omega[i], omega[j]);
        if (dd > 1e-12) rep.lip_h = std::max(rep.lip_h, std::fabs(h[i] - h[j]) / dd);
      }
    }
    rep.bl_h = rep.sup_abs_h + rep.lip_h;
    pass = pass && rep.sup_abs_h <= rep.c1 + 1e-9 && rep.lip_h <= rep.c8 + 1e-9;
  }
  rep.all_checks_pass = pass;
  return rep;
}

}  // namespace coco
