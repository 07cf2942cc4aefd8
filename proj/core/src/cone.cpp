#include "coco/cone.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "coco/errors.hpp"

namespace coco {

namespace {

// Gaussian elimination with partial pivoting for tiny systems (n <= 4).
bool solve_linear(int n, double a[4][5]) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    if (std::fabs(a[piv][col]) < 1e-14) return false;
    if (piv != col)
      for (int c = col; c <= n; ++c) std::swap(a[piv][c], a[col][c]);
    for (int r = col + 1; r < n; ++r) {
      double f = a[r][col] / a[col][col];
      for (int c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  // back substitution stores the solution in column n
  for (int col = n - 1; col >= 0; --col) {
    double s = a[col][n];
    for (int c = col + 1; c < n; ++c) s -= a[col][c] * a[c][n];
    a[col][n] = s / a[col][col];
  }
  return true;
}

// Does conv(pts over index subset) contain the origin?  Solves for convex
// coefficients; a singular system means a degenerate simplex, which lower
// dimensional subsets already cover.
bool origin_in_simplex(const std::vector<Vec>& pts, const std::vector<int>& idx, int dim) {
  int k = static_cast<int>(idx.size());
  // unknowns: lambda_0..lambda_{k-1}; equations: sum lambda*v = 0 (dim rows),
  // sum lambda = 1
  if (k > 4 || dim + 1 != k) return false;
  double a[4][5] = {};
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < k; ++c) a[r][c] = pts[idx[c]][r];
  for (int c = 0; c < k; ++c) a[dim][c] = 1.0;
  a[dim][k] = 1.0;
  if (!solve_linear(k, a)) return false;
  for (int c = 0; c < k; ++c)
    if (a[c][k] < -1e-10) return false;
  return true;
}

Vec closest_on_segment(const Vec& p, const Vec& q) {
  Vec d = q - p;
  double dd = dot(d, d);
  if (dd < 1e-30) return p;
  double t = std::clamp(-dot(p, d) / dd, 0.0, 1.0);
  return p + t * d;
}

// Closest point to the origin on triangle (a,b,c) when the plane projection
// has nonnegative barycentric coordinates; edge/vertex cases are handled by
// the smaller subsets in the enumeration.
bool closest_on_triangle_interior(const Vec& a, const Vec& b, const Vec& c, Vec* out) {
  Vec ab = b - a, ac = c - a;
  Vec m = cross3(ab, ac);
  double mm = dot(m, m);
  if (mm < 1e-24) return false;
  Vec q = (dot(a, m) / mm) * m;  // projection of the origin onto the plane
  Vec aq = q - a;
  double d11 = dot(ab, ab), d12 = dot(ab, ac), d22 = dot(ac, ac);
  double r1 = dot(aq, ab), r2 = dot(aq, ac);
  double det = d11 * d22 - d12 * d12;
  if (std::fabs(det) < 1e-24) return false;
  double s = (r1 * d22 - r2 * d12) / det;
  double t = (d11 * r2 - d12 * r1) / det;
  if (s < -1e-12 || t < -1e-12 || s + t > 1.0 + 1e-12) return false;
  *out = q;
  return true;
}

// Exact (enumeration-based) minimum-norm point of the convex hull of unit
// vectors: the nearest point lies in the relative interior of some face, so
// it is found among projections onto subsets of <= dim points, unless the
// hull contains the origin, which subsets of dim+1 points detect.
double min_norm_of_hull(const std::vector<Vec>& pts, int dim) {
  int n = static_cast<int>(pts.size());
  double best = norm(pts[0]);
  for (int i = 0; i < n; ++i) best = std::min(best, norm(pts[i]));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      best = std::min(best, norm(closest_on_segment(pts[i], pts[j])));
  if (dim == 3) {
    Vec q = Vec::zero(3);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
          if (closest_on_triangle_interior(pts[i], pts[j], pts[k], &q))
            best = std::min(best, norm(q));
  }
  // origin containment (full-dimensional simplices)
  std::vector<int> idx(dim + 1);
  if (dim == 2) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          idx = {i, j, k};
          if (origin_in_simplex(pts, idx, dim)) return 0.0;
        }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
          for (int l = k + 1; l < n; ++l) {
            idx = {i, j, k, l};
            if (origin_in_simplex(pts, idx, dim)) return 0.0;
          }
  }
  return best;
}

Vec min_norm_point_of_hull(const std::vector<Vec>& pts, int dim) {
  int n = static_cast<int>(pts.size());
  Vec best = pts[0];
  double bn = norm(pts[0]);
  auto take = [&](const Vec& v) {
    double nv = norm(v);
    if (nv < bn) {
      bn = nv;
      best = v;
    }
  };
  for (int i = 0; i < n; ++i) take(pts[i]);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) take(closest_on_segment(pts[i], pts[j]));
  if (dim == 3) {
    Vec q = Vec::zero(3);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
          if (closest_on_triangle_interior(pts[i], pts[j], pts[k], &q)) take(q);
  }
  return best;
}

// Interior-direction search used when the normalized generator sum fails the
// strict-interior validation (strongly skewed cones): deterministic projected
// subgradient ascent on f(x) = min(min_i <g_i,x>, min_f -<n_f,x>).
Vec interior_axis(const std::vector<Vec>& gens, const std::vector<Vec>& normals, Vec x0) {
  Vec x = x0;
  auto eval = [&](const Vec& v, Vec* grad) {
    double f = 1e300;
    for (const Vec& g : gens)
      if (dot(g, v) < f) {
        f = dot(g, v);
        if (grad) *grad = g;
      }
    for (const Vec& n : normals)
      if (-dot(n, v) < f) {
        f = -dot(n, v);
        if (grad) *grad = -n;
      }
    return f;
  };
  for (int it = 1; it <= 20000; ++it) {
    Vec g = x;
    double f = eval(x, &g);
    if (f > 1e-6) break;
    x = normalized(x + (0.5 / std::sqrt(static_cast<double>(it))) * g);
  }
  if (eval(x, nullptr) <= 1e-9)
    throw InternalError("interior axis search failed to find a strictly interior direction");
  return x;
}

struct Arc {
  Vec a, b;       // unit endpoints on the boundary of Omega
  double length;  // angle between them
};

// Boundary of Omega: in d=3 one great-circle arc per extreme ray r (the
// polar facet orthogonal to r), joining consecutive polar extreme rays; in
// d=2 the two endpoints of the Omega arc.
std::vector<Arc> omega_boundary_arcs(const Cone& c) {
  std::vector<Arc> arcs;
  int k = static_cast<int>(c.generators.size());
  if (c.dim == 2) {
    arcs.push_back({c.facet_normals[0], c.facet_normals[0], 0.0});
    arcs.push_back({c.facet_normals[1], c.facet_normals[1], 0.0});
    return arcs;
  }
  for (int i = 0; i < k; ++i) {
    const Vec& a = c.facet_normals[(i + k - 1) % k];
    const Vec& b = c.facet_normals[i];
    arcs.push_back({a, b, angle_between(a, b)});
  }
  return arcs;
}

Vec slerp(const Vec& a, const Vec& b, double ang, double t) {
  if (ang < 1e-12) return a;
  double s = std::sin(ang);
  return normalized((std::sin((1.0 - t) * ang) / s) * a + (std::sin(t * ang) / s) * b);
}

void check_unit(const Vec& u, const char* what) {
  if (std::fabs(norm(u) - 1.0) > 1e-9) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s must be a unit vector (|u| = %.17g)", what, norm(u));
    throw ValidationError(buf);
  }
}

}  // namespace

Cone make_cone(int dim, const std::vector<Vec>& gens) {
  if (dim != 2 && dim != 3) throw DimensionMismatch("cone dimension must be 2 or 3");
  if (static_cast<int>(gens.size()) < dim) throw NotFullDim("fewer generators than the dimension");
  std::vector<Vec> unit;
  for (const Vec& g : gens) {
    if (g.dim() != dim) throw DimensionMismatch("generator dimension mismatch");
    double n = norm(g);
    if (!std::isfinite(n) || n < 1e-12) throw ValidationError("zero or non-finite generator");
    Vec u = (1.0 / n) * g;
    bool dup = false;
    for (const Vec& v : unit)
      if (dist(u, v) < 1e-9) {
        dup = true;
        break;
      }
    if (!dup) unit.push_back(u);
  }
  // full dimensionality
  if (dim == 2) {
    double mx = 0.0;
    for (size_t i = 0; i < unit.size(); ++i)
      for (size_t j = i + 1; j < unit.size(); ++j)
        mx = std::max(mx, std::fabs(cross2(unit[i], unit[j])));
    if (mx < 1e-12) throw NotFullDim("generators span only a line");
  } else {
    double mx = 0.0;
    for (size_t i = 0; i < unit.size(); ++i)
      for (size_t j = i + 1; j < unit.size(); ++j)
        for (size_t k = j + 1; k < unit.size(); ++k)
          mx = std::max(mx, std::fabs(dot(unit[i], cross3(unit[j], unit[k]))));
    if (mx < 1e-12) throw NotFullDim("generators span only a plane");
  }
  // pointedness: the hull of the unit generators must avoid the origin
  double mn = min_norm_of_hull(unit, dim);
  if (mn <= 1e-9) throw NotPointed("positive hull of the generators contains a line");
  Vec witness = normalized(min_norm_point_of_hull(unit, dim));

  Cone c;
  c.dim = dim;
  // cross-section at <x,witness> = 1, hulled in-plane
  if (dim == 2) {
    Vec e = rot90ccw(witness);
    int lo = 0, hi = 0;
    double tlo = 1e300, thi = -1e300;
    for (size_t i = 0; i < unit.size(); ++i) {
      double t = dot(unit[i], e) / dot(unit[i], witness);
      if (t < tlo) {
        tlo = t;
        lo = static_cast<int>(i);
      }
      if (t > thi) {
        thi = t;
        hi = static_cast<int>(i);
      }
    }
    c.generators = {unit[lo], unit[hi]};
    if (cross2(c.generators[0], c.generators[1]) <= 0.0)
      throw InternalError("cross-section ordering failed");
    c.facet_normals = {rot90cw(c.generators[0]), rot90ccw(c.generators[1])};
  } else {
    Vec ref = std::fabs(witness[0]) < 0.9 ? Vec(1, 0, 0) : Vec(0, 1, 0);
    Vec e1 = normalized(cross3(witness, ref));
    Vec e2 = cross3(witness, e1);
    std::vector<Vec> flat;
    for (const Vec& g : unit) {
      Vec y = (1.0 / dot(g, witness)) * g;
      flat.emplace_back(dot(y, e1), dot(y, e2));
    }
    std::vector<int> hull = convex_hull_2d(flat);
    if (hull.size() < 3) throw NotFullDim("cross-section degenerates to a segment");
    for (int i : hull) c.generators.push_back(unit[i]);
    int k = static_cast<int>(c.generators.size());
    for (int i = 0; i < k; ++i) {
      Vec n = -1.0 * normalized(cross3(c.generators[i], c.generators[(i + 1) % k]));
      for (const Vec& g : unit)
        if (dot(n, g) > 1e-9) throw InternalError("facet normal fails to support the cone");
      c.facet_normals.push_back(n);
    }
  }
  // strictly interior axis
  Vec w0 = Vec::zero(dim);
  for (const Vec& g : c.generators) w0 += g;
  bool ok = norm(w0) > 1e-12;
  if (ok) {
    w0 = normalized(w0);
    for (const Vec& g : c.generators) ok = ok && dot(g, w0) > 1e-9;
    for (const Vec& n : c.facet_normals) ok = ok && dot(n, w0) < -1e-9;
  }
  c.w = ok ? w0 : interior_axis(c.generators, c.facet_normals, witness);
  return c;
}

Cone polar(const Cone& c) { return make_cone(c.dim, c.facet_normals); }

OmegaCheck omega_contains(const Cone& c, const Vec& u) {
  if (u.dim() != c.dim) throw DimensionMismatch("direction dimension mismatch");
  check_unit(u, "direction");
  OmegaCheck r;
  r.margin = 1e300;
  for (const Vec& g : c.generators) r.margin = std::min(r.margin, -dot(u, g));
  r.inside = r.margin > 0.0;
  return r;
}

Polytope truncate(const Cone& c, double t) {
  if (!(t > 0.0)) throw ValidationError("truncation height must be positive");
  std::vector<Halfspace> hs;
  for (const Vec& n : c.facet_normals) hs.push_back({n, 0.0});
  hs.push_back({c.w, t});
  return halfspace_intersection(c.dim, hs, (0.5 * t) * c.w);
}

double aperture(const Cone& c) {
  if (c.dim == 2) return angle_between(c.generators[0], c.generators[1]);
  int k = static_cast<int>(c.generators.size());
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    const Vec& r = c.generators[i];
    const Vec& rp = c.generators[(i + k - 1) % k];
    const Vec& rn = c.generators[(i + 1) % k];
    Vec tp = normalized(rp - dot(rp, r) * r);
    Vec tn = normalized(rn - dot(rn, r) * r);
    sum += angle_between(tp, tn);
  }
  return sum - (k - 2) * M_PI;
}

std::vector<double> boundary_margins(const Cone& c, const std::vector<Vec>& atoms) {
  std::vector<Arc> arcs = omega_boundary_arcs(c);
  int k = static_cast<int>(c.generators.size());
  // dense boundary sampling at 1e-3 rad, reused across atoms
  std::vector<Vec> samples;
  for (const Arc& arc : arcs) {
    int steps = std::max(1, static_cast<int>(std::ceil(arc.length / 1e-3)));
    for (int s = 0; s <= steps; ++s)
      samples.push_back(slerp(arc.a, arc.b, arc.length, static_cast<double>(s) / steps));
  }
  std::vector<double> out;
  for (size_t ai = 0; ai < atoms.size(); ++ai) {
    const Vec& u = atoms[ai];
    OmegaCheck oc = omega_contains(c, u);
    if (!oc.inside) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "atom %zu lies outside Omega (margin %.3e)", ai, oc.margin);
      throw AtomOutsideOmega(buf);
    }
    double best = 1e300;
    if (c.dim == 2) {
      best = std::min(angle_between(u, c.facet_normals[0]), angle_between(u, c.facet_normals[1]));
    } else {
      for (const Vec& n : c.facet_normals) best = std::min(best, angle_between(u, n));
      for (int i = 0; i < k; ++i) {
        const Vec& r = c.generators[i];
        double s = -dot(u, r);
        Vec proj = u - dot(u, r) * r;
        if (norm(proj) < 1e-12) continue;  // equidistant from the whole circle
        Vec q = normalized(proj);
        const Vec& na = c.facet_normals[(i + k - 1) % k];
        const Vec& nb = c.facet_normals[i];
        double cab = dot(na, nb);
        double det = 1.0 - cab * cab;
        if (det < 1e-12) continue;
        double qa = dot(q, na), qb = dot(q, nb);
        double alpha = (qa - cab * qb) / det;
        double beta = (qb - cab * qa) / det;
        if (alpha >= -1e-9 && beta >= -1e-9)
          best = std::min(best, std::asin(std::clamp(s, -1.0, 1.0)));
      }
    }
    // certify against the dense sampling
    double sampled = 1e300;
    for (const Vec& p : samples) sampled = std::min(sampled, angle_between(u, p));
    if (std::fabs(best - sampled) > 2e-3) {
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "boundary margin certification failed: analytic %.12g vs sampled %.12g", best,
                    sampled);
      throw InternalError(buf);
    }
    out.push_back(best);
  }
  return out;
}

double boundary_margin(const Cone& c, const std::vector<Vec>& atoms) {
  if (atoms.empty()) throw ValidationError("boundary margin of an empty family");
  std::vector<double> m = boundary_margins(c, atoms);
  return *std::min_element(m.begin(), m.end());
}

double normal_gap(const Cone& c, const std::vector<Vec>& atoms) {
  if (atoms.empty()) throw ValidationError("normal gap of an empty family");
  int k = static_cast<int>(c.generators.size());
  double gap = 1e300;
  for (size_t ai = 0; ai < atoms.size(); ++ai) {
    const Vec& u = atoms[ai];
    OmegaCheck oc = omega_contains(c, u);
    if (!oc.inside) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "atom %zu lies outside Omega (margin %.3e)", ai, oc.margin);
      throw AtomOutsideOmega(buf);
    }
    double best = -1e300;
    for (const Vec& g : c.generators) best = std::max(best, dot(g, u));
    if (c.dim == 3) {
      // critical points interior to a facet: the normalized in-plane
      // projection of u, admissible only when it lies inside the facet;
      // for u in Omega it never does (its inner product with u would be
      // nonnegative), but the check documents the full candidate set.
      for (int i = 0; i < k; ++i) {
        const Vec& ra = c.generators[i];
        const Vec& rb = c.generators[(i + 1) % k];
        const Vec& n = c.facet_normals[i];
        Vec proj = u - dot(u, n) * n;
        if (norm(proj) < 1e-12) continue;
        Vec q = normalized(proj);
        double cab = dot(ra, rb);
        double det = 1.0 - cab * cab;
        if (det < 1e-12) continue;
        double qa = dot(q, ra), qb = dot(q, rb);
        double alpha = (qa - cab * qb) / det;
        double beta = (qb - cab * qa) / det;
        if (alpha >= -1e-12 && beta >= -1e-12) best = std::max(best, dot(q, u));
      }
    }
    if (best >= 0.0) throw InternalError("normal gap candidate scan produced a nonnegative value");
    gap = std::min(gap, -best);
  }
  return gap;
}

bool same_cone(const Cone& a, const Cone& b) {
  if (a.dim != b.dim || a.generators.size() != b.generators.size()) return false;
  if (dist(a.w, b.w) > 1e-12) return false;
  std::vector<bool> used(b.generators.size(), false);
  for (const Vec& g : a.generators) {
    bool found = false;
    for (size_t j = 0; j < b.generators.size(); ++j) {
      if (!used[j] && dist(g, b.generators[j]) <= 1e-12) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace coco
