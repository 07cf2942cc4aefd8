#include "coco/geom.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <utility>

namespace coco {

double dot(const Vec& a, const Vec& b) {
  double s = 0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& v) { return std::sqrt(dot(v, v)); }

double dist(const Vec& a, const Vec& b) { return norm(a - b); }

Vec normalized(const Vec& v) {
  double n = norm(v);
  if (!(n > 1e-300)) throw InternalError("cannot normalize zero vector");
  return v * (1.0 / n);
}

double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

Vec cross3(const Vec& a, const Vec& b) {
  return Vec(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
             a[0] * b[1] - a[1] * b[0]);
}

Vec rot90ccw(const Vec& v) { return Vec(-v[1], v[0]); }
Vec rot90cw(const Vec& v) { return Vec(v[1], -v[0]); }

double angle_between(const Vec& a, const Vec& b) {
  // atan2 form keeps full relative accuracy for nearly parallel unit vectors
  double s = a.dim() == 2 ? std::fabs(cross2(a, b)) : norm(cross3(a, b));
  return std::atan2(s, dot(a, b));
}

namespace {

double linf(const Vec& v) {
  double m = 0;
  for (int i = 0; i < v.dim(); ++i) m = std::max(m, std::fabs(v[i]));
  return m;
}

double coord_scale(const std::vector<Vec>& pts) {
  double m = 0;
  for (const auto& p : pts) m = std::max(m, linf(p));
  return m;
}

void check_inputs(int dim, const std::vector<Halfspace>& hs) {
  if (dim != 2 && dim != 3) throw DimensionMismatch("dim must be 2 or 3");
  if (hs.empty()) throw Unbounded("no halfspaces given");
  for (const auto& h : hs) {
    if (h.normal.dim() != dim) throw DimensionMismatch("halfspace normal dimension");
    if (std::fabs(norm(h.normal) - 1.0) > 1e-9)
      throw ValidationError("halfspace normal must be a unit vector");
    if (!std::isfinite(h.offset)) throw ValidationError("halfspace offset must be finite");
  }
}

// A nonzero recession direction v satisfies <n_i, v> <= 0 for all i.  If the
// recession cone is not {0} it either contains a line (normals rank
// deficient) or has an extreme ray spanned by d-1 active constraints, so
// checking those candidate directions is exhaustive.
void check_bounded(int dim, const std::vector<Halfspace>& hs) {
  const double tol = 1e-12;
  auto feasible_dir = [&](const Vec& v) {
    for (const auto& h : hs)
      if (dot(h.normal, v) > tol) return false;
    return true;
  };
  if (dim == 2) {
    for (const auto& h : hs) {
      if (feasible_dir(rot90ccw(h.normal)) || feasible_dir(rot90cw(h.normal)))
        throw Unbounded("recession direction exists");
    }
    return;
  }
  // rank check: a direction orthogonal to all normals recedes
  double best_pair = 0;
  int bi = 0, bj = 1;
  for (size_t i = 0; i < hs.size(); ++i)
    for (size_t j = i + 1; j < hs.size(); ++j) {
      double c = norm(cross3(hs[i].normal, hs[j].normal));
      if (c > best_pair) best_pair = c, bi = (int)i, bj = (int)j;
    }
  if (best_pair <= tol) throw Unbounded("halfspace normals span a line");
  double best_det = 0;
  for (const auto& h : hs) {
    double d = std::fabs(dot(cross3(hs[bi].normal, hs[bj].normal), h.normal));
    best_det = std::max(best_det, d);
  }
  if (best_det <= tol) throw Unbounded("halfspace normals span a plane");
  for (size_t i = 0; i < hs.size(); ++i)
    for (size_t j = i + 1; j < hs.size(); ++j) {
      Vec c = cross3(hs[i].normal, hs[j].normal);
      double cn = norm(c);
      if (cn <= tol) continue;
      Vec v = c * (1.0 / cn);
      if (feasible_dir(v) || feasible_dir(-v)) throw Unbounded("recession direction exists");
    }
}

// ---------------------------------------------------------------------------
// d = 2: direct boundary walk.  Clip a generous box by every halfplane and
// grow the box until no box edge survives, then attribute each surviving
// edge to the input halfplane whose line carries it.

std::vector<Vec> clip_polygon(const std::vector<Vec>& poly, const Halfspace& h, double eps) {
  std::vector<Vec> out;
  const int n = (int)poly.size();
  out.reserve(n + 2);
  for (int i = 0; i < n; ++i) {
    const Vec& p = poly[i];
    const Vec& q = poly[(i + 1) % n];
    double dp = dot(h.normal, p) - h.offset;
    double dq = dot(h.normal, q) - h.offset;
    bool in_p = dp <= eps, in_q = dq <= eps;
    if (in_p) out.push_back(p);
    if (in_p != in_q) {
      double t = dp / (dp - dq);
      out.push_back(p + (q - p) * t);
    }
  }
  return out;
}

Polytope intersect_2d(const std::vector<Halfspace>& hs) {
  check_bounded(2, hs);
  double off_scale = 0;
  for (const auto& h : hs) off_scale = std::max(off_scale, std::fabs(h.offset));
  double w = 64.0 * (1.0 + off_scale);

  std::vector<Vec> poly;
  std::vector<int> edge_src;
  const double eps_clip = 1e-12 * (1.0 + off_scale);
  for (int attempt = 0;; ++attempt, w *= 64.0) {
    if (attempt > 24) throw InternalError("bounding box growth did not terminate");
    poly = {Vec(-w, -w), Vec(w, -w), Vec(w, w), Vec(-w, w)};
    for (const auto& h : hs) {
      poly = clip_polygon(poly, h, eps_clip);
      if (poly.empty()) break;
    }
    if (poly.empty()) {
      if (attempt >= 6) throw EmptyIntersection("no feasible point");
      continue;  // the box may simply have missed a far-away feasible set
    }
    double scale = coord_scale(poly);
    const double tol_v = 1e-9 * (1.0 + scale);
    // dedup consecutive vertices, drop collinear middles
    std::vector<Vec> clean;
    for (const auto& p : poly) {
      if (clean.empty() || dist(clean.back(), p) > tol_v) clean.push_back(p);
    }
    while (clean.size() > 1 && dist(clean.front(), clean.back()) <= tol_v) clean.pop_back();
    for (bool changed = true; changed && clean.size() >= 3;) {
      changed = false;
      for (size_t i = 0; i < clean.size(); ++i) {
        const Vec& a = clean[(i + clean.size() - 1) % clean.size()];
        const Vec& b = clean[i];
        const Vec& c = clean[(i + 1) % clean.size()];
        if (std::fabs(cross2(b - a, c - b)) <= tol_v * (dist(a, b) + dist(b, c) + tol_v)) {
          clean.erase(clean.begin() + i);
          changed = true;
          break;
        }
      }
    }
    if (clean.size() < 3) throw EmptyIntersection("intersection is not full-dimensional");
    // counterclockwise
    double area2 = 0;
    for (size_t i = 0; i < clean.size(); ++i)
      area2 += cross2(clean[i], clean[(i + 1) % clean.size()]);
    if (area2 < 0) std::reverse(clean.begin(), clean.end());

    // attribute each edge to the input halfplane carrying it
    const double tol_on = 1e-8 * (1.0 + scale);
    bool box_edge = false;
    edge_src.assign(clean.size(), -1);
    for (size_t i = 0; i < clean.size(); ++i) {
      const Vec& a = clean[i];
      const Vec& b = clean[(i + 1) % clean.size()];
      for (size_t k = 0; k < hs.size(); ++k) {
        if (std::fabs(dot(hs[k].normal, a) - hs[k].offset) <= tol_on &&
            std::fabs(dot(hs[k].normal, b) - hs[k].offset) <= tol_on) {
          edge_src[i] = (int)k;
          break;
        }
      }
      if (edge_src[i] < 0) box_edge = true;
    }
    if (box_edge) continue;  // a box edge survived: enlarge and retry
    poly = std::move(clean);
    break;
  }

  Polytope out;
  out.dim = 2;
  out.vertices = poly;
  const int k = (int)poly.size();
  for (int i = 0; i < k; ++i) {
    Facet f;
    f.source = edge_src[i];
    f.normal = hs[f.source].normal;
    f.offset = hs[f.source].offset;
    f.vertices = {i, (i + 1) % k};
    f.area = dist(poly[i], poly[(i + 1) % k]);
    out.facets.push_back(std::move(f));
  }
  validate_polytope(out);
  return out;
}

// ---------------------------------------------------------------------------
// d = 3: incremental convex hull, used on the dual point set.

struct HullFace {
  int a, b, c;
  Vec n;       // outward, not normalized
  double off;  // plane <n,x> = off
  bool alive = true;
};

HullFace make_face(const std::vector<Vec>& pts, int a, int b, int c, const Vec& inside,
                   const HullFace* inherit) {
  HullFace f{a, b, c, Vec(0, 0, 0), 0.0, true};
  f.n = cross3(pts[b] - pts[a], pts[c] - pts[a]);
  double scale = std::max({linf(pts[a]), linf(pts[b]), linf(pts[c])});
  if (norm(f.n) <= 1e-14 * (1.0 + scale) * (1.0 + scale) && inherit) {
    // degenerate sliver spawned by a coplanar insertion: keep the old plane
    f.n = inherit->n;
    f.off = inherit->off;
    return f;
  }
  if (dot(f.n, inside - pts[a]) > 0) {
    std::swap(f.b, f.c);
    f.n = -f.n;
  }
  f.off = dot(f.n, pts[f.a]);
  return f;
}

std::vector<HullFace> hull_3d(const std::vector<Vec>& pts) {
  const int n = (int)pts.size();
  if (n < 4) throw InternalError("hull_3d needs at least 4 points");
  const double scale = coord_scale(pts);
  const double eps = 1e-12 * (1.0 + scale);

  // well-spread seed tetrahedron
  int i0 = 0;
  for (int i = 1; i < n; ++i) {
    for (int k = 0; k < 3; ++k) {
      if (pts[i][k] < pts[i0][k] - 0.0) { i0 = i; break; }
      if (pts[i][k] > pts[i0][k]) break;
    }
  }
  int i1 = -1;
  double best = -1;
  for (int i = 0; i < n; ++i) {
    double d = dist(pts[i], pts[i0]);
    if (d > best) best = d, i1 = i;
  }
  if (best <= 10 * eps) throw InternalError("hull_3d: all points coincide");
  int i2 = -1;
  best = -1;
  for (int i = 0; i < n; ++i) {
    double d = norm(cross3(pts[i1] - pts[i0], pts[i] - pts[i0]));
    if (d > best) best = d, i2 = i;
  }
  if (best <= 10 * eps * dist(pts[i0], pts[i1]))
    throw InternalError("hull_3d: points are collinear");
  Vec plane_n = cross3(pts[i1] - pts[i0], pts[i2] - pts[i0]);
  int i3 = -1;
  best = -1;
  for (int i = 0; i < n; ++i) {
    double d = std::fabs(dot(plane_n, pts[i] - pts[i0]));
    if (d > best) best = d, i3 = i;
  }
  if (best <= 10 * eps * norm(plane_n)) throw InternalError("hull_3d: points are coplanar");

  Vec centroid = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) * 0.25;
  std::vector<HullFace> faces;
  faces.push_back(make_face(pts, i0, i1, i2, centroid, nullptr));
  faces.push_back(make_face(pts, i0, i1, i3, centroid, nullptr));
  faces.push_back(make_face(pts, i0, i2, i3, centroid, nullptr));
  faces.push_back(make_face(pts, i1, i2, i3, centroid, nullptr));

  std::vector<int> order;
  for (int i = 0; i < n; ++i)
    if (i != i0 && i != i1 && i != i2 && i != i3) order.push_back(i);

  for (int p : order) {
    // faces weakly visible from p (coplanar counts, so coplanar extensions
    // are inserted and merged later instead of being lost)
    std::vector<int> vis;
    for (int fi = 0; fi < (int)faces.size(); ++fi) {
      if (!faces[fi].alive) continue;
      double s = dot(faces[fi].n, pts[p]) - faces[fi].off;
      if (s > -eps * norm(faces[fi].n)) vis.push_back(fi);
    }
    if (vis.empty()) continue;  // interior point
    std::map<std::pair<int, int>, int> directed;  // edge -> owner face
    for (int fi : vis) {
      const HullFace& f = faces[fi];
      directed[{f.a, f.b}] = fi;
      directed[{f.b, f.c}] = fi;
      directed[{f.c, f.a}] = fi;
    }
    std::vector<std::pair<std::pair<int, int>, int>> horizon;
    for (const auto& [e, fi] : directed)
      if (!directed.count({e.second, e.first})) horizon.push_back({e, fi});
    if (horizon.empty()) throw InternalError("hull_3d: empty horizon");
    for (int fi : vis) faces[fi].alive = false;
    for (const auto& [e, fi] : horizon)
      faces.push_back(make_face(pts, e.first, e.second, p, centroid, &faces[fi]));
  }

  std::vector<HullFace> out;
  for (auto& f : faces)
    if (f.alive) out.push_back(f);
  return out;
}

// Interior point search: feasible intersections of constraint-plane triples
// are exactly the candidate vertices, and the centroid of all of them is
// interior whenever the feasible set is full-dimensional.
Vec interior_point_3d(const std::vector<Halfspace>& hs) {
  const int m = (int)hs.size();
  std::vector<Vec> found;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Vec cij = cross3(hs[i].normal, hs[j].normal);
      for (int k = j + 1; k < m; ++k) {
        double det = dot(cij, hs[k].normal);
        if (std::fabs(det) <= 1e-10) continue;
        // Cramer: x = (b_i (n_j x n_k) + b_j (n_k x n_i) + b_k (n_i x n_j)) / det
        Vec x = (cross3(hs[j].normal, hs[k].normal) * hs[i].offset +
                 cross3(hs[k].normal, hs[i].normal) * hs[j].offset +
                 cij * hs[k].offset) * (1.0 / det);
        double tol = 1e-9 * (1.0 + linf(x));
        bool ok = true;
        for (const auto& h : hs)
          if (dot(h.normal, x) > h.offset + tol) { ok = false; break; }
        if (ok) found.push_back(x);
      }
    }
  if (found.empty()) throw EmptyIntersection("no feasible point");
  Vec c = Vec::zero(3);
  for (const auto& v : found) c += v;
  c = c * (1.0 / (double)found.size());
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& h : hs) margin = std::min(margin, h.offset - dot(h.normal, c));
  if (margin <= 1e-12 * (1.0 + linf(c)))
    throw EmptyIntersection("intersection is not full-dimensional");
  return c;
}

Polytope intersect_3d(const std::vector<Halfspace>& hs, const Vec* hint) {
  check_bounded(3, hs);
  Vec c(0, 0, 0);
  if (hint) {
    c = *hint;
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& h : hs) margin = std::min(margin, h.offset - dot(h.normal, c));
    if (margin <= 1e-12 * (1.0 + linf(c))) c = interior_point_3d(hs);
  } else {
    c = interior_point_3d(hs);
  }

  const int m = (int)hs.size();
  std::vector<Vec> dual(m, Vec(0, 0, 0));
  for (int i = 0; i < m; ++i) {
    double off = hs[i].offset - dot(hs[i].normal, c);
    dual[i] = hs[i].normal * (1.0 / off);
  }
  std::vector<HullFace> faces = hull_3d(dual);

  // each dual hull face is a primal vertex
  std::vector<Vec> raw(faces.size(), Vec(0, 0, 0));
  for (size_t f = 0; f < faces.size(); ++f) {
    double off = faces[f].off;
    if (!(off > 1e-14 * (1.0 + norm(faces[f].n))))
      throw Unbounded("dual hull face through the origin");
    raw[f] = faces[f].n * (1.0 / off) + c;
  }
  double vscale = coord_scale(raw);
  const double tol_v = 1e-9 * (1.0 + vscale);

  Polytope out;
  out.dim = 3;
  std::vector<int> vertex_id(faces.size(), -1);
  for (size_t f = 0; f < faces.size(); ++f) {
    for (size_t g = 0; g < out.vertices.size(); ++g)
      if (dist(raw[f], out.vertices[g]) <= tol_v) { vertex_id[f] = (int)g; break; }
    if (vertex_id[f] < 0) {
      out.vertices.push_back(raw[f]);
      vertex_id[f] = (int)out.vertices.size() - 1;
    }
  }

  for (int i = 0; i < m; ++i) {
    std::vector<int> vset;
    for (size_t f = 0; f < faces.size(); ++f) {
      if (faces[f].a == i || faces[f].b == i || faces[f].c == i) {
        int id = vertex_id[f];
        if (std::find(vset.begin(), vset.end(), id) == vset.end()) vset.push_back(id);
      }
    }
    if ((int)vset.size() < 3) continue;  // redundant halfspace
    // order the facet polygon around the outer normal
    const Vec& nrm = hs[i].normal;
    Vec ref = std::fabs(nrm[0]) < 0.9 ? Vec(1, 0, 0) : Vec(0, 1, 0);
    Vec e1 = normalized(cross3(nrm, ref));
    Vec e2 = cross3(nrm, e1);
    Vec fc = Vec::zero(3);
    for (int id : vset) fc += out.vertices[id];
    fc = fc * (1.0 / (double)vset.size());
    std::sort(vset.begin(), vset.end(), [&](int u, int v) {
      Vec du = out.vertices[u] - fc, dv = out.vertices[v] - fc;
      return std::atan2(dot(du, e2), dot(du, e1)) < std::atan2(dot(dv, e2), dot(dv, e1));
    });
    double area = 0;
    for (size_t k = 0; k < vset.size(); ++k) {
      Vec u = out.vertices[vset[k]] - fc;
      Vec v = out.vertices[vset[(k + 1) % vset.size()]] - fc;
      area += 0.5 * dot(cross3(u, v), nrm);
    }
    if (!(area > 1e-15 * (1.0 + vscale) * (1.0 + vscale))) continue;  // touching only
    Facet fac;
    fac.normal = hs[i].normal;
    fac.offset = hs[i].offset;
    fac.source = i;
    fac.vertices = std::move(vset);
    fac.area = area;
    out.facets.push_back(std::move(fac));
  }
  if (out.facets.size() < 4) throw InternalError("halfspace intersection lost facets");
  validate_polytope(out);
  return out;
}

double point_segment_dist(const Vec& x, const Vec& a, const Vec& b) {
  Vec ab = b - a;
  double len2 = dot(ab, ab);
  double t = len2 > 0 ? std::clamp(dot(x - a, ab) / len2, 0.0, 1.0) : 0.0;
  return dist(x, a + ab * t);
}

}  // namespace

Polytope halfspace_intersection(int dim, const std::vector<Halfspace>& hs) {
  check_inputs(dim, hs);
  return dim == 2 ? intersect_2d(hs) : intersect_3d(hs, nullptr);
}

Polytope halfspace_intersection(int dim, const std::vector<Halfspace>& hs,
                                const Vec& interior_hint) {
  check_inputs(dim, hs);
  if (interior_hint.dim() != dim) throw DimensionMismatch("interior hint dimension");
  return dim == 2 ? intersect_2d(hs) : intersect_3d(hs, &interior_hint);
}

double volume(const Polytope& p) {
  Vec c = Vec::zero(p.dim);
  for (const auto& v : p.vertices) c += v;
  c = c * (1.0 / (double)p.vertices.size());
  double vol = 0;
  for (const auto& f : p.facets) vol += f.area * (f.offset - dot(f.normal, c));
  return vol / (double)p.dim;
}

std::vector<std::pair<Vec, double>> facet_areas(const Polytope& p) {
  std::vector<std::pair<Vec, double>> out;
  out.reserve(p.facets.size());
  for (const auto& f : p.facets) out.push_back({f.normal, f.area});
  return out;
}

double distance_to(const Polytope& p, const Vec& x) {
  if (x.dim() != p.dim) throw DimensionMismatch("point dimension");
  bool inside = true;
  for (const auto& f : p.facets)
    if (dot(f.normal, x) - f.offset > 1e-12 * (1.0 + linf(x))) { inside = false; break; }
  if (inside) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  if (p.dim == 2) {
    for (const auto& f : p.facets)
      best = std::min(best, point_segment_dist(x, p.vertices[f.vertices[0]],
                                               p.vertices[f.vertices[1]]));
    return best;
  }
  for (const auto& f : p.facets) {
    double h = dot(f.normal, x) - f.offset;
    Vec proj = x - f.normal * h;
    bool in_poly = true;
    const auto& vs = f.vertices;
    for (size_t k = 0; k < vs.size(); ++k) {
      const Vec& a = p.vertices[vs[k]];
      const Vec& b = p.vertices[vs[(k + 1) % vs.size()]];
      if (dot(cross3(b - a, proj - a), f.normal) < -1e-12 * (1.0 + linf(proj))) {
        in_poly = false;
        break;
      }
    }
    if (in_poly) {
      best = std::min(best, std::fabs(h));
    } else {
      for (size_t k = 0; k < vs.size(); ++k)
        best = std::min(best, point_segment_dist(x, p.vertices[vs[k]],
                                                 p.vertices[vs[(k + 1) % vs.size()]]));
    }
  }
  return best;
}

double hausdorff(const Polytope& p, const Polytope& q) {
  if (p.dim != q.dim) throw DimensionMismatch("polytope dimensions differ");
  double h = 0;
  for (const auto& v : p.vertices) h = std::max(h, distance_to(q, v));
  for (const auto& v : q.vertices) h = std::max(h, distance_to(p, v));
  return h;
}

std::vector<int> convex_hull_2d(const std::vector<Vec>& pts) {
  const int n = (int)pts.size();
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (pts[a][0] != pts[b][0]) return pts[a][0] < pts[b][0];
    return pts[a][1] < pts[b][1];
  });
  const double eps = 1e-12 * (1.0 + coord_scale(pts)) * (1.0 + coord_scale(pts));
  auto build = [&](std::vector<int>& out) {
    for (int i : idx) {
      while (out.size() >= 2) {
        const Vec& a = pts[out[out.size() - 2]];
        const Vec& b = pts[out[out.size() - 1]];
        double c = cross2(b - a, pts[i] - a);
        if (c <= eps) out.pop_back();
        else break;
      }
      out.push_back(i);
    }
  };
  std::vector<int> lower, upper;
  build(lower);
  std::reverse(idx.begin(), idx.end());
  build(upper);
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  return lower;
}

double polygon_area_2d(const std::vector<Vec>& poly) {
  double s = 0;
  for (size_t i = 0; i < poly.size(); ++i)
    s += cross2(poly[i], poly[(i + 1) % poly.size()]);
  return std::fabs(s) * 0.5;
}

void validate_polytope(const Polytope& p) {
  if (p.vertices.empty() || p.facets.empty())
    throw InternalError("validate_polytope: empty polytope");
  const double tol = 1e-9 * (1.0 + coord_scale(p.vertices));
  for (const auto& f : p.facets) {
    if ((int)f.vertices.size() < p.dim)
      throw InternalError("validate_polytope: facet with too few vertices");
    if (!(f.area >= 0)) throw InternalError("validate_polytope: negative facet area");
    for (int vi : f.vertices)
      if (std::fabs(dot(f.normal, p.vertices[vi]) - f.offset) > tol)
        throw InternalError("validate_polytope: facet vertex off its plane");
    for (const auto& v : p.vertices)
      if (dot(f.normal, v) - f.offset > tol)
        throw InternalError("validate_polytope: vertex violates a facet halfspace");
  }
  // closed surface: facet normals weighted by area sum to zero
  Vec s = Vec::zero(p.dim);
  double total = 0;
  for (const auto& f : p.facets) {
    s += f.normal * f.area;
    total += f.area;
  }
  if (norm(s) > 1e-9 * total)
    throw InternalError("validate_polytope: surface does not close up");
}

}  // namespace coco
