#include "coco/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <random>
#include <vector>

#include "coco/errors.hpp"

namespace coco {

namespace {

double u53(std::mt19937_64& rng) {  // uniform in [0,1), reproducible across platforms
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// dense GEPP solve, A row-major n x n, overwrites A and b; false if singular
bool solve_dense(int n, std::vector<double>& a, std::vector<double>& b) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a[r * n + col]) > std::fabs(a[piv * n + col])) piv = r;
    if (std::fabs(a[piv * n + col]) < 1e-300) return false;
    if (piv != col) {
      for (int c = col; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      double f = a[r * n + col] / a[col * n + col];
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  for (int col = n - 1; col >= 0; --col) {
    double s = b[col];
    for (int c = col + 1; c < n; ++c) s -= a[col * n + c] * b[c];
    b[col] = s / a[col * n + col];
  }
  return true;
}

Vec slerp(const Vec& a, const Vec& b, double ang, double t) {
  if (ang < 1e-12) return a;
  double s = std::sin(ang);
  return normalized((std::sin((1.0 - t) * ang) / s) * a + (std::sin(t * ang) / s) * b);
}

// Exact Hessian of the planar objective.  Each cut facet is an interval on
// its support line whose endpoints are pinned by the nearest active
// neighbours (another cut or a cone edge), so facet lengths are piecewise
// linear in h: d(length_i)/dh_j = 1/sin(angle between normals) for active
// neighbours, and the diagonal collects the matching -cot terms plus the
// fixed cone-edge contributions.  Within one combinatorial cell the
// quadratic model is therefore exact and Newton steps land on the solution
// to machine precision.
std::vector<double> hessian_2d(const Cone& c, const std::vector<Vec>& us,
                               const std::vector<double>& h) {
  int m = static_cast<int>(us.size());
  std::vector<double> hess(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) {
    double thi = 0, tlo = 0;  // endpoint parameters along the support line
    int jhi = -1, jlo = -1;   // owning cut (-1: cone edge)
    double shi = 0, slo = 0, chi = 0, clo = 0;
    bool any_hi = false, any_lo = false;
    auto visit = [&](const Vec& v, double rhs, int j) {
      double s = cross2(us[i], v);  // sine of the signed angle to the neighbour
      double cv = dot(us[i], v);
      if (std::fabs(s) < 1e-14) return;
      double t = (rhs - h[i] * cv) / s;
      if (s > 0) {
        if (!any_hi || t < thi) {
          any_hi = true, thi = t, jhi = j, shi = s, chi = cv;
        }
      } else {
        if (!any_lo || t > tlo) {
          any_lo = true, tlo = t, jlo = j, slo = s, clo = cv;
        }
      }
    };
    for (int j = 0; j < m; ++j)
      if (j != i) visit(us[j], h[j], j);
    for (const Vec& nb : c.facet_normals) visit(nb, 0.0, -1);
    if (!any_hi || !any_lo || !(thi - tlo > 0)) continue;  // facet absent
    double* row = hess.data() + static_cast<std::size_t>(i) * m;
    row[i] += chi / shi - clo / slo;
    if (jhi >= 0) row[jhi] -= 1.0 / shi;
    if (jlo >= 0) row[jlo] += 1.0 / slo;
  }
  return hess;
}

}  // namespace

CFullSet solve_chain_2d(const Cone& c, const DiscreteMeasure& phi) {
  if (c.dim != 2) throw DimensionMismatch("planar chain construction requires dim 2");
  if (phi.size() == 0) return build(c, {}, {});
  if (phi.dim != 2) throw DimensionMismatch("measure dimension mismatch");
  for (std::size_t i = 0; i < phi.size(); ++i) {
    OmegaCheck oc = omega_contains(c, phi.atoms[i]);
    if (!oc.inside) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "atom %zu lies outside Omega (margin %.3e)", i, oc.margin);
      throw AtomOutsideOmega(buf);
    }
  }
  const Vec& ga = c.generators[0];
  const Vec& gb = c.generators[1];
  const Vec& nb = c.facet_normals[1];  // window endpoint adjacent to the start ray
  std::vector<int> order(phi.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::vector<double> ang(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i)
    ang[i] = std::atan2(cross2(nb, phi.atoms[i]), dot(nb, phi.atoms[i]));
  std::sort(order.begin(), order.end(), [&](int x, int y) { return ang[x] < ang[y]; });

  Vec total = Vec::zero(2);
  for (std::size_t i = 0; i < phi.size(); ++i)
    total += phi.masses[order[i]] * rot90ccw(phi.atoms[order[i]]);
  // endpoints: sa*ga - sb*gb = total
  double det = -cross2(ga, gb);
  double sa = (total[0] * (-gb[1]) - (-gb[0]) * total[1]) / det;
  double sb = (ga[0] * total[1] - total[0] * ga[1]) / det;
  if (!(sa > 0.0) || !(sb > 0.0)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "chain endpoints not positive (sa=%.6g, sb=%.6g)", sa, sb);
    throw NegativeEndpoint(buf);
  }
  Vec p = sb * gb;
  std::vector<Vec> normals;
  std::vector<double> support;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const Vec& u = phi.atoms[order[i]];
    normals.push_back(u);
    support.push_back(dot(p, u));
    p += phi.masses[order[i]] * rot90ccw(u);
  }
  if (dist(p, sa * ga) > 1e-9 * (1.0 + norm(p)))
    throw InternalError("chain failed to close on the second ray");
  return build(c, normals, support);
}

SolveReport solve(const Cone& c, const DiscreteMeasure& phi, const SolveOptions& opts) {
  SolveReport rep;
  if (phi.size() == 0) {
    rep.k = build(c, {}, {});
    rep.converged = true;
    return rep;
  }
  if (phi.dim != c.dim) throw DimensionMismatch("measure dimension mismatch");
  if (!(opts.tol > 0.0) || !(opts.init_scale > 0.0) || opts.max_iter < 0)
    throw ValidationError("solver options require tol > 0, init_scale > 0, max_iter >= 0");
  boundary_margins(c, phi.atoms);  // validates strict membership in Omega
  const int d = c.dim;
  const int m = static_cast<int>(phi.size());
  const std::vector<double>& f = phi.masses;
  const double fscale = std::max(1.0, *std::max_element(f.begin(), f.end()));
  const double gap = normal_gap(c, phi.atoms);
  const double sigma = aperture(c);
  const double expo = 1.0 / (d - 1);

  // The solver minimizes G(h) = V(C \ K(h)) + sum_i f_i h_i over h < 0.
  // Exact gradient: dV/dh_i = -lambda_i(h) (support variation), so
  // grad G = f - lambda(h) and stationary points are exactly the bodies
  // whose facet areas match the prescribed masses; G is coercive because
  // the volume grows like |h|^d while the linear term is first order.
  // The volume is evaluated through the divergence-theorem identity
  // V = -(1/d) sum_i h_i lambda_i (cone facets pass through the apex and
  // contribute nothing), which involves only excavation-sized quantities
  // and so keeps line-search comparisons far above rounding noise.
  auto areas_at = [&](const std::vector<double>& h) {
    double hmax = 0.0;
    for (int i = 0; i < m; ++i) hmax = std::max(hmax, -h[i]);
    return cut_facet_areas(c, phi.atoms, h, 8.0 * (1.0 + hmax / gap));
  };
  auto objective_from = [&](const std::vector<double>& h, const std::vector<double>& ar) {
    double g = 0.0;
    for (int i = 0; i < m; ++i) g += h[i] * (f[i] - ar[i] / d);
    return g;
  };
  auto resid_of = [&](const std::vector<double>& ar) {
    double r = 0.0;
    for (int i = 0; i < m; ++i) r = std::max(r, std::fabs(ar[i] - f[i]));
    return r;
  };

  std::vector<double> h_init(m);
  for (int i = 0; i < m; ++i)
    h_init[i] = -opts.init_scale * std::pow(f[i] / sigma, expo);
  std::mt19937_64 rng(opts.seed * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL);
  int ladder = 0;
  auto restart_h = [&]() {
    ++ladder;
    std::vector<double> h = h_init;
    if (ladder > 1)
      for (double& v : h) v *= std::exp(-0.3 + 0.6 * u53(rng));
    return h;
  };

  // start from uniform depth: every cutting halfspace is tangent to a common
  // ball, so no facet starts swallowed by a deeper neighbour and the descent
  // begins with the full combinatorics in play
  std::vector<double> h(m, -opts.init_scale *
                               std::pow(*std::max_element(f.begin(), f.end()) / sigma, expo));
  std::vector<double> area = areas_at(h);
  double resid = resid_of(area);
  rep.objective_trace.push_back(resid);
  std::vector<double> best_h = h;
  double best_resid = resid;
  int stale = 0;   // iterations without a meaningful best-residual improvement
  double mu = -1;  // damping, initialised from the first Hessian scale

  for (int iter = 0; iter < opts.max_iter && resid > opts.tol * fscale; ++iter) {
    rep.iterations = iter + 1;
    std::vector<double> grad(m);
    for (int i = 0; i < m; ++i) grad[i] = f[i] - area[i];
    std::vector<double> hess;
    if (d == 2) {
      hess = hessian_2d(c, phi.atoms, h);
    } else {
      // central finite differences of the facet-area map give the Hessian of G
      hess.assign(static_cast<std::size_t>(m) * m, 0.0);
      for (int j = 0; j < m; ++j) {
        double step = 1e-6 * (1.0 + std::fabs(h[j]));
        std::vector<double> hp = h, hm = h;
        hp[j] += step;
        hm[j] -= step;
        std::vector<double> fp = areas_at(hp), fm = areas_at(hm);
        for (int i = 0; i < m; ++i) hess[i * m + j] = -(fp[i] - fm[i]) / (2.0 * step);
      }
    }
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        double s = 0.5 * (hess[i * m + j] + hess[j * m + i]);
        hess[i * m + j] = hess[j * m + i] = s;
      }
    double dscale = 1e-12;
    for (int i = 0; i < m; ++i) dscale = std::max(dscale, std::fabs(hess[i * m + i]));

    double g0 = objective_from(h, area);
    bool stepped = false;
    static const bool trace = std::getenv("COCO_SOLVER_TRACE") != nullptr;
    if (mu < 0) mu = 1e-3 * dscale;
    mu = std::clamp(mu, 1e-14 * dscale, 1e14 * dscale);
    // Pure-Newton probe: with the correct active facet set the area map is
    // smooth and the undamped step converges quadratically, so accept it
    // whenever it halves an already small residual; the global descent is
    // untouched.
    if (resid <= 1e-2 * fscale) {
      std::vector<double> lhs = hess, delta = grad;
      for (int i = 0; i < m; ++i) {
        lhs[i * m + i] += 1e-14 * dscale;
        delta[i] = -delta[i];
      }
      if (solve_dense(m, lhs, delta)) {
        double s = 1.0;
        for (int i = 0; i < m; ++i)
          if (delta[i] > 0.0) s = std::min(s, -0.99 * h[i] / delta[i]);
        std::vector<double> hn(m);
        for (int i = 0; i < m; ++i) hn[i] = h[i] + s * delta[i];
        std::vector<double> an;
        double rn = std::numeric_limits<double>::infinity();
        try {
          an = areas_at(hn);
          rn = resid_of(an);
        } catch (const Error&) {
          // an outlandish probe point is not an error, just a rejected step
        }
        if (std::isfinite(rn) && rn < 0.5 * resid) {
          h = std::move(hn);
          area = std::move(an);
          resid = rn;
          if (resid < best_resid) {
            best_resid = resid;
            best_h = h;
            stale = 0;
          }
          rep.objective_trace.push_back(resid);
          continue;
        }
      }
    }
    // Levenberg-style damping: one trial step per mu, rejection raises mu
    // (shorter, more gradient-like step), acceptance lowers it.
    for (int attempt = 0; attempt < 60; ++attempt) {
      std::vector<double> lhs = hess, delta = grad;
      for (int i = 0; i < m; ++i) {
        lhs[i * m + i] += mu;
        delta[i] = -delta[i];
      }
      double slope = 0.0;
      bool usable = solve_dense(m, lhs, delta);
      if (usable) {
        for (int i = 0; i < m; ++i) slope += grad[i] * delta[i];
        usable = slope < 0.0;
      }
      if (!usable) {
        mu = std::max(mu * 10.0, 1e-10 * dscale);
        if (mu > 1e14 * dscale) break;
        continue;
      }
      double smax = 1.0;  // keep every support number strictly negative
      for (int i = 0; i < m; ++i)
        if (delta[i] > 0.0) smax = std::min(smax, -0.99 * h[i] / delta[i]);
      // short backtracking line search along the damped Newton direction:
      // partial steps still make progress when the full step crosses a
      // change of the active facet set
      for (double s = smax; s > smax * 0x1p-4; s *= 0.5) {
        std::vector<double> hn(m);
        for (int i = 0; i < m; ++i) hn[i] = h[i] + s * delta[i];
        std::vector<double> an;
        double gn = std::numeric_limits<double>::infinity();
        try {
          an = areas_at(hn);
          gn = objective_from(hn, an);
        } catch (const Error&) {
          continue;  // unbuildable trial body: shorten the step instead
        }
        // Armijo on G drives the global phase and must make strict progress,
        // keeping G a Lyapunov function.  Only in the endgame, where G
        // differences fall under double rounding, does strict residual
        // decrease (the local Newton test, full precision at small
        // residuals) take over.
        bool armijo = std::isfinite(gn) && gn <= g0 + 1e-4 * s * slope && gn < g0;
        bool newton =
            !armijo && std::isfinite(gn) && resid <= 1e-2 * fscale && resid_of(an) < resid;
        if (armijo || newton) {
          h = std::move(hn);
          area = std::move(an);
          stepped = true;
          if (trace)
            std::fprintf(stderr,
                         "  it=%d resid=%.3e G=%.12e mu=%.2e s=%.2e slope=%.3e%s\n", iter,
                         resid, g0, mu, s, slope, newton ? " [newton]" : "");
          if (s == smax && smax > 0.9) mu *= 0.3;
          break;
        }
      }
      if (stepped) break;
      mu *= 10.0;
      if (mu > 1e14 * dscale) break;
    }
    if (!stepped) {
      // no descent at any damping level: numerical stationarity.  In the
      // endgame that means the residual has hit the floating-point floor;
      // far from it the iterate is in badly conditioned territory and a
      // fresh start is cheaper than grinding.
      if (resid <= 1e-2 * fscale) break;
      if (trace) std::fprintf(stderr, "  it=%d resid=%.3e RESTART\n", iter, resid);
      h = restart_h();
      mu = -1;
      area = areas_at(h);
    }
    resid = resid_of(area);
    if (resid < 0.99 * best_resid)
      stale = 0;
    else if (++stale >= 25 && best_resid <= 1e-6 * fscale)
      break;  // plateaued at the floating-point floor of the area evaluation
    if (resid < best_resid) {
      best_resid = resid;
      best_h = h;
    }
    rep.objective_trace.push_back(resid);
  }

  // build the certified body at the exact truncation height the evaluation
  // kernel used, so the reported residual matches the optimized one
  double hbmax = 0.0;
  for (int i = 0; i < m; ++i) hbmax = std::max(hbmax, -best_h[i]);
  rep.k = build_at_height(c, phi.atoms, best_h, 8.0 * (1.0 + hbmax / gap));
  rep.residual_inf = resid_of(cut_facet_areas(rep.k));
  rep.converged = rep.residual_inf <= opts.tol * fscale;
  rep.objective_trace.push_back(rep.residual_inf);
  return rep;
}

std::vector<ExhaustionStage> solve_exhaustion(const Cone& c, const DiscreteMeasure& phi,
                                              const std::vector<double>& margins) {
  for (std::size_t j = 0; j < margins.size(); ++j) {
    if (!(margins[j] > 0.0)) throw ValidationError("exhaustion margins must be positive");
    if (j > 0 && !(margins[j] < margins[j - 1]))
      throw ValidationError("exhaustion margins must be strictly decreasing");
  }
  const int d = c.dim;
  const double total = phi.total();
  const double sigma = aperture(c);
  const double c1 = total <= 0.0 ? 0.0 : std::pow(total / sigma, 1.0 / (d - 1));
  const double bound = c1 / d * total;
  std::vector<ExhaustionStage> stages;
  for (std::size_t j = 0; j < margins.size(); ++j) {
    ExhaustionStage st;
    st.margin = margins[j];
    DiscreteMeasure phij = restrict_margin(phi, c, margins[j]);
    st.atom_count = phij.size();
    SolveReport rep = solve(c, phij);
    if (!rep.converged) throw InternalError("exhaustion stage failed to converge");
    st.k = rep.k;
    st.volume = coconvex_volume(st.k, VolumeMethod::direct);
    st.clearance = clearance_radius(st.k);
    st.volume_bound = bound;
    if (st.volume > bound + 1e-9) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "stage volume %.12g exceeds the coconvex bound %.12g",
                    st.volume, bound);
      throw InternalError(buf);
    }
    st.hausdorff_prev = j > 0 ? hausdorff_cfull(st.k, stages.back().k) : 0.0;
    stages.push_back(std::move(st));
  }
  return stages;
}

ProfileReport necessary_profile(const DiscreteMeasure& phi, const Cone& c,
                                const std::vector<double>& margins) {
  ProfileReport out;
  std::vector<double> atom_margin;
  if (phi.size() > 0) atom_margin = boundary_margins(c, phi.atoms);
  for (double delta : margins) {
    if (!(delta > 0.0)) throw ValidationError("profile margins must be positive");
    double mass = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i)
      if (atom_margin[i] >= delta && atom_margin[i] < 2.0 * delta) mass += phi.masses[i];
    out.points.push_back({delta, std::pow(delta, c.dim - 1) * mass});
  }
  if (!out.points.empty()) {
    std::vector<ProfilePoint> sorted = out.points;
    std::sort(sorted.begin(), sorted.end(),
              [](const ProfilePoint& a, const ProfilePoint& b) { return a.margin > b.margin; });
    double dmin = sorted.back().margin;
    std::vector<double> window;
    for (const ProfilePoint& p : sorted)
      if (p.margin <= 1e4 * dmin) window.push_back(p.value);
    bool suspect = window.size() >= 2;
    for (std::size_t i = 0; i < window.size() && suspect; ++i) {
      suspect = window[i] > 0.0;
      if (i > 0) suspect = suspect && window[i] >= window[i - 1];
    }
    suspect = suspect && window.back() >= 2.0 * window.front();
    out.unbounded_suspect = suspect;
  }
  return out;
}

OrthantExample gen_orthant_example(int n) {
  if (n < 1 || n > 100000) throw ValidationError("band count must be between 1 and 100000");
  OrthantExample ex;
  auto a = [](int k) { return 1.0 / (static_cast<double>(k) * k); };
  for (int k = 1; k <= n + 1; ++k) {
    ex.vertices.emplace_back(a(k), 0.0, k - 1.0);
    ex.vertices.emplace_back(0.0, a(k), k - 1.0);
  }
  const double s2 = std::sqrt(2.0);
  for (int k = 1; k <= n; ++k) {
    double ak = a(k), ak1 = a(k + 1), dl = ak1 - ak;
    Vec u = normalized(Vec(-1.0, -1.0, dl));
    double area = (ak + ak1) / s2 * std::sqrt(1.0 + dl * dl / 2.0);
    ex.normals.push_back(u);
    ex.areas.push_back(area);
    ex.width_series += (ak + ak1) / s2;
    ex.area_series += area;

    // per-band verification: the four corners are coplanar and their
    // in-plane shoelace area matches the closed form
    Vec p1(ak, 0.0, k - 1.0), q1(0.0, ak, k - 1.0);
    Vec p2(ak1, 0.0, static_cast<double>(k)), q2(0.0, ak1, static_cast<double>(k));
    double h = dot(u, p1);
    for (const Vec& v : {q1, p2, q2})
      if (std::fabs(dot(u, v) - h) > 1e-12 * (1.0 + std::fabs(h) + norm(v)))
        throw InternalError("band corners are not coplanar");
    Vec e1 = normalized(q1 - p1);
    Vec e2 = cross3(u, e1);
    std::vector<Vec> flat;
    for (const Vec& v : {p1, q1, q2, p2}) flat.emplace_back(dot(v, e1), dot(v, e2));
    double sl = polygon_area_2d(flat);
    if (std::fabs(sl - area) > 1e-9 * area)
      throw InternalError("band shoelace area disagrees with the closed form");

    // full supporting-plane hull check for small n: the band plane supports
    // the whole vertex set and touches exactly its four corners
    if (n <= 200) {
      double tol = 1e-9 * (1.0 + std::fabs(h));
      std::vector<Vec> on_plane;
      for (const Vec& v : ex.vertices) {
        // vertices beyond k+1 are appended already (loop over all)
        double s = dot(u, v) - h;
        if (s > tol) throw InternalError("band plane fails to support the staircase");
        if (s > -tol) on_plane.push_back(v);
      }
      if (on_plane.size() != 4)
        throw InternalError("band plane touches an unexpected vertex count");
      std::vector<Vec> flat2;
      for (const Vec& v : on_plane) flat2.emplace_back(dot(v, e1), dot(v, e2));
      std::vector<int> hull = convex_hull_2d(flat2);
      std::vector<Vec> poly;
      for (int i : hull) poly.push_back(flat2[i]);
      double ha = polygon_area_2d(poly);
      if (std::fabs(ha - area) > 1e-9 * area)
        throw InternalError("band hull area disagrees with the closed form");
    }
  }
  return ex;
}

DiscreteMeasure gen_boundary_blowup_measure(const Cone& c, int count) {
  if (count < 1 || count > 50)
    throw ValidationError(
        "atom count must be between 1 and 50 (beyond 50 the margins 2^-k fall "
        "under double-precision placement resolution)");
  // deepest window direction: maximize min over generators of -<u,g>
  Vec z = -1.0 * c.w;
  for (int it = 1; it <= 30000; ++it) {
    double fv = 1e300;
    Vec grad = z;
    for (const Vec& g : c.generators)
      if (-dot(z, g) < fv) {
        fv = -dot(z, g);
        grad = -1.0 * g;
      }
    z = normalized(z + (0.7 / std::sqrt(static_cast<double>(it))) * grad);
  }
  double zmargin = boundary_margins(c, {z})[0];
  double lead = 0.5 * (1.0 + 1e-6);
  if (zmargin <= lead * 1.0001) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "window too narrow: deepest margin %.6g cannot host an atom at margin %.6g",
                  zmargin, lead);
    throw MarginTooSmall(buf);
  }
  // nearest boundary point of z: replicate the margin candidate scan
  Vec bstar = c.facet_normals[0];
  double bdist = 1e300;
  for (const Vec& nf : c.facet_normals) {
    double ang = angle_between(z, nf);
    if (ang < bdist) {
      bdist = ang;
      bstar = nf;
    }
  }
  if (c.dim == 3) {
    int k = static_cast<int>(c.generators.size());
    for (int i = 0; i < k; ++i) {
      const Vec& r = c.generators[i];
      Vec proj = z - dot(z, r) * r;
      if (norm(proj) < 1e-12) continue;
      Vec q = normalized(proj);
      const Vec& na = c.facet_normals[(i + k - 1) % k];
      const Vec& nbv = c.facet_normals[i];
      double cab = dot(na, nbv);
      double det = 1.0 - cab * cab;
      if (det < 1e-12) continue;
      double qa = dot(q, na), qb = dot(q, nbv);
      if ((qa - cab * qb) / det >= -1e-9 && (qb - cab * qa) / det >= -1e-9) {
        double ang = std::asin(std::clamp(-dot(z, r), -1.0, 1.0));
        if (ang < bdist) {
          bdist = ang;
          bstar = q;
        }
      }
    }
  }
  if (std::fabs(bdist - zmargin) > 1e-9)
    throw InternalError("nearest boundary candidate disagrees with the margin");
  double total_ang = angle_between(bstar, z);
  std::vector<Vec> atoms;
  std::vector<double> masses;
  for (int k = 1; k <= count; ++k) {
    double theta = std::ldexp(1.0, -k) * (1.0 + 1e-6);
    atoms.push_back(slerp(bstar, z, total_ang, theta / total_ang));
    masses.push_back(std::ldexp(static_cast<double>(k), k * (c.dim - 1)));
  }
  std::vector<double> got = boundary_margins(c, atoms);
  for (int k = 1; k <= count; ++k) {
    double want = std::ldexp(1.0, -k) * (1.0 + 1e-6);
    if (want >= 1e-10 && std::fabs(got[k - 1] - want) > 1e-6 * want) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "atom %d placed at margin %.12g instead of %.12g", k,
                    got[k - 1], want);
      throw InternalError(buf);
    }
  }
  return make_measure(c.dim, atoms, masses);
}

}  // namespace coco
