#include "coco/stability.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "coco/coconvex.hpp"
#include "coco/errors.hpp"
#include "coco/solver.hpp"

namespace coco {

namespace {

std::uint64_t mix64(std::uint64_t x) {  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double u53(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// move u along a geodesic by angle r toward an angle-parametrized tangent
// direction; d=2 ignores the direction parameter and uses the sign of r
Vec geodesic_step(const Vec& u, double r, double dir_angle) {
  if (u.dim() == 2) {
    double cs = std::cos(r), sn = std::sin(r);
    return normalized(Vec(cs * u[0] - sn * u[1], sn * u[0] + cs * u[1]));
  }
  int least = 0;
  for (int i = 1; i < 3; ++i)
    if (std::fabs(u[i]) < std::fabs(u[least])) least = i;
  Vec e(0.0, 0.0, 0.0);
  e[least] = 1.0;
  Vec t1 = normalized(e - dot(e, u) * u);
  Vec t2 = cross3(u, t1);
  Vec t = std::cos(dir_angle) * t1 + std::sin(dir_angle) * t2;
  return normalized(std::cos(r) * u + std::sin(r) * t);
}

}  // namespace

StabilityReport run_stability(const Cone& c, const DiscreteMeasure& phi, double jitter,
                              int trials, std::uint64_t seed) {
  if (!(jitter >= 0.0) || !std::isfinite(jitter))
    throw ValidationError("stability jitter must be a finite value >= 0");
  if (trials < 10) throw ValidationError("stability runs need at least 10 trials");
  if (phi.dim != c.dim)
    throw DimensionMismatch("measure dimension does not match the cone");
  if (phi.size() == 0) throw ValidationError("stability needs a nonempty measure");
  double margin = boundary_margin(c, phi.atoms);
  if (jitter > 0.0 && margin < 4.0 * jitter)
    throw MarginTooSmall(
        "stability requires every atom at window margin >= 4x the jitter radius");

  const int d = c.dim;
  StabilityReport out;

  SolveOptions so;
  so.max_iter = 1000;
  so.seed = seed;
  CFullSet base = solve(c, phi, so).k;
  DiscreteMeasure base_sam = surface_area_measure(base);

  for (int rung = 0; rung < 6; ++rung) {
    double a = jitter * std::ldexp(1.0, -rung);
    for (int trial = 0; trial < trials; ++trial) {
      std::mt19937_64 rng(mix64(mix64(mix64(seed) ^ (0x5157ULL + rung)) ^
                                (0x7261ULL + static_cast<std::uint64_t>(trial))));
      std::vector<Vec> atoms = phi.atoms;
      std::vector<double> masses = phi.masses;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        masses[i] *= 1.0 + a * (2.0 * u53(rng) - 1.0);
        double dir = 2.0 * M_PI * u53(rng);
        double r = a * std::sqrt(u53(rng));  // area-uniform in the geodesic disc
        atoms[i] = geodesic_step(atoms[i], d == 2 ? r * (u53(rng) < 0.5 ? -1 : 1) : r,
                                 dir);
        if (!omega_contains(c, atoms[i]).inside)
          throw InternalError("perturbed atom escaped the window despite the margin");
      }
      StabilityRecord rec;
      rec.trial = trial;
      rec.jitter = a;
      if (a > 0.0) {
        DiscreteMeasure pert = make_measure(d, atoms, masses);
        CFullSet moved = solve(c, pert, so).k;
        rec.lp = lp_distance(base_sam, surface_area_measure(moved));
        rec.dh = hausdorff_cfull(base, moved);
        if (rec.lp > 0.0) {
          rec.ratio = rec.dh / std::pow(rec.lp, 1.0 / d);
          rec.ratio_defined = true;
        }
      }
      out.records.push_back(rec);
    }
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const StabilityRecord& r : out.records) {
    if (r.ratio_defined) out.c_hat = std::max(out.c_hat, r.ratio);
    if (r.lp > 0.0 && r.dh > 0.0) {
      double x = std::log(r.lp), y = std::log(r.dh);
      sx += x, sy += y, sxx += x * x, sxy += x * y;
      ++n;
    }
  }
  double var = n > 1 ? sxx - sx * sx / n : 0.0;
  out.slope = var > 1e-30 ? (sxy - sx * sy / n) / var : 0.0;
  return out;
}

}  // namespace coco
