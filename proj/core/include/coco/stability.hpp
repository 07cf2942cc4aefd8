#pragma once

// Empirical stability experiment: how far can the solved body move when the
// prescribed surface area measure is jittered?  The continuity theorem for
// the Minkowski problem in a cone bounds d_H(K, L) by a constant times
// delta_LP(S(K), S(L))^{1/d} for measures concentrated on a fixed compact
// window; the constant is not explicit, so the harness estimates it as the
// maximal observed ratio and checks boundedness and the log-log scaling.

#include <cstdint>
#include <vector>

#include "coco/cone.hpp"
#include "coco/measures.hpp"

namespace coco {

struct StabilityRecord {
  int trial = 0;
  double jitter = 0.0;  // rung amplitude the trial was drawn with
  double lp = 0.0;      // Levy-Prokhorov distance of the two area measures
  double dh = 0.0;      // Hausdorff distance of the two solved bodies
  double ratio = 0.0;   // dh / lp^{1/d}; meaningful only when lp > 0
  bool ratio_defined = false;
};

struct StabilityReport {
  std::vector<StabilityRecord> records;  // rung-major: ladder rung, then trial
  double c_hat = 0.0;  // max ratio over all records (0 when none defined)
  double slope = 0.0;  // least-squares slope of log dh vs log lp (0 if < 2 pts)
};

// Runs the jitter ladder {jitter, jitter/2, ..., jitter/2^5} with the given
// number of trials per rung.  Each trial perturbs every mass by a factor
// (1 + U[-a, a]) and moves every atom within geodesic radius a (re-unitized,
// window membership rechecked), solves the base and perturbed problems, and
// records the distances.  Requires margin(phi) >= 4*jitter (keeps perturbed
// atoms in a fixed compact window; MarginTooSmall otherwise) and trials >= 10
// (ValidationError).  Per-trial RNG streams are derived from (seed, rung,
// trial), so doubling the trial count extends the record set instead of
// reshuffling it, and trials may be evaluated in any order.
StabilityReport run_stability(const Cone& c, const DiscreteMeasure& phi, double jitter,
                              int trials, std::uint64_t seed);

}  // namespace coco
