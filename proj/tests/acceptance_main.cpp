// End-to-end acceptance harness: ten numbered checks, one PASS/FAIL line
// each, nonzero exit when any fail.  Tolerances are pinned here, not read
// from anywhere else.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "coco/coconvex.hpp"
#include "coco/io.hpp"
#include "coco/measures.hpp"
#include "coco/solver.hpp"
#include "coco/stability.hpp"
#include "test_util.hpp"

using namespace coco;
using testutil::u53;
using testutil::uni;

namespace {

int failures = 0;

double now_s() {
  using clk = std::chrono::steady_clock;
  return std::chrono::duration<double>(clk::now().time_since_epoch()).count();
}

void report(int id, const char* title, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("criterion %2d: %s  %s — %s\n", id, pass ? "PASS" : "FAIL", title,
              detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

struct Instance {
  Cone c;
  DiscreteMeasure phi;
  SolveReport rep;
};

Vec on_circle(double ang) { return Vec(std::cos(ang), std::sin(ang)); }

DiscreteMeasure rand_circle_measure(std::mt19937_64& g, int max_atoms) {
  int n = static_cast<int>(u53(g) * (max_atoms + 1));
  std::vector<Vec> at;
  std::vector<double> ms;
  for (int i = 0; i < n; ++i) {
    at.push_back(on_circle(uni(g, 0, 2 * M_PI)));
    ms.push_back(uni(g, 0.05, 2.0));
  }
  if (at.empty()) return DiscreteMeasure{2, {}, {}};
  return make_measure(2, at, ms);
}

}  // namespace

int main() {
  std::printf("acceptance: discrete Minkowski problem in a cone, coconvex geometry\n");
  const double t_all = now_s();

  // ---- criterion 1: solve round trip on random planar and spatial instances
  std::vector<Instance> bank2, bank3;
  bool c1_ok = true;
  std::string c1_detail;
  double c1_elapsed = 0.0;
  {
    double t0 = now_s();
    double worst2 = 0.0, worst3rel = 0.0;
    for (std::uint64_t seed = 1000; bank2.size() < 100 && seed < 1500; ++seed) {
      std::mt19937_64 g(seed);
      Cone c = testutil::rand_cone2(g);
      int m = 1 + static_cast<int>(u53(g) * 50.0);
      DiscreteMeasure phi = testutil::rand_measure(g, c, m, 2.0);  // masses in [0.1, 2]
      if (phi.size() == 0) continue;
      double fmax = *std::max_element(phi.masses.begin(), phi.masses.end());
      SolveOptions opts;
      opts.tol = 1e-10 / std::max(1.0, fmax);  // absolute 1e-10 on facet areas
      opts.max_iter = 1000;
      Instance ins{c, phi, solve(c, phi, opts)};
      if (!ins.rep.converged || ins.rep.residual_inf > 1e-10) {
        c1_ok = false;
        c1_detail = fmt("planar seed %llu failed: converged=%d residual=%.3e",
                        (unsigned long long)seed, (int)ins.rep.converged,
                        ins.rep.residual_inf);
      }
      worst2 = std::max(worst2, ins.rep.residual_inf);
      bank2.push_back(std::move(ins));
    }
    for (std::uint64_t seed = 77000; bank3.size() < 50 && seed < 77500; ++seed) {
      std::mt19937_64 g(seed);
      Cone c = testutil::rand_cone3(g);
      int m = 1 + static_cast<int>(u53(g) * 12.0);
      DiscreteMeasure phi = testutil::rand_measure(g, c, m, 2.0);
      if (phi.size() == 0) continue;
      double fmin = *std::min_element(phi.masses.begin(), phi.masses.end());
      double fmax = *std::max_element(phi.masses.begin(), phi.masses.end());
      SolveOptions opts;
      opts.tol = 1e-6 * fmin / std::max(1.0, fmax);  // per-atom relative 1e-6
      opts.max_iter = 2000;
      Instance ins{c, phi, solve(c, phi, opts)};
      std::vector<double> areas = cut_facet_areas(ins.rep.k);
      double rel = 0.0;
      for (std::size_t i = 0; i < phi.size(); ++i)
        rel = std::max(rel, std::fabs(areas[i] - phi.masses[i]) / phi.masses[i]);
      if (!ins.rep.converged || rel > 1e-6) {
        c1_ok = false;
        c1_detail = fmt("spatial seed %llu failed: converged=%d relative=%.3e",
                        (unsigned long long)seed, (int)ins.rep.converged, rel);
      }
      worst3rel = std::max(worst3rel, rel);
      bank3.push_back(std::move(ins));
    }
    c1_elapsed = now_s() - t0;
    if (bank2.size() < 100 || bank3.size() < 50) {
      c1_ok = false;
      c1_detail = fmt("instance generation starved: %zu planar, %zu spatial",
                      bank2.size(), bank3.size());
    }
    if (c1_elapsed > 60.0) {
      c1_ok = false;
      c1_detail = fmt("runtime %.1f s exceeds the 60 s budget", c1_elapsed);
    }
    if (c1_ok)
      c1_detail = fmt(
          "100 planar ≤ 1e-10 (worst %.2e), 50 spatial ≤ 1e-6 relative "
          "(worst %.2e), %.1f s",
          worst2, worst3rel, c1_elapsed);
    report(1, "existence: measures reproduced by solved bodies", c1_ok, c1_detail);
  }

  // ---- criterion 2: descent solution equals the exact planar chain
  {
    double worst = 0.0;
    bool ok = true;
    for (const Instance& ins : bank2) {
      double dh = hausdorff_cfull(ins.rep.k, solve_chain_2d(ins.c, ins.phi));
      worst = std::max(worst, dh);
      ok = ok && dh <= 1e-8;
    }
    report(2, "planar oracle agreement within 1e-8", ok,
           fmt("%zu instances, worst hausdorff %.2e", bank2.size(), worst));
  }

  // ---- criterion 3: uniqueness under far-apart initial scalings
  {
    double t0 = now_s();
    double worst = 0.0;
    bool ok = true;
    std::string why = "";
    auto both = [&](const Instance& ins) {
      double fmax = *std::max_element(ins.phi.masses.begin(), ins.phi.masses.end());
      SolveOptions lo, hi;
      // 1e-9 absolute: deep enough that far-apart starts land within 1e-7 of
      // each other, loose enough that the stall-break path still converges
      lo.tol = hi.tol = 1e-9 / std::max(1.0, fmax);
      lo.max_iter = hi.max_iter = 2000;
      lo.init_scale = 0.1;
      hi.init_scale = 10.0;
      SolveReport a = solve(ins.c, ins.phi, lo), b = solve(ins.c, ins.phi, hi);
      if (!a.converged || !b.converged) {
        ok = false;
        why = fmt("a scaled start failed to converge (dim %d)", ins.c.dim);
        return;
      }
      double dh = hausdorff_cfull(a.k, b.k);
      worst = std::max(worst, dh);
      if (dh > 1e-7) {
        ok = false;
        why = fmt("hausdorff %.3e > 1e-7 (dim %d)", dh, ins.c.dim);
      }
    };
    for (const Instance& ins : bank2) both(ins);
    for (const Instance& ins : bank3) both(ins);
    report(3, "uniqueness: 0.1x and 10x starts meet within 1e-7", ok,
           ok ? fmt("150 instance pairs, worst hausdorff %.2e, %.1f s", worst,
                    now_s() - t0)
              : why);
  }

  // ---- criterion 4: the two volume routes agree, worked values reproduced
  {
    bool ok = true;
    std::string why;
    double worst2 = 0.0, worst3 = 0.0;
    int made2 = 0, made3 = 0;
    for (std::uint64_t seed = 4000; made2 < 120 && seed < 4500; ++seed) {
      std::mt19937_64 g(seed);
      Cone c = testutil::rand_cone2(g);
      CFullSet k = testutil::rand_cfull(g, c, 8);
      double vi = coconvex_volume(k, VolumeMethod::integral);
      double vd = coconvex_volume(k, VolumeMethod::direct);
      double rel = std::fabs(vi - vd) / std::max(vi, 1e-12);
      worst2 = std::max(worst2, rel);
      if (rel > 1e-9) {
        ok = false;
        why = fmt("planar seed %llu: relative gap %.3e", (unsigned long long)seed, rel);
      }
      ++made2;
    }
    for (std::uint64_t seed = 5000; made3 < 80 && seed < 5500; ++seed) {
      std::mt19937_64 g(seed);
      Cone c = testutil::rand_cone3(g);
      CFullSet k = testutil::rand_cfull(g, c, 6);
      if (surface_area_measure(k).size() == 0) continue;
      double vi = coconvex_volume(k, VolumeMethod::integral);
      double vd = coconvex_volume(k, VolumeMethod::direct);
      double rel = std::fabs(vi - vd) / std::max(vi, 1e-12);
      worst3 = std::max(worst3, rel);
      if (rel > 1e-6) {
        ok = false;
        why = fmt("spatial seed %llu: relative gap %.3e", (unsigned long long)seed, rel);
      }
      ++made3;
    }

    double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
    Cone q = make_cone(2, {Vec(1, 0), Vec(0, 1)});
    Cone oct = make_cone(3, {Vec(1, 0, 0), Vec(0, 1, 0), Vec(0, 0, 1)});
    CFullSet k1 = build(q, {Vec(-1 / s2, -1 / s2)}, {-1.0});
    CFullSet k2 = build(q, {Vec(-0.6, -0.8), Vec(-0.8, -0.6)}, {-0.84, -0.84});
    CFullSet k3 = build(oct, {Vec(-1 / s3, -1 / s3, -1 / s3)}, {-1.0});
    struct Worked {
      const CFullSet* k;
      double want;
    } worked[] = {{&k1, 1.0}, {&k2, 0.84}, {&k3, s3 / 2}};
    for (const Worked& w : worked)
      for (VolumeMethod meth : {VolumeMethod::integral, VolumeMethod::direct})
        if (std::fabs(coconvex_volume(*w.k, meth) - w.want) > 1e-9) {
          ok = false;
          why = fmt("worked volume %.6f not reproduced to 1e-9", w.want);
        }
    report(4, "volume identity: integral vs direct routes", ok,
           ok ? fmt("200 bodies (worst planar %.2e, spatial %.2e); worked 1, "
                    "0.84, sqrt(3)/2 reproduced",
                    worst2, worst3)
              : why);
  }

  // ---- criterion 5: support/clearance/normal-gap inequalities per instance
  {
    bool ok = true;
    std::string why;
    std::mt19937_64 g(42);
    auto check_instance = [&](const Instance& ins) {
      if (!ok) return;
      const CFullSet& k = ins.rep.k;
      double r = clearance_radius(k);
      for (int s = 0; s < 100; ++s) {
        double h = support_value(k, testutil::rand_in_omega(g, ins.c));
        if (h > 1e-9 || h < -r - 1e-9) {
          ok = false;
          why = fmt("support number %.3e escapes [-r, 0], r=%.3e", h, r);
          return;
        }
      }
      double cap = std::pow(ins.phi.total() / aperture(ins.c), 1.0 / (ins.c.dim - 1));
      if (r > cap + 1e-9) {
        ok = false;
        why = fmt("clearance %.6f exceeds (mass/aperture)^(1/(d-1)) = %.6f", r, cap);
        return;
      }
      double a = normal_gap(ins.c, ins.phi.atoms);
      for (int s = 0; s < 100; ++s) {
        Vec x = testutil::rand_in_cone(g, ins.c);
        const Vec& u = ins.phi.atoms[s % ins.phi.size()];
        if (a > std::fabs(dot(x, u)) + 1e-9) {
          ok = false;
          why = fmt("normal gap %.6f exceeds |<x,u>| = %.6f", a, std::fabs(dot(x, u)));
          return;
        }
      }
    };
    for (const Instance& ins : bank2) check_instance(ins);
    for (const Instance& ins : bank3) check_instance(ins);

    // worked two-atom body: clearance 0.6*sqrt(2) stays below 4/pi, gap 3/5
    Cone q = make_cone(2, {Vec(1, 0), Vec(0, 1)});
    DiscreteMeasure phi2 = make_measure(2, {Vec(-0.8, -0.6), Vec(-0.6, -0.8)}, {1.0, 1.0});
    CFullSet k2 = solve_chain_2d(q, phi2);
    double r2 = clearance_radius(k2);
    double a2 = normal_gap(q, phi2.atoms);
    if (std::fabs(r2 - 0.6 * std::sqrt(2.0)) > 1e-12 || r2 > 4 / M_PI ||
        std::fabs(a2 - 0.6) > 1e-12) {
      ok = false;
      why = fmt("worked bounds broke: r=%.12f a=%.12f", r2, a2);
    }
    report(5, "depth and gap bounds on every solved instance", ok,
           ok ? fmt("150 instances x 100 samples; worked r=%.4f <= 4/pi=%.4f, a=0.6",
                    r2, 4 / M_PI)
              : why);
  }

  // ---- criterion 6: distance engine equals the oracle; metric axioms
  {
    bool ok = true;
    std::string why;
    std::mt19937_64 g(9001);
    for (int trial = 0; trial < 500 && ok; ++trial) {
      DiscreteMeasure x = rand_circle_measure(g, 6), y = rand_circle_measure(g, 6);
      if (lp_distance(x, y) != lp_distance_oracle(x, y)) {
        ok = false;
        why = fmt("flow and oracle split at pair %d", trial);
      }
    }
    for (int trial = 0; trial < 300 && ok; ++trial) {
      DiscreteMeasure x = rand_circle_measure(g, 4), y = rand_circle_measure(g, 4),
                      z = rand_circle_measure(g, 4);
      double xy = lp_distance(x, y);
      if (xy != lp_distance(y, x) || xy < 0.0 || lp_distance(x, x) != 0.0 ||
          lp_distance(x, z) > xy + lp_distance(y, z) + 1e-12) {
        ok = false;
        why = fmt("metric axiom broke at triple %d", trial);
      }
    }
    double phi = 2.0 * std::asin(0.1);
    DiscreteMeasure a = make_measure(2, {on_circle(0.0)}, {0.5});
    DiscreteMeasure b = make_measure(2, {on_circle(phi)}, {0.5});
    double psi = 2.0 * std::asin(std::sqrt(2.0) / 10.0);
    DiscreteMeasure mu = make_measure(2, {on_circle(0.0)}, {0.5});
    DiscreteMeasure nu = make_measure(2, {on_circle(0.0), on_circle(psi)}, {0.5, 0.3});
    if (std::fabs(lp_distance(a, b) - 0.2) > 1e-15 ||
        std::fabs(lp_distance(mu, nu) - 0.3) > 1e-15) {
      ok = false;
      why = "worked distances 0.2 / 0.3 not reproduced";
    }
    report(6, "exact Levy-Prokhorov engine", ok,
           ok ? "500 oracle pairs exact, 300 triples within 1e-12, worked 0.2 and 0.3"
              : why);
  }

  // ---- criterion 7: staircase example, hull agreement and the two series
  {
    bool ok = true;
    std::string why;
    double wv = 0.0, av = 0.0, limit = (M_PI * M_PI / 3.0 - 1.0) / std::sqrt(2.0);
    try {
      OrthantExample e200 = gen_orthant_example(200);  // full hull cross-check inside
      for (int n = 0; n < 200; ++n) {
        Vec p = e200.vertices[2 * n], qv = e200.vertices[2 * n + 1];
        Vec pn = e200.vertices[2 * n + 2], qn = e200.vertices[2 * n + 3];
        double diag = 0.5 * norm(cross3(pn - qv, qn - p));
        if (std::fabs(e200.areas[n] - diag) > 1e-9 * diag) {
          ok = false;
          why = fmt("band %d area %.12f vs diagonal identity %.12f", n + 1,
                    e200.areas[n], diag);
        }
      }
      OrthantExample big = gen_orthant_example(10000);
      wv = big.width_series;
      av = big.area_series;
      if (std::fabs(wv - limit) > 1e-4 * limit) {
        ok = false;
        why = fmt("width series %.8f misses the limit %.8f beyond 1e-4 relative", wv,
                  limit);
      }
      if (std::fabs(av - 1.7373) > 1e-3) {
        ok = false;
        why = fmt("area series %.8f strays from 1.7373 beyond 1e-3", av);
      }
    } catch (const Error& e) {
      ok = false;
      why = fmt("hull cross-check threw: %s", e.what());
    }
    report(7, "staircase series: width limit vs larger area limit", ok,
           ok ? fmt("width %.8f -> %.8f, area %.8f; the two limits differ by %.4f",
                    wv, limit, av, av - wv)
              : why);
  }

  // ---- criterion 8: boundary profile flags exactly the blow-up family
  {
    bool ok = true;
    std::string why;
    std::vector<double> margins;
    for (int j = 1; j <= 18; ++j) margins.push_back(std::ldexp(1.0, -j));
    int checked = 0;
    for (std::size_t i = 0; i < bank2.size() && checked < 20; ++i, ++checked) {
      DiscreteMeasure sam = surface_area_measure(bank2[i].rep.k);
      if (necessary_profile(sam, bank2[i].c, margins).unbounded_suspect) {
        ok = false;
        why = fmt("solved body %zu spuriously flagged", i);
      }
    }
    if (checked < 20) {
      ok = false;
      why = "fewer than 20 solved bodies available";
    }
    Cone q = make_cone(2, {Vec(1, 0), Vec(0, 1)});
    if (!necessary_profile(gen_boundary_blowup_measure(q, 20), q, margins)
             .unbounded_suspect) {
      ok = false;
      why = "blow-up family escaped the flag";
    }
    report(8, "necessary-condition profiler", ok,
           ok ? "20 solved measures unflagged; 20-atom blow-up family flagged" : why);
  }

  // ---- criterion 9: stability harness on the two-atom family
  {
    double t0 = now_s();
    bool ok = true;
    std::string why;
    double c50 = 0.0, c100 = 0.0, slope = 0.0;
    try {
      Cone q = make_cone(2, {Vec(1, 0), Vec(0, 1)});
      DiscreteMeasure phi2 =
          make_measure(2, {Vec(-0.8, -0.6), Vec(-0.6, -0.8)}, {1.0, 1.0});
      StabilityReport r50 = run_stability(q, phi2, 1e-2, 50, 7);
      StabilityReport r100 = run_stability(q, phi2, 1e-2, 100, 7);
      c50 = r50.c_hat;
      c100 = r100.c_hat;
      slope = r50.slope;
      if (!std::isfinite(c50) || c50 <= 0.0) {
        ok = false;
        why = fmt("c_hat %.6f not a positive finite number", c50);
      } else if (std::fabs(c100 - c50) >= 0.2 * c50) {
        ok = false;
        why = fmt("c_hat moved %.1f%% when trials doubled", 100 * (c100 - c50) / c50);
      } else if (slope < 0.4) {
        ok = false;
        why = fmt("log-log slope %.3f below 1/d - 0.1 = 0.4", slope);
      }
    } catch (const Error& e) {
      ok = false;
      why = fmt("harness threw: %s", e.what());
    }
    double elapsed = now_s() - t0;
    if (elapsed > 300.0) {
      ok = false;
      why = fmt("runtime %.1f s exceeds the 5 min budget", elapsed);
    }
    report(9, "stability: perturbation response bounded and scaling", ok,
           ok ? fmt("c_hat %.4f -> %.4f on doubling, slope %.3f >= 0.4, %.1f s", c50,
                    c100, slope, elapsed)
              : why);
  }

  // ---- criterion 10: exhaustion stays below the volume bound and goes Cauchy
  {
    bool ok = true;
    std::string why;
    try {
      Cone q = make_cone(2, {Vec(1, 0), Vec(0, 1)});
      DiscreteMeasure bu = gen_boundary_blowup_measure(q, 6);
      std::vector<double> margins;
      for (int j = 1; j <= 9; ++j) margins.push_back(0.6 * std::ldexp(1.0, -j));
      std::vector<ExhaustionStage> stages = solve_exhaustion(q, bu, margins);
      for (const ExhaustionStage& st : stages)
        if (st.volume > st.volume_bound + 1e-9) {
          ok = false;
          why = fmt("stage at margin %.4f: volume %.6f above bound %.6f", st.margin,
                    st.volume, st.volume_bound);
        }
      // the restricted measure stops changing for the last four stages
      for (std::size_t j = 6; j < stages.size(); ++j)
        if (stages[j].hausdorff_prev > 1e-9) {
          ok = false;
          why = fmt("tail stage %zu moved by %.3e", j, stages[j].hausdorff_prev);
        }
      if (ok)
        why = fmt("9 stages under the bound %.4f; tail movement %.1e, %.1e, %.1e",
                  stages[0].volume_bound, stages[6].hausdorff_prev,
                  stages[7].hausdorff_prev, stages[8].hausdorff_prev);
    } catch (const Error& e) {
      ok = false;
      why = fmt("exhaustion threw: %s", e.what());
    }
    report(10, "exhaustion: bounded stages converging once stabilized", ok, why);
  }

  std::printf("acceptance: %d/10 criteria passed (%.1f s total)\n", 10 - failures,
              now_s() - t_all);
  return failures;
}
