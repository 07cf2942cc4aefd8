// Command-line front end: JSON in, JSON/CSV out, one subcommand per
// library operation.  Exit codes: 0 success, 2 invalid input, 3 solver
// non-convergence, 4 geometric certification failure.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coco/coconvex.hpp"
#include "coco/errors.hpp"
#include "coco/io.hpp"
#include "coco/measures.hpp"
#include "coco/solver.hpp"
#include "coco/stability.hpp"

namespace {

using namespace coco;

std::string fmt(double v, const char* spec = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

Cone load_cone(const std::string& path) { return cone_from_json(read_text_file(path)); }

DiscreteMeasure load_measure(const std::string& path, int expected_dim) {
  return measure_from_json(read_text_file(path), expected_dim);
}

CFullSet load_body(const std::string& path) {
  return body_from_json(read_text_file(path));
}

void require_same_cone(const Cone& a, const Cone& b) {
  bool same = a.dim == b.dim && a.generators.size() == b.generators.size();
  if (same)
    for (const Vec& g : a.generators) {
      double best = 2.0;
      for (const Vec& h : b.generators) best = std::min(best, dist(g, h));
      same = same && best < 1e-12;
    }
  if (!same)
    throw ConeMismatch("the --cone document disagrees with the body's cone");
}

std::vector<double> parse_margins(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    std::string tok = csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      std::size_t used = 0;
      double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError("--margins expects a comma-separated list of numbers");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::fputs(content.c_str(), stdout);
  else
    write_text_file(out_path, content);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coconvex geometry toolkit"};
  app.require_subcommand(1);

  std::string cone_path, measure_path, body_path, out_path, margins_csv;
  std::string path_a, path_b, method = "integral";
  double tol = 1e-10, bound = 0.0, jitter = 1e-2;
  int max_iter = 200, trials = 50, series_n = 0, decades = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;

  CLI::App* c_solve = app.add_subcommand("solve", "solve the Minkowski problem");
  c_solve->add_option("--cone", cone_path)->required();
  c_solve->add_option("--measure", measure_path)->required();
  c_solve->add_option("--out", out_path)->required();
  c_solve->add_option("--tol", tol);
  c_solve->add_option("--max-iter", max_iter);
  c_solve->add_option("--seed", seed);

  CLI::App* c_sam = app.add_subcommand("sam", "surface area measure of a body");
  c_sam->add_option("--cone", cone_path)->required();
  c_sam->add_option("--body", body_path)->required();
  c_sam->add_option("--out", out_path)->required();

  CLI::App* c_lp = app.add_subcommand("lp-dist", "Levy-Prokhorov distance");
  c_lp->add_option("a", path_a)->required();
  c_lp->add_option("b", path_b)->required();

  CLI::App* c_haus = app.add_subcommand("hausdorff", "Hausdorff distance of bodies");
  c_haus->add_option("--cone", cone_path)->required();
  c_haus->add_option("a", path_a)->required();
  c_haus->add_option("b", path_b)->required();

  CLI::App* c_vol = app.add_subcommand("volume", "coconvex volume");
  c_vol->add_option("--cone", cone_path)->required();
  c_vol->add_option("--body", body_path)->required();
  c_vol->add_option("--method", method)
      ->check(CLI::IsMember({"integral", "direct", "both"}));

  CLI::App* c_bounds = app.add_subcommand("bounds", "certified bound suite");
  c_bounds->add_option("--cone", cone_path)->required();
  c_bounds->add_option("--body", body_path)->required();
  c_bounds->add_option("--bound", bound)->required();

  CLI::App* c_exh = app.add_subcommand("exhaust", "margin exhaustion ladder");
  c_exh->add_option("--cone", cone_path)->required();
  c_exh->add_option("--measure", measure_path)->required();
  c_exh->add_option("--margins", margins_csv)->required();

  CLI::App* c_stab = app.add_subcommand("stability", "jitter stability experiment");
  c_stab->add_option("--cone", cone_path)->required();
  c_stab->add_option("--measure", measure_path)->required();
  c_stab->add_option("--jitter", jitter);
  c_stab->add_option("--trials", trials);
  c_stab->add_option("--seed", seed)->required();
  c_stab->add_option("--out", out_path);

  CLI::App* c_orth = app.add_subcommand("orthant-series", "staircase example series");
  c_orth->add_option("--n", series_n)->required();

  CLI::App* c_prof =
      app.add_subcommand("necessary-profile", "boundary concentration profile");
  c_prof->add_option("--cone", cone_path)->required();
  c_prof->add_option("--measure", measure_path)->required();
  c_prof->add_option("--decades", decades)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  seed_given = c_stab->count("--seed") > 0 || c_solve->count("--seed") > 0;
  (void)seed_given;

  try {
    if (*c_solve) {
      Cone c = load_cone(cone_path);
      DiscreteMeasure phi = load_measure(measure_path, c.dim);
      SolveOptions opts;
      opts.tol = tol;
      opts.max_iter = max_iter;
      opts.seed = seed;
      SolveReport rep = solve(c, phi, opts);
      emit(out_path, solution_to_json(rep, phi));
      if (!rep.converged) {
        std::fprintf(stderr, "solver did not converge: residual %.3e after %d iterations\n",
                     rep.residual_inf, rep.iterations);
        return 3;
      }
    } else if (*c_sam) {
      Cone c = load_cone(cone_path);
      CFullSet k = load_body(body_path);
      require_same_cone(c, k.cone);
      emit(out_path, measure_to_json(surface_area_measure(k)));
    } else if (*c_lp) {
      DiscreteMeasure a = measure_from_json(read_text_file(path_a));
      DiscreteMeasure b = measure_from_json(read_text_file(path_b), a.dim);
      std::printf("%s\n", fmt(lp_distance(a, b)).c_str());
    } else if (*c_haus) {
      Cone c = load_cone(cone_path);
      CFullSet a = load_body(path_a);
      CFullSet b = load_body(path_b);
      require_same_cone(c, a.cone);
      require_same_cone(c, b.cone);
      std::printf("%s\n", fmt(hausdorff_cfull(a, b)).c_str());
    } else if (*c_vol) {
      Cone c = load_cone(cone_path);
      CFullSet k = load_body(body_path);
      require_same_cone(c, k.cone);
      if (method == "both") {
        std::printf("integral %s\n",
                    fmt(coconvex_volume(k, VolumeMethod::integral)).c_str());
        std::printf("direct %s\n",
                    fmt(coconvex_volume(k, VolumeMethod::direct)).c_str());
      } else {
        VolumeMethod vm =
            method == "integral" ? VolumeMethod::integral : VolumeMethod::direct;
        std::printf("%s\n", fmt(coconvex_volume(k, vm)).c_str());
      }
    } else if (*c_bounds) {
      Cone c = load_cone(cone_path);
      CFullSet k = load_body(body_path);
      require_same_cone(c, k.cone);
      BoundsReport br = bounds_report(k, k.normals, bound);
      std::printf("r %s\n", fmt(br.r).c_str());
      std::printf("c1 %s\n", fmt(br.c1).c_str());
      std::printf("a %s\n", fmt(br.a).c_str());
      std::printf("c8 %s\n", fmt(br.c8).c_str());
      std::printf("sup_abs_h %s\n", fmt(br.sup_abs_h).c_str());
      std::printf("lip_h %s\n", fmt(br.lip_h).c_str());
      std::printf("bl_h %s\n", fmt(br.bl_h).c_str());
      std::printf("all_checks_pass %s\n", br.all_checks_pass ? "true" : "false");
      if (!br.all_checks_pass) return 4;
    } else if (*c_exh) {
      Cone c = load_cone(cone_path);
      DiscreteMeasure phi = load_measure(measure_path, c.dim);
      std::vector<ExhaustionStage> stages =
          solve_exhaustion(c, phi, parse_margins(margins_csv));
      std::string csv =
          "stage,margin,atom_count,volume,clearance,hausdorff_prev,volume_bound\n";
      for (std::size_t j = 0; j < stages.size(); ++j) {
        const ExhaustionStage& s = stages[j];
        csv += std::to_string(j) + "," + fmt(s.margin, "%.17g") + "," +
               std::to_string(s.atom_count) + "," + fmt(s.volume, "%.17g") + "," +
               fmt(s.clearance, "%.17g") + "," + fmt(s.hausdorff_prev, "%.17g") + "," +
               fmt(s.volume_bound, "%.17g") + "\n";
      }
      std::fputs(csv.c_str(), stdout);
    } else if (*c_stab) {
      Cone c = load_cone(cone_path);
      DiscreteMeasure phi = load_measure(measure_path, c.dim);
      StabilityReport rep = run_stability(c, phi, jitter, trials, seed);
      emit(out_path, stability_to_csv(rep));
      std::fprintf(stderr, "c_hat %.12g\nslope %.12g\n", rep.c_hat, rep.slope);
    } else if (*c_orth) {
      OrthantExample ex = gen_orthant_example(series_n);
      std::printf("width_series %s\n", fmt(ex.width_series).c_str());
      std::printf("area_series %s\n", fmt(ex.area_series).c_str());
    } else if (*c_prof) {
      Cone c = load_cone(cone_path);
      DiscreteMeasure phi = load_measure(measure_path, c.dim);
      if (decades < 1 || decades > 15)
        throw ValidationError("--decades must be between 1 and 15");
      // halving ladder spanning the requested number of decades; the bins
      // [delta, 2*delta) then tile the margin axis with no gaps
      std::vector<double> margins;
      for (int j = 1; std::ldexp(1.0, -j) >= std::pow(10.0, -decades); ++j)
        margins.push_back(std::ldexp(1.0, -j));
      ProfileReport pr = necessary_profile(phi, c, margins);
      std::string csv = "margin,value\n";
      for (const ProfilePoint& p : pr.points)
        csv += fmt(p.margin, "%.17g") + "," + fmt(p.value, "%.17g") + "\n";
      csv += std::string("unbounded_suspect,") +
             (pr.unbounded_suspect ? "true" : "false") + "\n";
      std::fputs(csv.c_str(), stdout);
    }
  } catch (const CertificationFailed& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 4;
  } catch (const InternalError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 4;
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }
  return 0;
}
