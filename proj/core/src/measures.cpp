#include "coco/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

#include "coco/errors.hpp"

namespace coco {

double DiscreteMeasure::total() const {
  double s = 0.0;
  for (double m : masses) s += m;
  return s;
}

DiscreteMeasure make_measure(int dim, const std::vector<Vec>& atoms,
                             const std::vector<double>& masses) {
  if (dim != 2 && dim != 3) throw DimensionMismatch("measure dimension must be 2 or 3");
  if (atoms.size() != masses.size())
    throw ValidationError("atom and mass lists have different lengths");
  DiscreteMeasure out;
  out.dim = dim;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].dim() != dim) throw DimensionMismatch("atom dimension mismatch");
    if (std::fabs(norm(atoms[i]) - 1.0) > 1e-12) throw NonUnitAtom("atom direction is not unit");
    if (!(masses[i] > 0.0) || !std::isfinite(masses[i]))
      throw NonpositiveMass("atom mass must be strictly positive and finite");
    bool merged = false;
    for (std::size_t j = 0; j < out.atoms.size(); ++j) {
      if (dist(out.atoms[j], atoms[i]) <= 1e-12) {
        out.masses[j] += masses[i];
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.atoms.push_back(atoms[i]);
      out.masses.push_back(masses[i]);
    }
  }
  return out;
}

namespace {

// ---- one-sided excess g(A) = mu(A) - nu(N(A)) --------------------------
//
// Both the flow solver and the enumeration oracle report g by summing the
// same sets in index-ascending order, so agreeing sets give bit-identical
// values.

double eval_excess(const std::vector<char>& in_a, const std::vector<double>& mu_mass,
                   const std::vector<double>& nu_mass, const std::vector<std::vector<char>>& adj) {
  std::size_t p = mu_mass.size(), q = nu_mass.size();
  double s = 0.0;
  for (std::size_t i = 0; i < p; ++i)
    if (in_a[i]) s += mu_mass[i];
  for (std::size_t j = 0; j < q; ++j) {
    bool hit = false;
    for (std::size_t i = 0; i < p && !hit; ++i) hit = in_a[i] && adj[i][j];
    if (hit) s -= nu_mass[j];
  }
  return s;
}

struct Dinic {
  struct Edge {
    int to;
    double cap;
    int rev;
  };
  std::vector<std::vector<Edge>> g;
  std::vector<int> level, iter;
  explicit Dinic(int n) : g(n), level(n), iter(n) {}
  void add_edge(int a, int b, double cap) {
    g[a].push_back({b, cap, static_cast<int>(g[b].size())});
    g[b].push_back({a, 0.0, static_cast<int>(g[a].size()) - 1});
  }
  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const Edge& e : g[v])
        if (e.cap > 0.0 && level[e.to] < 0) {
          level[e.to] = level[v] + 1;
          q.push(e.to);
        }
    }
    return level[t] >= 0;
  }
  double dfs(int v, int t, double f) {
    if (v == t) return f;
    for (int& i = iter[v]; i < static_cast<int>(g[v].size()); ++i) {
      Edge& e = g[v][i];
      if (e.cap > 0.0 && level[v] < level[e.to]) {
        double d = dfs(e.to, t, std::min(f, e.cap));
        if (d > 0.0) {
          e.cap -= d;
          g[e.to][e.rev].cap += d;
          return d;
        }
      }
    }
    return 0.0;
  }
  void run(int s, int t) {
    while (bfs(s, t)) {
      std::fill(iter.begin(), iter.end(), 0);
      while (dfs(s, t, 1e300) > 0.0) {
      }
    }
  }
  // vertices reachable from s in the residual graph; eps suppresses
  // floating-point crumbs left on formally saturated edges
  std::vector<char> reachable(int s, double eps) const {
    std::vector<char> seen(g.size(), 0);
    std::queue<int> q;
    seen[s] = 1;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const Edge& e : g[v])
        if (e.cap > eps && !seen[e.to]) {
          seen[e.to] = 1;
          q.push(e.to);
        }
    }
    return seen;
  }
};

// max over A of mu(A) - nu(N(A)) for a fixed adjacency, via min cut: the
// optimal A is the set of mu-atoms on the source side, re-summed by
// eval_excess.
double excess_by_flow(const std::vector<double>& mu_mass, const std::vector<double>& nu_mass,
                      const std::vector<std::vector<char>>& adj) {
  int p = static_cast<int>(mu_mass.size()), q = static_cast<int>(nu_mass.size());
  if (p == 0) return 0.0;
  int src = 0, snk = p + q + 1;
  Dinic din(p + q + 2);
  double cap_scale = 0.0;
  for (int i = 0; i < p; ++i) {
    din.add_edge(src, 1 + i, mu_mass[i]);
    cap_scale = std::max(cap_scale, mu_mass[i]);
  }
  for (int j = 0; j < q; ++j) {
    din.add_edge(1 + p + j, snk, nu_mass[j]);
    cap_scale = std::max(cap_scale, nu_mass[j]);
  }
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j)
      if (adj[i][j]) din.add_edge(1 + i, 1 + p + j, 1e300);
  din.run(src, snk);
  std::vector<char> seen = din.reachable(src, 1e-9 * (1.0 + cap_scale));
  std::vector<char> in_a(p, 0);
  for (int i = 0; i < p; ++i) in_a[i] = seen[1 + i];
  return eval_excess(in_a, mu_mass, nu_mass, adj);
}

// max over A of mu(A) - nu(N(A)) by exhaustive enumeration (oracle path)
double excess_by_enum(const std::vector<double>& mu_mass, const std::vector<double>& nu_mass,
                      const std::vector<std::vector<char>>& adj) {
  int p = static_cast<int>(mu_mass.size());
  double best = 0.0;  // A = empty set
  std::vector<char> in_a(p, 0);
  for (std::uint32_t mask = 1; mask < (1u << p); ++mask) {
    for (int i = 0; i < p; ++i) in_a[i] = (mask >> i) & 1u;
    best = std::max(best, eval_excess(in_a, mu_mass, nu_mass, adj));
  }
  return best;
}

// Shared interval scan.  g is constant on each half-open interval
// (D[k], D[k+1]] of the sorted breakpoint list D = {0} + cross distances:
// for eps there, the strict condition ||x-y|| < eps selects exactly the
// pairs with distance <= D[k].  The infimum over a feasible interval is
// max(G_k, D[k]).
double lp_scan(const DiscreteMeasure& mu, const DiscreteMeasure& nu, bool oracle) {
  std::size_t p = mu.size(), q = nu.size();
  if (p == 0 && q == 0) return 0.0;
  if (p > 0 && q > 0 && mu.dim != nu.dim)
    throw DimensionMismatch("measures live on spheres of different dimension");
  std::vector<std::vector<double>> d(p, std::vector<double>(q, 0.0));
  std::vector<double> cuts = {0.0};
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      d[i][j] = dist(mu.atoms[i], nu.atoms[j]);
      cuts.push_back(d[i][j]);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double best = 1e300;
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    double thr = cuts[k];
    double right = (k + 1 < cuts.size()) ? cuts[k + 1] : 1e300;
    if (thr >= best) break;  // candidates only grow from here
    std::vector<std::vector<char>> adj(p, std::vector<char>(q, 0));
    std::vector<std::vector<char>> adj_t(q, std::vector<char>(p, 0));
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < q; ++j)
        if (d[i][j] <= thr) adj[i][j] = adj_t[j][i] = 1;
    double g_mn = oracle ? excess_by_enum(mu.masses, nu.masses, adj)
                         : excess_by_flow(mu.masses, nu.masses, adj);
    double g_nm = oracle ? excess_by_enum(nu.masses, mu.masses, adj_t)
                         : excess_by_flow(nu.masses, mu.masses, adj_t);
    double g = std::max(g_mn, g_nm);
    if (g <= right) best = std::min(best, std::max(g, thr));
  }
  return best;
}

}  // namespace

double lp_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  return lp_scan(mu, nu, false);
}

double lp_distance_oracle(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.size() + nu.size() > 16)
    throw TooManyAtoms("oracle limited to 16 atoms across both measures");
  return lp_scan(mu, nu, true);
}

double SphereFunction::at(const Vec& u) const {
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (dist(atoms[i], u) <= 1e-12) return values[i];
  throw MissingValue("function value missing at an atom");
}

BlNorm bl_norm(const SphereFunction& f, const std::vector<Vec>& omega) {
  if (omega.empty()) throw ValidationError("BL norm over an empty atom set");
  BlNorm out;
  std::vector<double> vals;
  for (const Vec& u : omega) vals.push_back(f.at(u));
  for (std::size_t i = 0; i < omega.size(); ++i) {
    out.sup = std::max(out.sup, std::fabs(vals[i]));
    for (std::size_t j = i + 1; j < omega.size(); ++j) {
      double dd = dist(omega[i], omega[j]);
      if (dd > 1e-12) out.lip = std::max(out.lip, std::fabs(vals[i] - vals[j]) / dd);
    }
  }
  out.bl = out.lip + out.sup;
  return out;
}

double pairing_gap(const SphereFunction& f, const DiscreteMeasure& mu,
                   const DiscreteMeasure& nu) {
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) s += f.at(mu.atoms[i]) * mu.masses[i];
  for (std::size_t j = 0; j < nu.size(); ++j) s -= f.at(nu.atoms[j]) * nu.masses[j];
  return std::fabs(s);
}

DiscreteMeasure restrict_margin(const DiscreteMeasure& mu, const Cone& c, double delta) {
  if (mu.size() == 0) return mu;
  std::vector<double> margins = boundary_margins(c, mu.atoms);
  std::vector<Vec> atoms;
  std::vector<double> masses;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (margins[i] >= delta) {
      atoms.push_back(mu.atoms[i]);
      masses.push_back(mu.masses[i]);
    }
  DiscreteMeasure out;
  out.dim = mu.dim;
  out.atoms = std::move(atoms);
  out.masses = std::move(masses);
  return out;
}

}  // namespace coco
