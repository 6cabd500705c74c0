#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "dtlab/error.hpp"
#include "dtlab/experiments.hpp"
#include "json_util.hpp"

namespace dtlab {

std::vector<RadialMeasure::Atom> concentration_family(double a, double b, int n_max) {
  if (!(a >= 0.0) || !std::isfinite(a)) throw_config("experiments.domain", "need a >= 0");
  if (!(b > 1.0 && b < 2.0)) throw_config("experiments.domain", "need 1 < b < 2");
  if (n_max < 2) throw_config("experiments.domain", "n_max must be at least 2");
  std::vector<RadialMeasure::Atom> atoms;
  for (int n = 1; n <= n_max; ++n) atoms.push_back({a + 1.0 / n, std::pow(static_cast<double>(n), -b)});
  return RadialMeasure::normalized(std::move(atoms)).atoms();
}

Example65Report example65_check(int atoms, double exponent) {
  if (atoms < 2) throw_config("experiments.domain", "example65_atoms must be at least 2");
  if (!(exponent > 0.0 && exponent < 1.0)) throw_config("experiments.domain", "example65_exponent must be in (0,1)");
  Example65Report rep;
  rep.atoms = atoms;
  rep.exponent = exponent;
  // Quantile u of the density (1 - e) x^-e on (0, 1] sits at radius u^(1/(1-e)).
  const double m = static_cast<double>(atoms);
  for (int k = atoms - 1; k >= 0; --k) {
    const double radius = std::pow((k + 0.5) / m, 1.0 / (1.0 - exponent));
    rep.deltas.push_back(radius);
    rep.ratios.push_back(((k + 1) / m) / radius);
  }
  rep.nondecreasing = std::is_sorted(rep.ratios.begin(), rep.ratios.end());
  rep.growth = rep.ratios.back() / rep.ratios.front();
  rep.pass = rep.nondecreasing && rep.growth >= 2.0;
  return rep;
}

namespace {

void validate(const ConcentrationFamilyConfig& cfg) {
  if (!(cfg.c > 0.0) || !std::isfinite(cfg.c)) throw_config("experiments.domain", "need c > 0");
  if (cfg.max_rungs < 1) throw_config("experiments.domain", "max_rungs must be positive");
}

struct Window {
  std::vector<RadialMeasure::Atom> atoms;  // inside [r, s], sorted by radius
  double mass = 0.0;
};

}  // namespace

ConcentrationReport thm63_family(const ConcentrationFamilyConfig& cfg) {
  validate(cfg);
  ConcentrationReport rep;
  rep.config = cfg;
  rep.atoms = concentration_family(cfg.a, cfg.b, cfg.n_max);
  rep.x0 = cfg.a;
  rep.z_norm_est = rep.atoms.back().radius;
  const double c2 = cfg.c * cfg.c;
  const double x0 = rep.x0;

  auto window = [&](double eps) {
    Window w;
    const double r = std::max(0.0, x0 - eps);
    const double s = x0 + eps;
    for (const auto& atom : rep.atoms) {
      if (atom.radius >= r && atom.radius <= s) {
        w.atoms.push_back(atom);
        w.mass += atom.weight;
      }
    }
    return w;
  };
  // mu(A(x0 - delta, x0 + delta) minus the circle of radius x0).
  auto punctured_mass = [&](double delta) {
    double m = 0.0;
    for (const auto& atom : rep.atoms) {
      const double d = std::abs(atom.radius - x0);
      if (d > 0.0 && d <= delta) m += atom.weight;
    }
    return m;
  };

  std::vector<double> grid;
  for (const auto& atom : rep.atoms) {
    const double d = std::abs(atom.radius - x0);
    if (d > 0.0 && d < rep.z_norm_est) grid.push_back(d);
  }
  std::sort(grid.begin(), grid.end(), std::greater<>());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (double d : grid) rep.peak_ratio = std::max(rep.peak_ratio, punctured_mass(d) / d);

  double n_param = 1.0;
  for (int rung = 0; rung < cfg.max_rungs; ++rung, n_param *= 2.0) {
    std::optional<LadderRung> best;
    for (double eps : grid) {
      if (!(punctured_mass(eps) / eps > n_param)) continue;
      const Window w = window(eps);
      if (w.atoms.size() < 2) continue;
      const double r = std::max(0.0, x0 - eps);
      const double s = x0 + eps;
      double inner = 0.0;
      for (std::size_t j = 0; j + 1 < w.atoms.size(); ++j) {
        inner += w.atoms[j].weight;
        const double t = inner / w.mass;
        const double strong = 1.0 / std::sqrt(1.0 + (s * s - r * r) / (c2 * w.mass * std::max(t, 1.0 - t)));
        if (best && strong <= best->bound_strong) continue;
        const double lo = w.atoms[j].radius;
        const double hi = w.atoms[j + 1].radius;
        LadderRung candidate;
        candidate.n_param = n_param;
        candidate.eps = eps;
        candidate.r = r;
        candidate.r_prime = lo + (hi - lo) / 3.0;
        candidate.s_prime = hi - (hi - lo) / 3.0;
        candidate.s = s;
        candidate.mass = w.mass;
        candidate.t = t;
        candidate.atoms = static_cast<int>(w.atoms.size());
        candidate.bound_strong = strong;
        candidate.bound_uniform = 1.0 / std::sqrt(1.0 + 2.0 * (s * s - r * r) / (c2 * w.mass));
        best = candidate;
      }
    }
    if (!best) {
      rep.first_infeasible = n_param;
      break;
    }
    best->final_estimate = 1.0 / std::sqrt(1.0 + 8.0 * rep.z_norm_est / (c2 * n_param));
    best->meets_final_estimate = best->bound_strong >= best->final_estimate - 1e-12;
    rep.rungs.push_back(*best);
  }
  if (rep.rungs.empty()) {
    throw_config("experiments.empty_annulus",
                 "no admissible eps for N_param = 1 (peak mu(window)/delta = " + std::to_string(rep.peak_ratio) + ")");
  }

  // Best compressed two-annulus bound over every window of consecutive atoms, with
  // the split isolating the lighter end atom.
  const auto& at = rep.atoms;
  for (std::size_t i = 0; i < at.size(); ++i) {
    double mass = at[i].weight;
    for (std::size_t l = i + 1; l < at.size(); ++l) {
      mass += at[l].weight;
      const double gap = at[l].radius * at[l].radius - at[i].radius * at[i].radius;
      const double heavy = mass - std::min(at[i].weight, at[l].weight);
      rep.best_admissible_bound = std::max(rep.best_admissible_bound, 1.0 / std::sqrt(1.0 + gap / (c2 * heavy)));
    }
  }

  rep.nondecreasing = true;
  rep.rungs_meet_estimate = true;
  for (std::size_t k = 0; k < rep.rungs.size(); ++k) {
    if (k > 0 && rep.rungs[k].bound_strong < rep.rungs[k - 1].bound_strong) rep.nondecreasing = false;
    rep.rungs_meet_estimate = rep.rungs_meet_estimate && rep.rungs[k].meets_final_estimate;
  }
  rep.final_exceeds_target = rep.rungs.back().bound_strong > cfg.target;
  rep.example65 = example65_check(cfg.example65_atoms, cfg.example65_exponent);
  rep.pass = rep.nondecreasing && rep.final_exceeds_target && rep.rungs_meet_estimate && rep.example65.pass;
  return rep;
}

nlohmann::json to_json(const ConcentrationFamilyConfig& c) {
  return {{"a", c.a},
          {"b", c.b},
          {"n_max", c.n_max},
          {"c", c.c},
          {"max_rungs", c.max_rungs},
          {"target", c.target},
          {"example65_atoms", c.example65_atoms},
          {"example65_exponent", c.example65_exponent},
          {"seed", c.seed}};
}

ConcentrationFamilyConfig concentration_config_from_json(const nlohmann::json& j) {
  detail::require_keys(j,
                       {"a", "b", "n_max", "c", "max_rungs", "target", "example65_atoms", "example65_exponent", "seed"},
                       "concentration");
  ConcentrationFamilyConfig c;
  detail::read(j, "a", c.a);
  detail::read(j, "b", c.b);
  detail::read(j, "n_max", c.n_max);
  detail::read(j, "c", c.c);
  detail::read(j, "max_rungs", c.max_rungs);
  detail::read(j, "target", c.target);
  detail::read(j, "example65_atoms", c.example65_atoms);
  detail::read(j, "example65_exponent", c.example65_exponent);
  detail::read(j, "seed", c.seed);
  return c;
}

namespace {

nlohmann::json rung_json(const LadderRung& r) {
  return {{"N_param", r.n_param},
          {"eps", r.eps},
          {"r", r.r},
          {"r_prime", r.r_prime},
          {"s_prime", r.s_prime},
          {"s", r.s},
          {"mass", r.mass},
          {"t", r.t},
          {"atoms", r.atoms},
          {"bound_strong", r.bound_strong},
          {"bound_uniform", r.bound_uniform},
          {"final_estimate", r.final_estimate},
          {"meets_final_estimate", r.meets_final_estimate}};
}

}  // namespace

nlohmann::json to_json(const ConcentrationReport& r) {
  nlohmann::json rungs = nlohmann::json::array();
  for (const auto& rung : r.rungs) rungs.push_back(rung_json(rung));
  const auto& e = r.example65;
  return {{"config", to_json(r.config)},
          {"measure", detail::atoms_json(r.atoms)},
          {"x0", r.x0},
          {"z_norm_est", r.z_norm_est},
          {"peak_ratio", r.peak_ratio},
          {"rungs", rungs},
          {"first_infeasible", r.first_infeasible ? nlohmann::json(*r.first_infeasible) : nlohmann::json(nullptr)},
          {"best_admissible_bound", r.best_admissible_bound},
          {"checks",
           {{"ladder_nondecreasing", r.nondecreasing},
            {"final_rung_exceeds_target", r.final_exceeds_target},
            {"rungs_meet_final_estimate", r.rungs_meet_estimate},
            {"example65_hypothesis", e.pass}}},
          {"example65",
           {{"atoms", e.atoms},
            {"exponent", e.exponent},
            {"nondecreasing", e.nondecreasing},
            {"growth", e.growth},
            {"first_ratio", e.ratios.front()},
            {"last_ratio", e.ratios.back()},
            {"pass", e.pass}}},
          {"pass", r.pass}};
}

Table rung_table(const ConcentrationReport& r) {
  Table t;
  t.header = {"N_param", "eps", "r", "r_prime", "s_prime", "s", "mass", "t", "atoms",
              "bound_strong", "bound_uniform", "final_estimate", "meets_final_estimate"};
  for (const auto& x : r.rungs) {
    t.add_row({format_number(x.n_param), format_number(x.eps), format_number(x.r), format_number(x.r_prime),
               format_number(x.s_prime), format_number(x.s), format_number(x.mass), format_number(x.t),
               std::to_string(x.atoms), format_number(x.bound_strong), format_number(x.bound_uniform),
               format_number(x.final_estimate), x.meets_final_estimate ? "true" : "false"});
  }
  return t;
}

}  // namespace dtlab
