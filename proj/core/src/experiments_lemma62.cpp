#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "dtlab/error.hpp"
#include "dtlab/experiments.hpp"
#include "dtlab/linalg.hpp"
#include "json_util.hpp"

namespace dtlab {

Lemma62Bound lemma62_bound(double r, double s, double c, double t) {
  if (!(r >= 0.0) || !(s > r) || !std::isfinite(s)) throw_config("experiments.domain", "need s > r >= 0");
  if (!(c > 0.0) || !std::isfinite(c)) throw_config("experiments.domain", "need c > 0");
  if (!(t > 0.0 && t < 1.0)) throw_config("experiments.domain", "need 0 < t < 1");
  const double gap = s * s - r * r;
  return {1.0 / std::sqrt(1.0 + gap / (c * c * std::max(t, 1.0 - t))), 1.0 / std::sqrt(1.0 + 2.0 * gap / (c * c))};
}

void validate(const AngleExperimentConfig& cfg) {
  if (!(cfg.r >= 0.0 && cfg.r < cfg.r_prime && cfg.r_prime < cfg.s_prime && cfg.s_prime < cfg.s) ||
      !std::isfinite(cfg.s)) {
    throw_config("experiments.domain", "need 0 <= r < r' < s' < s");
  }
  if (!(cfg.t > 0.0 && cfg.t < 1.0)) throw_config("experiments.domain", "need 0 < t < 1");
  if (!(cfg.c > 0.0) || !std::isfinite(cfg.c)) throw_config("experiments.domain", "need c > 0");
  if (cfg.n < 4) throw_config("experiments.domain", "N must be at least 4");
  if (cfg.K < 1 || cfg.k_limit < cfg.K) throw_config("experiments.domain", "need 1 <= K <= k_limit");
  if (cfg.trials < 1) throw_config("experiments.domain", "trials must be positive");
  if (cfg.atoms_per_annulus < 1) throw_config("experiments.domain", "atoms_per_annulus must be positive");
  if (!(cfg.truncation_cap > 0.0)) throw_config("experiments.domain", "truncation_cap must be positive");
}

namespace {

RadialMeasure interior_atoms(double lo, double hi, int count) {
  std::vector<double> radii;
  for (int j = 0; j < count; ++j) radii.push_back(lo + (hi - lo) * (j + 1) / (count + 1));
  return RadialMeasure::uniform(std::move(radii));
}

struct Truncation {
  int K = 0;
  double q = 0.0;      // ||Z1^K|| ||Z2^-K||
  double ratio = 0.0;  // q^(1/K)
};

AngleTrial run_trial(const AngleExperimentConfig& cfg, const RadialMeasure& inner, const RadialMeasure& outer,
                     int index) {
  AngleTrial out;
  out.index = index;
  out.seed = trial_seed(cfg.seed, TrialStream::lemma62, index);

  const std::vector<BlockPart> parts{{inner, cfg.t}, {outer, 1.0 - cfg.t}};
  const MatrixModel model = build_block_dt(parts, cfg.c, cfg.n, out.seed);
  const Index n1 = model.blocks[0].size;
  const Index n2 = model.blocks[1].size;
  const CMatrix z1 = model.Z.topLeftCorner(n1, n1);
  const CMatrix z2 = model.Z.bottomRightCorner(n2, n2);
  const CMatrix coupling = model.Z.topRightCorner(n1, n2);  // c p X (1 - p)
  const CMatrix z2_inv = inverse(z2);
  out.z_norm = op_norm(model.Z);

  const double ratio_limit = cfg.ratio_slack * cfg.r_prime / cfg.s_prime;
  const double coupling_norm = op_norm(coupling);
  Truncation tr;
  CMatrix y;
  for (int k = cfg.K;; k *= 2) {
    tr.K = k;
    tr.q = op_norm(matrix_power(z1, k)) * op_norm(matrix_power(z2_inv, k));
    tr.ratio = std::pow(tr.q, 1.0 / k);
    double residual = std::numeric_limits<double>::infinity();
    if (tr.q < 1.0) {
      // Horner form of sum_{j<K} Z1^j C Z2^(-j-1).
      const CMatrix head = coupling * z2_inv;
      y = CMatrix::Zero(n1, n2);
      for (int j = 0; j < k; ++j) y = head + z1 * y * z2_inv;
      // ||Y - Y_K|| <= q ||Y_K|| / (1 - q); the similarity defect is Z1^K C Z2^-K.
      residual = tr.q * (coupling_norm + op_norm(y) / (1.0 - tr.q));
    }
    out.truncation_residual = residual;
    const bool ok = tr.ratio < ratio_limit && residual <= cfg.truncation_cap * out.z_norm;
    if (ok) break;
    if (!cfg.adaptive_k || 2 * k > cfg.k_limit) {
      throw_numerical("experiments.truncation",
                      "K=" + std::to_string(k) + ": ratio " + std::to_string(tr.ratio) + " vs limit " +
                          std::to_string(ratio_limit) + ", residual " + std::to_string(residual) + " vs cap " +
                          std::to_string(cfg.truncation_cap * out.z_norm));
    }
  }
  out.K = tr.K;
  out.ratio = tr.ratio;

  const double n = static_cast<double>(cfg.n);
  out.ynorm_sq = y.squaredNorm() / n;
  const double eta_sq = static_cast<double>(n2) / n;
  out.cos_vector = std::sqrt(out.ynorm_sq) / std::sqrt(out.ynorm_sq + eta_sq);
  out.similarity_residual = op_norm(y * z2 - z1 * y - coupling);
  // Standard bound for a length-m inner product, gamma_m = m u / (1 - m u).
  const double u = std::numeric_limits<double>::epsilon() / 2.0;
  const double m = static_cast<double>(std::max(n1, n2)) + 2.0;
  out.rounding_floor = m * u / (1.0 - m * u) * std::sqrt(static_cast<double>(std::max(n1, n2))) *
                       (op_norm(y) * (op_norm(z1) + op_norm(z2)) + coupling_norm);

  const SchurForm form = schur(model.Z);
  const HSProjection p_inner = hs_projection(form, Region::annulus(cfg.r, cfg.r_prime));
  const HSProjection p_outer = hs_projection(form, Region::annulus(cfg.s_prime, cfg.s));
  out.inner_rank = p_inner.rank;
  out.outer_rank = p_outer.rank;
  if (p_inner.rank != n1 || p_outer.rank != n2) {
    throw_numerical("experiments.rank", "Haagerup-Schultz ranks do not match the block sizes");
  }
  out.cos_subspace = angle_cos(p_inner, p_outer);
  return out;
}

}  // namespace

AngleReport run_lemma62(const AngleExperimentConfig& cfg) {
  validate(cfg);
  AngleReport rep;
  rep.config = cfg;
  const Lemma62Bound bound = lemma62_bound(cfg.r, cfg.s, cfg.c, cfg.t);
  rep.bound_eq61 = bound.strong;
  rep.bound_uniform = bound.uniform;
  rep.ynorm_sq_bound_eq66 = cfg.c * cfg.c * cfg.t * (1.0 - cfg.t) / (cfg.s * cfg.s - cfg.r * cfg.r);

  const RadialMeasure inner = interior_atoms(cfg.r, cfg.r_prime, cfg.atoms_per_annulus);
  const RadialMeasure outer = interior_atoms(cfg.s_prime, cfg.s, cfg.atoms_per_annulus);
  rep.trials = map_trials(cfg.trials, [&](int i) { return run_trial(cfg, inner, outer, i); });

  std::vector<double> ynorm, cos_vec, cos_sub, trunc, sim, ratio;
  rep.similarity_pass = true;
  rep.vector_pass = true;
  for (const auto& t : rep.trials) {
    ynorm.push_back(t.ynorm_sq);
    cos_vec.push_back(t.cos_vector);
    cos_sub.push_back(t.cos_subspace);
    trunc.push_back(t.truncation_residual);
    sim.push_back(t.similarity_residual);
    ratio.push_back(t.ratio);
    rep.K_used = std::max(rep.K_used, t.K);
    rep.similarity_pass = rep.similarity_pass && t.similarity_residual <= t.truncation_residual + t.rounding_floor;
    rep.vector_pass = rep.vector_pass && t.cos_vector <= t.cos_subspace + 1e-8;
  }
  rep.ynorm_sq_est = mean(ynorm);
  rep.cos_vector_est = mean(cos_vec);
  rep.cos_subspace_est = mean(cos_sub);
  rep.truncation_residual = max_value(trunc);
  rep.similarity_residual = max_value(sim);
  rep.ratio = max_value(ratio);
  rep.cos_pass = rep.cos_subspace_est >= 0.9 * rep.bound_eq61;
  rep.ynorm_pass = rep.ynorm_sq_est >= 0.9 * rep.ynorm_sq_bound_eq66;
  rep.pass = rep.cos_pass && rep.ynorm_pass && rep.similarity_pass && rep.vector_pass;
  return rep;
}

nlohmann::json to_json(const AngleExperimentConfig& c) {
  return {{"r", c.r},
          {"r_prime", c.r_prime},
          {"s_prime", c.s_prime},
          {"s", c.s},
          {"t", c.t},
          {"c", c.c},
          {"N", c.n},
          {"K", c.K},
          {"trials", c.trials},
          {"seed", c.seed},
          {"atoms_per_annulus", c.atoms_per_annulus},
          {"truncation_cap", c.truncation_cap},
          {"ratio_slack", c.ratio_slack},
          {"adaptive_k", c.adaptive_k},
          {"k_limit", c.k_limit}};
}

AngleExperimentConfig angle_config_from_json(const nlohmann::json& j) {
  detail::require_keys(j,
                       {"r", "r_prime", "s_prime", "s", "t", "c", "N", "K", "trials", "seed", "atoms_per_annulus",
                        "truncation_cap", "ratio_slack", "adaptive_k", "k_limit"},
                       "angle");
  AngleExperimentConfig c;
  detail::read(j, "r", c.r);
  detail::read(j, "r_prime", c.r_prime);
  detail::read(j, "s_prime", c.s_prime);
  detail::read(j, "s", c.s);
  detail::read(j, "t", c.t);
  detail::read(j, "c", c.c);
  detail::read(j, "N", c.n);
  detail::read(j, "K", c.K);
  detail::read(j, "trials", c.trials);
  detail::read(j, "seed", c.seed);
  detail::read(j, "atoms_per_annulus", c.atoms_per_annulus);
  detail::read(j, "truncation_cap", c.truncation_cap);
  detail::read(j, "ratio_slack", c.ratio_slack);
  detail::read(j, "adaptive_k", c.adaptive_k);
  detail::read(j, "k_limit", c.k_limit);
  validate(c);
  return c;
}

nlohmann::json to_json(const AngleReport& r) {
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : r.trials) {
    trials.push_back({{"index", t.index},
                      {"seed", t.seed},
                      {"K", t.K},
                      {"z_norm", t.z_norm},
                      {"ynorm_sq", t.ynorm_sq},
                      {"cos_vector", t.cos_vector},
                      {"cos_subspace", t.cos_subspace},
                      {"ratio", t.ratio},
                      {"truncation_residual", t.truncation_residual},
                      {"similarity_residual", t.similarity_residual},
                      {"rounding_floor", t.rounding_floor},
                      {"inner_rank", t.inner_rank},
                      {"outer_rank", t.outer_rank}});
  }
  return {{"config", to_json(r.config)},
          {"bound_eq61", r.bound_eq61},
          {"bound_uniform", r.bound_uniform},
          {"ynorm_sq_bound_eq66", r.ynorm_sq_bound_eq66},
          {"ynorm_sq_est", r.ynorm_sq_est},
          {"cos_vector_est", r.cos_vector_est},
          {"cos_subspace_est", r.cos_subspace_est},
          {"truncation_residual", r.truncation_residual},
          {"similarity_residual", r.similarity_residual},
          {"ratio", r.ratio},
          {"K_used", r.K_used},
          {"checks",
           {{"cos_subspace_ge_0.9_bound", r.cos_pass},
            {"ynorm_sq_ge_0.9_bound", r.ynorm_pass},
            {"similarity_le_truncation", r.similarity_pass},
            {"cos_vector_le_cos_subspace", r.vector_pass}}},
          {"pass", r.pass},
          {"trials", trials}};
}

Table trial_table(const AngleReport& r) {
  Table t;
  t.header = {"index",        "seed",           "K",     "z_norm", "ynorm_sq", "cos_vector", "cos_subspace",
              "ratio",        "truncation_residual", "similarity_residual", "rounding_floor"};
  for (const auto& x : r.trials) {
    t.add_row({std::to_string(x.index), std::to_string(x.seed), std::to_string(x.K), format_number(x.z_norm),
               format_number(x.ynorm_sq), format_number(x.cos_vector), format_number(x.cos_subspace),
               format_number(x.ratio), format_number(x.truncation_residual), format_number(x.similarity_residual),
               format_number(x.rounding_floor)});
  }
  return t;
}

}  // namespace dtlab
