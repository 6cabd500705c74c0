#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "dtlab/error.hpp"
#include "dtlab/experiments.hpp"
#include "dtlab/linalg.hpp"
#include "json_util.hpp"

namespace dtlab {

namespace {

struct TracePowers {
  std::vector<double> forward;  // tau((Z^k)^* Z^k), k = 0..k_max
  std::vector<double> inverse;  // tau((Z^-k)^* Z^-k)
};

TracePowers trace_powers(const CMatrix& z, int k_max) {
  const double n = static_cast<double>(z.rows());
  const CMatrix z_inv = inverse(z);
  TracePowers out;
  CMatrix p = CMatrix::Identity(z.rows(), z.cols());
  CMatrix pi = p;
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) {
      p = p * z;
      pi = pi * z_inv;
    }
    out.forward.push_back(p.squaredNorm() / n);
    out.inverse.push_back(pi.squaredNorm() / n);
  }
  return out;
}

Cor55Report cor55_from_traces(const TracePowers& tp, double r, double s, double slack) {
  Cor55Report rep;
  rep.r = r;
  rep.s = s;
  rep.slack = slack;
  rep.pass = true;
  for (std::size_t k = 0; k < tp.forward.size(); ++k) {
    Cor55Row row;
    row.k = static_cast<int>(k);
    row.forward = tp.forward[k];
    row.inverse = tp.inverse[k];
    row.forward_ref = std::pow(r, 2.0 * row.k);
    row.inverse_ref = std::pow(s, -2.0 * row.k);
    row.pass = row.forward - row.forward_ref >= -slack * row.forward_ref &&
               row.inverse - row.inverse_ref >= -slack * row.inverse_ref;
    rep.equality_error = std::max({rep.equality_error, std::abs(row.forward - row.forward_ref) / row.forward_ref,
                                   std::abs(row.inverse - row.inverse_ref) / row.inverse_ref});
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

void check_cor55_args(double r, double s, int k_max) {
  if (!(r > 0.0) || !(s >= r)) throw_config("experiments.domain", "need 0 < r <= s");
  if (k_max < 0) throw_config("experiments.domain", "k_max must be nonnegative");
}

}  // namespace

Cor55Report cor55_check(const MatrixModel& model, double r, double s, int k_max, double slack) {
  check_cor55_args(r, s, k_max);
  return cor55_from_traces(trace_powers(model.Z, k_max), r, s, slack);
}

Cor55Report cor55_battery(const Cor55Config& cfg) {
  const RadialMeasure mu(cfg.atoms);
  check_cor55_args(mu.min_radius(), mu.max_radius(), cfg.k_max);
  if (cfg.trials < 1) throw_config("experiments.domain", "trials must be positive");
  const auto per_trial = map_trials(cfg.trials, [&](int i) {
    return trace_powers(build_dt(mu, cfg.c, cfg.n, trial_seed(cfg.seed, TrialStream::cor55, i)).Z, cfg.k_max);
  });
  TracePowers avg;
  for (int k = 0; k <= cfg.k_max; ++k) {
    std::vector<double> f, v;
    for (const auto& tp : per_trial) {
      f.push_back(tp.forward[static_cast<std::size_t>(k)]);
      v.push_back(tp.inverse[static_cast<std::size_t>(k)]);
    }
    avg.forward.push_back(mean(f));
    avg.inverse.push_back(mean(v));
  }
  Cor55Report rep = cor55_from_traces(avg, mu.min_radius(), mu.max_radius(), cfg.slack);
  rep.trials = cfg.trials;
  return rep;
}

Lemma54Report lemma54_check(const Lemma54Config& cfg) {
  if (cfg.n < 1 || cfg.trials < 1 || cfg.n_max < 0) throw_config("experiments.domain", "need N, trials >= 1");
  const Index n = cfg.n;
  CVector b(n);
  for (Index i = 0; i < n; ++i) b(i) = cfg.f.evaluate(static_cast<double>(i + 1) / static_cast<double>(n));
  if (b.cwiseAbs().minCoeff() < 1e-12) throw_config("experiments.domain", "b must be bounded away from 0");

  // Per trial: column norms of Z^m and Z^-m, i.e. diag((Z^m)^* Z^m).
  using Diagonals = std::vector<Eigen::VectorXd>;
  const auto per_trial = map_trials(cfg.trials, [&](int i) {
    const CMatrix t = sample_ut(n, trial_seed(cfg.seed, TrialStream::lemma54, i));
    const CMatrix z = CMatrix(b.asDiagonal()) + cfg.c * t;
    const CMatrix z_inv = inverse(z);
    std::pair<Diagonals, Diagonals> out;
    CMatrix p = CMatrix::Identity(n, n);
    CMatrix pi = p;
    for (int m = 0; m <= cfg.n_max; ++m) {
      if (m > 0) {
        p = p * z;
        pi = pi * z_inv;
      }
      out.first.push_back(p.colwise().squaredNorm().transpose());
      out.second.push_back(pi.colwise().squaredNorm().transpose());
    }
    return out;
  });

  Lemma54Report rep;
  rep.config = cfg;
  rep.pass = true;
  for (int m = 0; m <= cfg.n_max; ++m) {
    Lemma54Row row;
    row.n = m;
    row.forward_margin = std::numeric_limits<double>::infinity();
    row.inverse_margin = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i) {
      std::vector<double> f, v;
      for (const auto& tr : per_trial) {
        f.push_back(tr.first[static_cast<std::size_t>(m)](i));
        v.push_back(tr.second[static_cast<std::size_t>(m)](i));
      }
      const double ref = std::pow(std::abs(b(i)), 2.0 * m);
      const double ref_inv = std::pow(std::abs(b(i)), -2.0 * m);
      if (!std::isnormal(ref) || !std::isnormal(ref_inv)) {
        throw_numerical("experiments.resolution", "|b^n|^2 leaves the double range; lower n_max");
      }
      row.forward_margin = std::min(row.forward_margin, (mean(f) - ref) / ref);
      row.inverse_margin = std::min(row.inverse_margin, (mean(v) - ref_inv) / ref_inv);
    }
    row.pass = row.forward_margin >= -cfg.slack && row.inverse_margin >= -cfg.slack;
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

Lemma53Report lemma53_norm_check(const Lemma53Config& cfg) {
  if (cfg.n < 1 || cfg.trials < 1) throw_config("experiments.domain", "need N, trials >= 1");
  const Index n = cfg.n;
  const auto& word = cfg.word.word();
  const auto& coeffs = cfg.word.coeffs();

  Lemma53Report rep;
  rep.config = cfg;
  rep.sup_product = 1.0;
  std::vector<CVector> diagonals;
  for (const auto& f : coeffs) {
    CVector d(n);
    for (Index i = 0; i < n; ++i) d(i) = f.evaluate(static_cast<double>(i + 1) / static_cast<double>(n));
    const double sup = std::max(grid_sup_abs(f, kDefaultSupGrid).get_d(), d.cwiseAbs().maxCoeff());
    rep.sup_product *= sup;
    diagonals.push_back(std::move(d));
  }

  const auto norms = map_trials(cfg.trials, [&](int i) {
    const CMatrix t = sample_ut(n, trial_seed(cfg.seed, TrialStream::lemma53, i));
    const CMatrix t_star = t.adjoint();
    CMatrix with = CMatrix::Identity(n, n);
    CMatrix plain = with;
    for (std::size_t j = 0; j < word.size(); ++j) {
      const CMatrix& letter = word[j] == Letter::one ? t : t_star;
      plain = plain * letter;
      with = (with * letter) * diagonals[j].asDiagonal();
    }
    return std::pair{op_norm(with), op_norm(plain)};
  });
  for (const auto& [w, p] : norms) {
    rep.coeff_norms.push_back(w);
    rep.plain_norms.push_back(p);
  }
  rep.lhs = median(rep.coeff_norms);
  rep.rhs = rep.sup_product * median(rep.plain_norms) * (1.0 + cfg.slack);
  rep.pass = rep.lhs <= rep.rhs;
  return rep;
}

Lemma61Report lemma61_check(const CMatrix& z, const Region& b, const Region& c, double slack) {
  const SchurForm form = schur(z);
  const HSProjection q = hs_projection(form, b);
  if (q.rank == 0) throw_config("experiments.empty_projection", "P(Z, B) is zero");
  const CMatrix zq = q.basis.adjoint() * z * q.basis;
  const SchurForm inner_form = schur(zq);
  const HSProjection pc_inner = hs_projection(inner_form, c);
  const HSProjection pcc_inner = hs_projection(inner_form, ~c);
  const HSProjection pc = hs_projection(form, c);
  const HSProjection pcc = hs_projection(form, ~c);
  if (pc_inner.rank == 0 || pcc_inner.rank == 0) {
    throw_config("experiments.empty_projection", "C splits no eigenvalues of the compression");
  }
  Lemma61Report rep;
  rep.rank_b = q.rank;
  rep.rank_c_inner = pc_inner.rank;
  rep.rank_cc_inner = pcc_inner.rank;
  rep.cos_compressed = angle_cos(pc_inner, pcc_inner);
  rep.cos_full = angle_cos(pc, pcc);
  rep.slack = slack;
  rep.pass = rep.cos_compressed <= rep.cos_full + slack;
  return rep;
}

RestrictionReport restriction_dt_check(const RestrictionConfig& cfg) {
  if (cfg.trials < 1) throw_config("experiments.domain", "trials must be positive");
  if (cfg.max_length < 1 || cfg.max_length > 4) throw_config("experiments.domain", "max_length must be in 1..4");
  const RadialMeasure mu(cfg.atoms);
  std::vector<RadialMeasure::Atom> inside;
  double mass = 0.0;
  for (const auto& a : mu.atoms()) {
    const Complex point(a.radius, 0.0);
    if (cfg.region.boundary_distance(point) < kBoundaryTolerance) {
      throw_numerical("brown_hs.boundary_ambiguity", "an atom lies on the boundary of the region");
    }
    if (cfg.region.contains(point)) {
      inside.push_back(a);
      mass += a.weight;
    }
  }
  if (inside.empty()) throw_config("experiments.domain", "mu(B) must be positive");
  const RadialMeasure restricted = RadialMeasure::normalized(inside);
  const double c_restricted = cfg.c * std::sqrt(mass);

  using Moments = std::map<std::string, Complex>;
  const auto per_trial = map_trials(cfg.trials, [&](int i) {
    const std::uint64_t seed = trial_seed(cfg.seed, TrialStream::restriction, i);
    const MatrixModel model = build_dt(mu, cfg.c, cfg.n, seed);
    const HSProjection q = hs_projection(model.Z, cfg.region);
    const CMatrix zq = q.basis.adjoint() * model.Z * q.basis;
    const MatrixModel direct =
        build_dt(restricted, c_restricted, q.rank, trial_seed(cfg.seed, TrialStream::restriction_direct, i));
    return std::tuple<Index, Moments, Moments>{q.rank, word_moments(zq, cfg.max_length),
                                               word_moments(direct.Z, cfg.max_length)};
  });

  RestrictionReport rep;
  rep.config = cfg;
  rep.mass = mass;
  rep.rank = std::get<0>(per_trial.front());
  auto average = [&](int which, const std::string& word) {
    std::vector<double> re, im;
    for (const auto& tr : per_trial) {
      const Moments& m = which == 0 ? std::get<1>(tr) : std::get<2>(tr);
      re.push_back(m.at(word).real());
      im.push_back(m.at(word).imag());
    }
    return Complex(mean(re), mean(im));
  };
  const double second = average(1, "*1").real();
  rep.pass = true;
  for (const auto& [word, unused] : std::get<1>(per_trial.front())) {
    RestrictionRow row;
    row.word = word;
    row.compressed = average(0, word);
    row.direct = average(1, word);
    row.error = std::abs(row.compressed - row.direct);
    row.scale = std::max({std::abs(row.compressed), std::abs(row.direct),
                          std::pow(second, static_cast<double>(word.size()) / 2.0)});
    row.pass = row.error <= cfg.tolerance * row.scale;
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const Cor55Config& c) {
  return {{"measure", detail::atoms_json(c.atoms)}, {"c", c.c},         {"N", c.n},         {"k_max", c.k_max},
          {"trials", c.trials},                     {"seed", c.seed}, {"slack", c.slack}};
}

Cor55Config cor55_config_from_json(const nlohmann::json& j) {
  detail::require_keys(j, {"measure", "c", "N", "k_max", "trials", "seed", "slack"}, "cor55");
  Cor55Config c;
  if (j.contains("measure")) c.atoms = detail::atoms_from_json(j.at("measure"));
  detail::read(j, "c", c.c);
  detail::read(j, "N", c.n);
  detail::read(j, "k_max", c.k_max);
  detail::read(j, "trials", c.trials);
  detail::read(j, "seed", c.seed);
  detail::read(j, "slack", c.slack);
  return c;
}

nlohmann::json to_json(const Cor55Report& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"k", row.k},
                    {"forward", row.forward},
                    {"forward_ref", row.forward_ref},
                    {"forward_margin", row.forward - row.forward_ref},
                    {"inverse", row.inverse},
                    {"inverse_ref", row.inverse_ref},
                    {"inverse_margin", row.inverse - row.inverse_ref},
                    {"pass", row.pass}});
  }
  return {{"r", r.r},
          {"s", r.s},
          {"slack", r.slack},
          {"trials", r.trials},
          {"equality_error", r.equality_error},
          {"rows", rows},
          {"pass", r.pass}};
}

nlohmann::json to_json(const Lemma54Config& c) {
  return {{"f", to_json(c.f)}, {"c", c.c},           {"N", c.n},        {"n_max", c.n_max},
          {"trials", c.trials}, {"seed", c.seed}, {"slack", c.slack}};
}

Lemma54Config lemma54_config_from_json(const nlohmann::json& j) {
  detail::require_keys(j, {"f", "c", "N", "n_max", "trials", "seed", "slack"}, "lemma54");
  Lemma54Config c;
  if (j.contains("f")) c.f = belem_from_json(j.at("f"));
  detail::read(j, "c", c.c);
  detail::read(j, "N", c.n);
  detail::read(j, "n_max", c.n_max);
  detail::read(j, "trials", c.trials);
  detail::read(j, "seed", c.seed);
  detail::read(j, "slack", c.slack);
  return c;
}

nlohmann::json to_json(const Lemma54Report& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"n", row.n},
                    {"forward_margin", row.forward_margin},
                    {"inverse_margin", row.inverse_margin},
                    {"pass", row.pass}});
  }
  return {{"config", to_json(r.config)}, {"rows", rows}, {"pass", r.pass}};
}

nlohmann::json to_json(const Lemma53Config& c) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& f : c.word.coeffs()) coeffs.push_back(to_json(f));
  return {{"word", c.word.word().to_string()}, {"coeffs", coeffs}, {"N", c.n},
          {"trials", c.trials},                {"seed", c.seed},   {"slack", c.slack}};
}

Lemma53Config lemma53_config_from_json(const nlohmann::json& j) {
  detail::require_keys(j, {"word", "coeffs", "N", "trials", "seed", "slack"}, "lemma53");
  Lemma53Config c;
  if (j.contains("word")) {
    const EpsWord word = EpsWord::parse(j.at("word").get<std::string>());
    std::vector<BElem> coeffs;
    if (j.contains("coeffs")) {
      for (const auto& f : j.at("coeffs")) coeffs.push_back(belem_from_json(f));
      c.word = CoeffWord(word, std::move(coeffs));
    } else {
      c.word = CoeffWord::units(word);
    }
  } else if (j.contains("coeffs")) {
    throw_config("experiments.config", "coeffs given without a word");
  }
  detail::read(j, "N", c.n);
  detail::read(j, "trials", c.trials);
  detail::read(j, "seed", c.seed);
  detail::read(j, "slack", c.slack);
  return c;
}

nlohmann::json to_json(const Lemma53Report& r) {
  return {{"config", to_json(r.config)},   {"coeff_norms", r.coeff_norms}, {"plain_norms", r.plain_norms},
          {"sup_product", r.sup_product}, {"lhs", r.lhs},                 {"rhs", r.rhs},
          {"pass", r.pass}};
}

nlohmann::json to_json(const Lemma61Report& r) {
  return {{"rank_b", r.rank_b},
          {"rank_c_inner", r.rank_c_inner},
          {"rank_cc_inner", r.rank_cc_inner},
          {"cos_compressed", r.cos_compressed},
          {"cos_full", r.cos_full},
          {"slack", r.slack},
          {"pass", r.pass}};
}

nlohmann::json to_json(const RestrictionConfig& c) {
  return {{"measure", detail::atoms_json(c.atoms)},
          {"c", c.c},
          {"region", to_json(c.region)},
          {"N", c.n},
          {"trials", c.trials},
          {"seed", c.seed},
          {"max_length", c.max_length},
          {"tolerance", c.tolerance}};
}

RestrictionConfig restriction_config_from_json(const nlohmann::json& j) {
  detail::require_keys(j, {"measure", "c", "region", "N", "trials", "seed", "max_length", "tolerance"},
                       "restriction");
  RestrictionConfig c;
  if (j.contains("measure")) c.atoms = detail::atoms_from_json(j.at("measure"));
  if (j.contains("region")) c.region = region_from_json(j.at("region"));
  detail::read(j, "c", c.c);
  detail::read(j, "N", c.n);
  detail::read(j, "trials", c.trials);
  detail::read(j, "seed", c.seed);
  detail::read(j, "max_length", c.max_length);
  detail::read(j, "tolerance", c.tolerance);
  return c;
}

nlohmann::json to_json(const RestrictionReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"word", row.word},
                    {"compressed", detail::complex_json(row.compressed)},
                    {"direct", detail::complex_json(row.direct)},
                    {"error", row.error},
                    {"scale", row.scale},
                    {"pass", row.pass}});
  }
  return {{"config", to_json(r.config)}, {"mass", r.mass}, {"rank", r.rank}, {"rows", rows}, {"pass", r.pass}};
}

}  // namespace dtlab
