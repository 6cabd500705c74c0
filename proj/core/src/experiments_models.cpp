#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <Eigen/QR>
#include <nlohmann/json.hpp>

#include "dtlab/error.hpp"
#include "dtlab/experiments.hpp"
#include "dtlab/linalg.hpp"
#include "json_util.hpp"

namespace dtlab {

std::map<std::string, Complex> word_moments(const CMatrix& z, int max_length) {
  if (max_length < 1 || max_length > 4) throw_config("experiments.domain", "word length must be in 1..4");
  const CMatrix z_star = z.adjoint();
  auto letter = [&](char ch) -> const CMatrix& { return ch == '1' ? z : z_star; };
  std::map<std::string, CMatrix> pairs;
  if (max_length >= 3) {
    for (const char* w : {"**", "*1", "1*", "11"}) pairs[w] = letter(w[0]) * letter(w[1]);
  }

  std::map<std::string, Complex> out;
  std::vector<std::string> words{""};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<std::string> next;
    for (const auto& w : words) {
      next.push_back(w + '*');
      next.push_back(w + '1');
    }
    words = std::move(next);
    for (const auto& w : words) {
      Complex value;
      switch (len) {
        case 1:
          value = normalized_trace(letter(w[0]));
          break;
        case 2:
          value = trace_product(letter(w[0]), letter(w[1]));
          break;
        case 3:
          value = trace_product(pairs.at(w.substr(0, 2)), letter(w[2]));
          break;
        default:
          value = trace_product(pairs.at(w.substr(0, 2)), pairs.at(w.substr(2, 2)));
      }
      out[w] = value;
    }
  }
  return out;
}

EngineConsistencyReport engine_consistency(const EngineConsistencyConfig& cfg) {
  if (cfg.trials < 1 || cfg.n < 2) throw_config("experiments.domain", "need trials >= 1 and N >= 2");
  const auto per_trial = map_trials(cfg.trials, [&](int i) {
    return word_moments(sample_ut(cfg.n, trial_seed(cfg.seed, TrialStream::word_moments, i)), cfg.max_length);
  });
  EngineConsistencyReport rep;
  rep.config = cfg;
  rep.pass = true;
  MomentEngine engine;
  for (int len = 2; len <= cfg.max_length; len += 2) {
    for (const EpsWord& word : balanced_words(static_cast<std::size_t>(len))) {
      MomentRow row;
      row.label = word.to_string();
      row.exact = engine.scalar_moment(CoeffWord::units(word)).get_d();
      std::vector<double> values;
      for (const auto& m : per_trial) values.push_back(m.at(row.label).real());
      row.estimate = mean(values);
      row.rel_error = std::abs(row.estimate - row.exact) / std::abs(row.exact);
      row.pass = row.rel_error <= cfg.tolerance;
      rep.pass = rep.pass && row.pass;
      rep.rows.push_back(row);
    }
  }
  return rep;
}

namespace {

double catalan(int k) {
  double c = 1.0;
  for (int i = 0; i < k; ++i) c = c * 2.0 * (2 * i + 1) / (i + 2);
  return c;
}

std::vector<double> even_moments(const CMatrix& x, int k_max) {
  std::vector<double> out;
  CMatrix power = CMatrix::Identity(x.rows(), x.cols());
  for (int k = 1; k <= k_max; ++k) {
    power = power * x;
    out.push_back(trace_product(power, power).real());
  }
  return out;
}

}  // namespace

SemicircleReport semicircle_check(const SemicircleConfig& cfg) {
  if (cfg.trials < 1 || cfg.n < 2 || cfg.k_max < 1) throw_config("experiments.domain", "need trials, N, k_max >= 1");
  const Index half = cfg.n / 2;
  std::vector<CMatrix> projections(2, CMatrix::Zero(cfg.n, cfg.n));
  projections[0].diagonal().head(half).setOnes();
  projections[1].diagonal().tail(cfg.n - half).setOnes();

  const auto per_trial = map_trials(cfg.trials, [&](int i) {
    const std::uint64_t seed = trial_seed(cfg.seed, TrialStream::semicircle, i);
    const CMatrix gue = sample_gue(cfg.n, derive_seed(seed, 1, 0));
    const CMatrix mix =
        semicircular_mix(sample_gue(cfg.n, derive_seed(seed, 2, 0)), sample_gue(cfg.n, derive_seed(seed, 3, 0)),
                         projections);
    return std::pair{even_moments(gue, cfg.k_max), even_moments(mix, cfg.k_max)};
  });

  SemicircleReport rep;
  rep.config = cfg;
  rep.pass = true;
  for (int which = 0; which < 2; ++which) {
    for (int k = 1; k <= cfg.k_max; ++k) {
      MomentRow row;
      row.label = std::string(which == 0 ? "gue:" : "mix:") + std::to_string(2 * k);
      row.exact = catalan(k);
      std::vector<double> values;
      for (const auto& [g, m] : per_trial) values.push_back((which == 0 ? g : m)[static_cast<std::size_t>(k - 1)]);
      row.estimate = mean(values);
      row.rel_error = std::abs(row.estimate - row.exact) / row.exact;
      row.pass = row.rel_error <= cfg.tolerance;
      rep.pass = rep.pass && row.pass;
      rep.rows.push_back(row);
    }
  }
  return rep;
}

namespace {

// Region radii for the battery; eigenvalue moduli stay 0.05 away from them.
constexpr std::array<double, 6> kBatteryRadii{0.0, 0.6, 1.2, 1.8, 2.4, std::numeric_limits<double>::infinity()};

CMatrix random_unitary(Index n, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
  CMatrix g(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) g(i, j) = Complex(normal(gen), normal(gen));
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  return qr.householderQ() * CMatrix::Identity(n, n);
}

std::vector<Region> battery_annuli() {
  std::vector<Region> out;
  for (std::size_t i = 0; i < kBatteryRadii.size(); ++i) {
    for (std::size_t j = i + 1; j < kBatteryRadii.size(); ++j) {
      if (i == 0 && j + 1 == kBatteryRadii.size()) continue;  // the whole plane
      out.push_back(Region::annulus(kBatteryRadii[i], kBatteryRadii[j]));
    }
  }
  return out;
}

Index count_inside(const std::vector<Complex>& points, const Region& region) {
  return static_cast<Index>(std::count_if(points.begin(), points.end(), [&](Complex p) { return region.contains(p); }));
}

}  // namespace

std::pair<CMatrix, std::vector<Complex>> random_separated_matrix(Index n, double nonnormality, std::uint64_t seed) {
  if (n < 2) throw_config("experiments.domain", "matrix size must be at least 2");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> radius(0.1, 3.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<Complex> lambdas;
  while (static_cast<Index>(lambdas.size()) < n) {
    const double rho = radius(gen);
    const bool near = std::any_of(kBatteryRadii.begin(), kBatteryRadii.end(),
                                  [&](double b) { return std::abs(rho - b) < 0.05; });
    if (!near) lambdas.push_back(std::polar(rho, phase(gen)));
  }
  CMatrix core = nonnormality * sample_ut(n, derive_seed(seed, 1, 0));
  for (Index i = 0; i < n; ++i) core(i, i) = lambdas[static_cast<std::size_t>(i)];
  const CMatrix q = random_unitary(n, gen);
  return {q * core * q.adjoint(), lambdas};
}

HSBatteryReport hs_battery(const HSBatteryConfig& cfg) {
  if (cfg.matrices < 1) throw_config("experiments.domain", "matrices must be positive");
  const std::vector<Region> annuli = battery_annuli();
  HSBatteryReport rep;
  rep.config = cfg;
  rep.records = map_trials(cfg.matrices, [&](int i) {
    const std::uint64_t seed = trial_seed(cfg.seed, TrialStream::hs_battery, i);
    const auto [z, lambdas] = random_separated_matrix(cfg.n, cfg.nonnormality, seed);
    std::mt19937_64 gen(derive_seed(seed, 2, 0));
    std::uniform_int_distribution<std::size_t> pick(0, annuli.size() - 1);

    HSRecord rec;
    rec.index = i;
    const Region b1 = annuli[pick(gen)];
    const Region b2 = annuli[pick(gen)];
    rec.b1 = b1.to_string();
    rec.b2 = b2.to_string();
    rec.expected_rank = count_inside(lambdas, b1);

    const HSProjection p1 = hs_projection(z, b1);
    rec.trace_error = std::abs(p1.P.trace().real() - static_cast<double>(rec.expected_rank));
    rec.invariance_residual = invariance_residual(z, p1) / op_norm(z);
    rec.lattice = check_lattice(z, b1, b2);

    std::uniform_real_distribution<double> sigma(0.5, 2.0);
    Eigen::VectorXd sv(cfg.n);
    for (Index k = 0; k < cfg.n; ++k) sv(k) = sigma(gen);
    const CMatrix a = random_unitary(cfg.n, gen) * sv.cast<Complex>().asDiagonal() * random_unitary(cfg.n, gen);
    rec.similarity = check_similarity(z, a, b1);

    // First (B, C) in a seeded order where C splits the eigenvalues in B.
    std::vector<std::size_t> order(annuli.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), gen);
    bool found = false;
    for (std::size_t bi : order) {
      for (std::size_t ci : order) {
        const Region& b = annuli[bi];
        const Region& c = annuli[ci];
        if (count_inside(lambdas, b & c) > 0 && count_inside(lambdas, b & ~c) > 0) {
          rec.lemma61_b = b.to_string();
          rec.lemma61_c = c.to_string();
          rec.lemma61 = lemma61_check(z, b, c);
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) throw_numerical("experiments.hs_battery", "no region pair splits the spectrum");

    rec.pass = rec.trace_error < 1e-8 && rec.invariance_residual < 1e-8 && rec.lattice.pass &&
               rec.similarity.pass && rec.lemma61.pass;
    return rec;
  });
  for (const auto& rec : rep.records) {
    rep.trace_failures += rec.trace_error >= 1e-8;
    rep.invariance_failures += rec.invariance_residual >= 1e-8;
    rep.lattice_failures += !rec.lattice.pass;
    rep.similarity_failures += !rec.similarity.pass;
    rep.lemma61_failures += !rec.lemma61.pass;
  }
  rep.pass = rep.trace_failures + rep.invariance_failures + rep.lattice_failures + rep.similarity_failures +
                 rep.lemma61_failures ==
             0;
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json rows_json(const std::vector<MomentRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"label", r.label},
                   {"exact", r.exact},
                   {"estimate", r.estimate},
                   {"rel_error", r.rel_error},
                   {"pass", r.pass}});
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const EngineConsistencyConfig& c) {
  return {{"N", c.n}, {"trials", c.trials}, {"seed", c.seed}, {"max_length", c.max_length}, {"tolerance", c.tolerance}};
}

EngineConsistencyConfig engine_consistency_config_from_json(const nlohmann::json& j) {
  detail::require_keys(j, {"N", "trials", "seed", "max_length", "tolerance"}, "engine");
  EngineConsistencyConfig c;
  detail::read(j, "N", c.n);
  detail::read(j, "trials", c.trials);
  detail::read(j, "seed", c.seed);
  detail::read(j, "max_length", c.max_length);
  detail::read(j, "tolerance", c.tolerance);
  return c;
}

nlohmann::json to_json(const EngineConsistencyReport& r) {
  return {{"config", to_json(r.config)}, {"rows", rows_json(r.rows)}, {"pass", r.pass}};
}

nlohmann::json to_json(const SemicircleConfig& c) {
  return {{"N", c.n}, {"trials", c.trials}, {"seed", c.seed}, {"k_max", c.k_max}, {"tolerance", c.tolerance}};
}

SemicircleConfig semicircle_config_from_json(const nlohmann::json& j) {
  detail::require_keys(j, {"N", "trials", "seed", "k_max", "tolerance"}, "semicircle");
  SemicircleConfig c;
  detail::read(j, "N", c.n);
  detail::read(j, "trials", c.trials);
  detail::read(j, "seed", c.seed);
  detail::read(j, "k_max", c.k_max);
  detail::read(j, "tolerance", c.tolerance);
  return c;
}

nlohmann::json to_json(const SemicircleReport& r) {
  return {{"config", to_json(r.config)}, {"rows", rows_json(r.rows)}, {"pass", r.pass}};
}

nlohmann::json to_json(const HSBatteryConfig& c) {
  return {{"N", c.n}, {"matrices", c.matrices}, {"seed", c.seed}, {"nonnormality", c.nonnormality}};
}

HSBatteryConfig hs_battery_config_from_json(const nlohmann::json& j) {
  detail::require_keys(j, {"N", "matrices", "seed", "nonnormality"}, "hs");
  HSBatteryConfig c;
  detail::read(j, "N", c.n);
  detail::read(j, "matrices", c.matrices);
  detail::read(j, "seed", c.seed);
  detail::read(j, "nonnormality", c.nonnormality);
  return c;
}

nlohmann::json to_json(const HSBatteryReport& r) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& rec : r.records) {
    records.push_back({{"index", rec.index},
                       {"b1", rec.b1},
                       {"b2", rec.b2},
                       {"expected_rank", rec.expected_rank},
                       {"trace_error", rec.trace_error},
                       {"invariance_residual", rec.invariance_residual},
                       {"lattice", to_json(rec.lattice)},
                       {"similarity", to_json(rec.similarity)},
                       {"lemma61_b", rec.lemma61_b},
                       {"lemma61_c", rec.lemma61_c},
                       {"lemma61", to_json(rec.lemma61)},
                       {"pass", rec.pass}});
  }
  return {{"config", to_json(r.config)},
          {"failures",
           {{"trace", r.trace_failures},
            {"invariance", r.invariance_failures},
            {"lattice", r.lattice_failures},
            {"similarity", r.similarity_failures},
            {"lemma61", r.lemma61_failures}}},
          {"pass", r.pass},
          {"records", records}};
}

Table record_table(const HSBatteryReport& r) {
  Table t;
  t.header = {"index",          "b1",
              "b2",             "expected_rank",
              "trace_error",    "invariance_residual",
              "union_distance", "intersection_distance",
              "similarity_eig", "similarity_subspace",
              "cos_compressed", "cos_full",
              "pass"};
  for (const auto& x : r.records) {
    t.add_row({std::to_string(x.index), x.b1, x.b2, std::to_string(x.expected_rank), format_number(x.trace_error),
               format_number(x.invariance_residual), format_number(x.lattice.union_distance),
               format_number(x.lattice.intersection_distance), format_number(x.similarity.eigenvalue_distance),
               format_number(x.similarity.subspace_distance), format_number(x.lemma61.cos_compressed),
               format_number(x.lemma61.cos_full), x.pass ? "true" : "false"});
  }
  return t;
}

Table moment_table(const std::vector<MomentRow>& rows) {
  Table t;
  t.header = {"label", "exact", "estimate", "rel_error", "pass"};
  for (const auto& r : rows) {
    t.add_row({r.label, format_number(r.exact), format_number(r.estimate), format_number(r.rel_error),
               r.pass ? "true" : "false"});
  }
  return t;
}

}  // namespace dtlab
