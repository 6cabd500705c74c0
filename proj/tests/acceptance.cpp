// Acceptance gate: runs the eleven acceptance criteria in order and prints
// one PASS/FAIL line for each.
//
//   dtlab_acceptance [--only N]... [--expect-fail N]... [--workdir DIR]
//
// Exit status is 0 when the set of failing criteria equals the expected set.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "dtlab/cumulant_engine.hpp"
#include "dtlab/experiments.hpp"
#include "dtlab/pairing_oracle.hpp"

namespace fs = std::filesystem;
using namespace dtlab;
using nlohmann::json;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double time_limit_s;  // 0 for none
  std::function<Verdict()> run;
};

std::string fmt(double x) { return format_number(x); }

Rational scalar(const EpsWord& w) { return scalar_moment(CoeffWord::units(w)); }

Verdict c1_exact_values() {
  const std::pair<const char*, Rational> cases[] = {{"*1", Rational(1, 2)}, {"**11", Rational(1, 6)},
                                                    {"*1*1", Rational(2, 3)}};
  Verdict v{true, ""};
  for (const auto& [text, expected] : cases) {
    const EpsWord w = EpsWord::parse(text);
    const Rational engine = scalar(w);
    const Rational oracle = pairing_oracle(w);
    v.pass = v.pass && engine == expected && oracle == expected;
    v.detail += std::string(text) + "=" + rational_to_string(engine) + "/" + rational_to_string(oracle) + " ";
  }
  return v;
}

Verdict c2_engine_oracle() {
  int words = 0, mismatches = 0;
  for (std::size_t len = 0; len <= 8; len += 2) {
    for (const auto& w : balanced_words(len)) {
      ++words;
      if (scalar(w) != pairing_oracle(w)) ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(words) + " balanced words, " + std::to_string(mismatches) + " mismatches"};
}

Verdict c3_positivity() {
  int words = 0, failures = 0;
  for (std::size_t len = 0; len <= 8; len += 2) {
    for (const auto& w : balanced_words(len)) {
      ++words;
      if (!check_positivity(w, 101)) ++failures;
    }
  }
  return {failures == 0, std::to_string(words) + " words on a 101-point grid, " + std::to_string(failures) + " failures"};
}

Verdict c4_coeff_bound() {
  std::mt19937_64 rng(20260417);
  std::uniform_int_distribution<int> length(1, 6), letter(0, 1), degree(0, 3), num(-12, 12), den(1, 9);
  int failures = 0, balanced = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Letter> letters(static_cast<std::size_t>(length(rng)));
    for (auto& l : letters) l = letter(rng) ? Letter::one : Letter::star;
    const EpsWord word(std::move(letters));
    if (is_balanced(word)) ++balanced;
    std::vector<BElem> coeffs;
    for (std::size_t j = 0; j < word.size(); ++j) {
      std::vector<Rational> c;
      const int d = degree(rng);
      for (int k = 0; k <= d; ++k) c.emplace_back(num(rng), den(rng));
      coeffs.emplace_back(std::move(c));
    }
    if (!check_coeff_bound(CoeffWord(word, std::move(coeffs)))) ++failures;
  }
  return {failures == 0, "500 words (" + std::to_string(balanced) + " balanced), " + std::to_string(failures) + " failures"};
}

std::string worst_row(const std::vector<MomentRow>& rows) {
  const MomentRow* worst = &rows.front();
  for (const auto& r : rows)
    if (r.rel_error > worst->rel_error) worst = &r;
  return "worst " + worst->label + " rel_error " + fmt(worst->rel_error);
}

Verdict c5_engine_consistency() {
  const auto rep = engine_consistency(EngineConsistencyConfig{});
  return {rep.pass, std::to_string(rep.rows.size()) + " words at N=512 over 40 seeds, " + worst_row(rep.rows)};
}

Verdict c6_semicircle() {
  const auto rep = semicircle_check(SemicircleConfig{});
  return {rep.pass, "GUE and two-block mixture, k<=4, " + worst_row(rep.rows)};
}

Verdict c7_hs_battery() {
  const auto rep = hs_battery(HSBatteryConfig{});
  std::ostringstream os;
  os << rep.records.size() << " matrices, failures: trace " << rep.trace_failures << ", invariance "
     << rep.invariance_failures << ", lattice " << rep.lattice_failures << ", similarity "
     << rep.similarity_failures << ", lemma61 " << rep.lemma61_failures;
  return {rep.pass, os.str()};
}

Verdict c8_trace_inequalities() {
  const Cor55Report cor = cor55_battery(Cor55Config{});
  const Lemma54Report l54 = lemma54_check(Lemma54Config{});

  // Equality cases at c = 0: a single circle for the trace powers, and the
  // diagonal model for the column norms.
  const MatrixModel diag = build_dt(RadialMeasure::circle(1.5), 0.0, 256, 0);
  const Cor55Report eq = cor55_check(diag, 1.5, 1.5, 5, 1e-12);
  Lemma54Config l54_zero;
  l54_zero.c = 0.0;
  l54_zero.f = BElem(std::vector<Rational>{1, 1});
  const Lemma54Report l54_eq = lemma54_check(l54_zero);
  double l54_eq_error = 0.0;
  for (const auto& r : l54_eq.rows) {
    l54_eq_error = std::max({l54_eq_error, std::abs(r.forward_margin), std::abs(r.inverse_margin)});
  }

  double cor_margin = INFINITY;
  for (const auto& r : cor.rows) {
    cor_margin = std::min({cor_margin, (r.forward - r.forward_ref) / r.forward_ref,
                           (r.inverse - r.inverse_ref) / r.inverse_ref});
  }
  const bool pass = cor.pass && l54.pass && eq.equality_error <= 1e-10 && l54_eq_error <= 1e-10;
  return {pass, "min relative margin " + fmt(cor_margin) + " (slack -0.05), lemma54 " +
                    (l54.pass ? "ok" : "fails") + ", c=0 equality errors " + fmt(eq.equality_error) + " / " +
                    fmt(l54_eq_error)};
}

Verdict c9_lemma62() {
  const AngleReport rep = run_lemma62(AngleExperimentConfig{});
  const bool bound_ok = std::abs(rep.bound_eq61 - 1.0 / std::sqrt(7.0)) < 1e-12;
  double floor = 0.0;
  for (const auto& t : rep.trials) floor = std::max(floor, t.rounding_floor);
  std::ostringstream os;
  os << "bound " << fmt(rep.bound_eq61) << ", cos_subspace " << fmt(rep.cos_subspace_est) << " (need >= "
     << fmt(0.9 * rep.bound_eq61) << "), ynorm_sq " << fmt(rep.ynorm_sq_est) << " (need >= "
     << fmt(0.9 * rep.ynorm_sq_bound_eq66) << "), worst similarity residual " << fmt(rep.similarity_residual)
     << " vs truncation " << fmt(rep.truncation_residual) << " + rounding floor " << fmt(floor) << ", K used "
     << rep.K_used;
  return {bound_ok && rep.cos_pass && rep.ynorm_pass && rep.similarity_pass, os.str()};
}

Verdict c10_ladder() {
  const ConcentrationReport rep = thm63_family(ConcentrationFamilyConfig{});
  std::ostringstream os;
  os << rep.rungs.size() << " feasible rung(s), final bound "
     << (rep.rungs.empty() ? std::string("none") : fmt(rep.rungs.back().bound_strong)) << " (target "
     << fmt(rep.config.target) << "), best admissible " << fmt(rep.best_admissible_bound) << ", nondecreasing "
     << rep.nondecreasing << ", meets final estimate " << rep.rungs_meet_estimate;
  if (rep.first_infeasible) os << ", first infeasible N_param " << fmt(*rep.first_infeasible);
  return {rep.pass, os.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

Verdict c11_determinism(const fs::path& workdir) {
  fs::remove_all(workdir);
  fs::create_directories(workdir);
  {
    std::ofstream(workdir / "angle.json") << R"({"lemma62":{"N":32,"trials":2},"cor55":{"N":32,"trials":2},)"
                                          << R"("lemma61":{"N":32},"restriction":{"N":32,"trials":2,"max_length":2}})";
    std::ofstream(workdir / "engine.json") << R"({"mode":"engine","N":32,"trials":2,"max_length":2})";
  }
  const std::vector<std::pair<std::string, std::vector<std::string>>> runs{
      {"moment", {"moment", "*1*1", "--coeffs", R"([["0","1"],["1"],["1"],["1/2"]])"}},
      {"oracle", {"oracle", "**1*11"}},
      {"simulate", {"simulate", "--n", "24", "--trials", "3", "--seed", "7"}},
      {"engine", {"simulate", "--config", (workdir / "engine.json").string()}},
      {"hs", {"hs", "--trials", "10", "--seed", "3", "--format", "csv"}},
      {"angle", {"angle", "--config", (workdir / "angle.json").string(), "--seed", "11"}},
      {"concentration", {"concentration"}},
  };
  int failures = 0;
  std::string detail;
  for (const auto& [name, base] : runs) {
    std::ostringstream sink, err;
    bool ok = true;
    std::string manifests[2];
    for (int round = 0; round < 2; ++round) {
      const fs::path out = workdir / (name + "_" + std::to_string(round) + ".out");
      auto args = base;
      args.push_back("--out");
      args.push_back(out.string());
      const int code = cli::run(args, sink, err);
      ok = ok && (code == cli::kPass || code == cli::kCriterionFailure);
      ok = ok && cli::run({"replay", out.string() + ".manifest.json", "--verify"}, sink, err) == cli::kPass;
      manifests[round] = slurp(out.string() + ".manifest.json");
    }
    // Same manifest up to timestamp and output paths, same report bytes.
    json m0 = json::parse(manifests[0]), m1 = json::parse(manifests[1]);
    for (auto* m : {&m0, &m1}) {
      m->erase("timestamp");
      m->erase("outputs");
    }
    ok = ok && m0 == m1;
    ok = ok && slurp(workdir / (name + "_0.out")) == slurp(workdir / (name + "_1.out"));
    if (!ok) {
      ++failures;
      detail += name + " ";
    }
  }
  return {failures == 0, std::to_string(runs.size()) + " commands replayed from manifests" +
                             (failures ? ", mismatched: " + detail : std::string(", all byte-identical"))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dtlab acceptance gate"};
  std::vector<int> only, expect_fail;
  std::string workdir = (fs::temp_directory_path() / "dtlab_acceptance").string();
  app.add_option("--only", only, "Run only these criteria");
  app.add_option("--expect-fail", expect_fail, "Criteria known to fail; exit 0 iff exactly these fail");
  app.add_option("--workdir", workdir, "Scratch directory for the determinism criterion");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "exact engine values", 1.0, c1_exact_values},
      {2, "engine/oracle equivalence, balanced words up to length 8", 30.0, c2_engine_oracle},
      {3, "positivity of plain moments", 0.0, c3_positivity},
      {4, "coefficient bound on random coefficient words", 0.0, c4_coeff_bound},
      {5, "matrix-vs-engine consistency", 300.0, c5_engine_consistency},
      {6, "semicircular moments", 0.0, c6_semicircle},
      {7, "Haagerup-Schultz laws at matrix scale", 60.0, c7_hs_battery},
      {8, "trace power inequalities and their equality cases", 0.0, c8_trace_inequalities},
      {9, "angle construction replication", 600.0, c9_lemma62},
      {10, "concentration ladder", 60.0, c10_ladder},
      {11, "manifest replay determinism", 0.0, [&] { return c11_determinism(workdir); }},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("aborted: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0.0 && seconds > c.time_limit_s) {
      v.pass = false;
      v.detail += "; runtime over " + fmt(c.time_limit_s) + " s";
    }
    if (!v.pass) failed.insert(c.id);
    std::ostringstream secs;
    secs.precision(2);
    secs << std::fixed << seconds;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " [" << secs.str()
              << " s] " << v.detail << std::endl;
  }

  std::set<int> expected(expect_fail.begin(), expect_fail.end());
  if (!only.empty()) {
    std::set<int> selected(only.begin(), only.end()), kept;
    for (int id : expected)
      if (selected.count(id)) kept.insert(id);
    expected = kept;
  }
  std::cout << "failed: " << failed.size() << " (expected " << expected.size() << ")" << std::endl;
  if (failed != expected) {
    for (int id : failed)
      if (!expected.count(id)) std::cout << "unexpected failure: criterion " << id << std::endl;
    for (int id : expected)
      if (!failed.count(id)) std::cout << "expected failure now passes: criterion " << id << std::endl;
    return 1;
  }
  return 0;
}
