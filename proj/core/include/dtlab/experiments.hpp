#pragma once

// Experiment drivers: the angle construction for two-annulus DT models and
// its bound, the trace and norm inequalities behind it, restriction of DT
// models to Haagerup-Schultz subspaces, concentration families, and the
// matrix-model consistency batteries.
//
// Every driver is deterministic in its config (seed included).  Trials run in
// index order and are aggregated with order-insensitive statistics.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dtlab/brown_hs.hpp"
#include "dtlab/cumulant_engine.hpp"
#include "dtlab/matrix_lab.hpp"
#include "dtlab/region.hpp"
#include "dtlab/trials.hpp"

namespace dtlab {

// ---------------------------------------------------------------------------
// Angle bound for two annuli

struct Lemma62Bound {
  double strong;   ///< (1 + (s^2 - r^2) / (c^2 max(t, 1 - t)))^(-1/2)
  double uniform;  ///< (1 + 2 (s^2 - r^2) / c^2)^(-1/2)
};

Lemma62Bound lemma62_bound(double r, double s, double c, double t);

struct AngleExperimentConfig {
  double r = 1.0;
  double r_prime = 1.05;
  double s_prime = 1.9;
  double s = 2.0;
  double t = 0.5;
  double c = 1.0;
  Index n = 256;
  int K = 40;
  int trials = 20;
  std::uint64_t seed = 0;
  int atoms_per_annulus = 1;       ///< equally spaced circles strictly inside each annulus
  double truncation_cap = 1e-6;    ///< abort when truncation_residual > cap * ||Z||
  double ratio_slack = 1.05;       ///< (||Z1^K|| ||Z2^-K||)^(1/K) must stay below slack * r'/s'
  bool adaptive_k = true;          ///< double K (up to k_limit) until both conditions hold
  int k_limit = 2560;
};

struct AngleTrial {
  int index = 0;
  std::uint64_t seed = 0;
  int K = 0;
  double z_norm = 0.0;
  double ynorm_sq = 0.0;
  double cos_vector = 0.0;
  double cos_subspace = 0.0;
  double ratio = 0.0;
  double truncation_residual = 0.0;
  double similarity_residual = 0.0;
  double rounding_floor = 0.0;  ///< forward error bound of evaluating Y Z2 - Z1 Y - C in doubles
  Index inner_rank = 0;
  Index outer_rank = 0;
};

struct AngleReport {
  AngleExperimentConfig config;
  double bound_eq61 = 0.0;
  double bound_uniform = 0.0;
  double ynorm_sq_bound_eq66 = 0.0;
  double ynorm_sq_est = 0.0;
  double cos_vector_est = 0.0;
  double cos_subspace_est = 0.0;
  double truncation_residual = 0.0;  ///< worst over trials
  double similarity_residual = 0.0;  ///< worst over trials
  double ratio = 0.0;                ///< worst over trials
  int K_used = 0;                    ///< largest K used by any trial
  std::vector<AngleTrial> trials;
  bool cos_pass = false;         ///< cos_subspace_est >= 0.9 bound_eq61
  bool ynorm_pass = false;       ///< ynorm_sq_est >= 0.9 ynorm_sq_bound_eq66
  bool similarity_pass = false;  ///< every similarity residual <= truncation residual + rounding floor
  bool vector_pass = false;      ///< every cos_vector <= cos_subspace + 1e-8
  bool pass = false;
};

void validate(const AngleExperimentConfig& config);
AngleReport run_lemma62(const AngleExperimentConfig& config);

// ---------------------------------------------------------------------------
// Trace and norm inequalities

struct Cor55Row {
  int k = 0;
  double forward = 0.0;      ///< tau((Z^k)^* Z^k)
  double forward_ref = 0.0;  ///< r^(2k)
  double inverse = 0.0;      ///< tau((Z^-k)^* Z^-k)
  double inverse_ref = 0.0;  ///< s^(-2k)
  bool pass = false;
};

struct Cor55Report {
  double r = 0.0;
  double s = 0.0;
  double slack = 0.05;
  int trials = 1;
  std::vector<Cor55Row> rows;
  double equality_error = 0.0;  ///< max relative deviation |value - ref| / ref
  bool pass = false;
};

Cor55Report cor55_check(const MatrixModel& model, double r, double s, int k_max, double slack = 0.05);

struct Cor55Config {
  std::vector<RadialMeasure::Atom> atoms{{1.0, 0.5}, {2.0, 0.5}};
  double c = 1.0;
  Index n = 256;
  int k_max = 5;
  int trials = 40;
  std::uint64_t seed = 0;
  double slack = 0.05;
};

/// Averages the traces over seeded DT models, then applies the check with
/// r, s the extreme radii of the measure.
Cor55Report cor55_battery(const Cor55Config& config);

struct Lemma54Config {
  BElem f = BElem::one();  ///< b = diag(f(i/N)), i = 1..N
  double c = 1.0;
  Index n = 256;
  int n_max = 3;
  int trials = 10;
  std::uint64_t seed = 0;
  double slack = 0.05;
};

struct Lemma54Row {
  int n = 0;
  double forward_margin = 0.0;  ///< min_i (avg diag((Z^n)^* Z^n)_i - |b_i^n|^2) / |b_i^n|^2
  double inverse_margin = 0.0;  ///< same for Z^-n against |b_i^-n|^2
  bool pass = false;
};

struct Lemma54Report {
  Lemma54Config config;
  std::vector<Lemma54Row> rows;
  bool pass = false;
};

Lemma54Report lemma54_check(const Lemma54Config& config);

struct Lemma53Config {
  CoeffWord word = CoeffWord(EpsWord::parse("*1"), {BElem::identity(), BElem::one()});
  Index n = 256;
  int trials = 10;
  std::uint64_t seed = 0;
  double slack = 0.05;
};

struct Lemma53Report {
  Lemma53Config config;
  std::vector<double> coeff_norms;  ///< ||T^e1 b1 ... T^en bn|| per trial
  std::vector<double> plain_norms;  ///< ||T^e1 ... T^en|| per trial
  double sup_product = 0.0;         ///< prod_j sup |b_j|
  double lhs = 0.0;                 ///< median coefficient-word norm
  double rhs = 0.0;                 ///< sup_product * median plain norm * (1 + slack)
  bool pass = false;
};

Lemma53Report lemma53_norm_check(const Lemma53Config& config);

// ---------------------------------------------------------------------------
// Restriction to Haagerup-Schultz subspaces

struct Lemma61Report {
  Index rank_b = 0;
  Index rank_c_inner = 0;
  Index rank_cc_inner = 0;
  double cos_compressed = 0.0;  ///< angle inside ran P(Z, B)
  double cos_full = 0.0;        ///< angle in the whole space
  double slack = 1e-6;
  bool pass = false;
};

/// Throws experiments.empty_projection when one of the projections is zero.
Lemma61Report lemma61_check(const CMatrix& z, const Region& b, const Region& c, double slack = 1e-6);

struct RestrictionConfig {
  std::vector<RadialMeasure::Atom> atoms{{1.0, 0.5}, {2.0, 0.5}};
  double c = 1.0;
  Region region = Region::disc(1.5);
  Index n = 512;
  int trials = 40;
  std::uint64_t seed = 0;
  int max_length = 4;
  double tolerance = 0.07;
};

struct RestrictionRow {
  std::string word;
  Complex compressed;
  Complex direct;
  double error = 0.0;  ///< |compressed - direct|
  double scale = 0.0;  ///< max(|compressed|, |direct|, tau(Z^* Z)^(n/2))
  bool pass = false;
};

struct RestrictionReport {
  RestrictionConfig config;
  double mass = 0.0;  ///< mu(B)
  Index rank = 0;
  std::vector<RestrictionRow> rows;
  bool pass = false;
};

RestrictionReport restriction_dt_check(const RestrictionConfig& config);

// ---------------------------------------------------------------------------
// Concentration families

struct ConcentrationFamilyConfig {
  double a = 1.0;    ///< circles of radius a + 1/n
  double b = 1.5;    ///< weights proportional to n^-b
  int n_max = 64;
  double c = 1.0;
  int max_rungs = 16;  ///< N_param = 1, 2, 4, ... 2^(max_rungs - 1)
  double target = 0.8;
  int example65_atoms = 1000;
  double example65_exponent = 0.5;  ///< density x^(-exponent) on (0, 1]
  std::uint64_t seed = 0;
};

struct LadderRung {
  double n_param = 0.0;
  double eps = 0.0;
  double r = 0.0;
  double r_prime = 0.0;
  double s_prime = 0.0;
  double s = 0.0;
  double mass = 0.0;  ///< mu(B)
  double t = 0.0;     ///< renormalized mass of the inner annulus
  int atoms = 0;
  double bound_strong = 0.0;
  double bound_uniform = 0.0;
  double final_estimate = 0.0;  ///< (1 + 8 ||Z|| / (c^2 N_param))^(-1/2)
  bool meets_final_estimate = false;
};

struct Example65Report {
  int atoms = 0;
  double exponent = 0.0;
  std::vector<double> deltas;  ///< decreasing
  std::vector<double> ratios;  ///< mu(window \ {x0}) / delta
  bool nondecreasing = false;
  double growth = 0.0;  ///< last / first ratio
  bool pass = false;
};

struct ConcentrationReport {
  ConcentrationFamilyConfig config;
  std::vector<RadialMeasure::Atom> atoms;
  double x0 = 0.0;
  double z_norm_est = 0.0;
  double peak_ratio = 0.0;  ///< max over atom distances of mu(window) / delta
  std::vector<LadderRung> rungs;
  std::optional<double> first_infeasible;  ///< smallest N_param with no admissible eps
  double best_admissible_bound = 0.0;
  bool nondecreasing = false;
  bool final_exceeds_target = false;
  bool rungs_meet_estimate = false;
  Example65Report example65;
  bool pass = false;
};

/// Atoms of radius a + 1/n with weights proportional to n^-b, n = 1..n_max.
std::vector<RadialMeasure::Atom> concentration_family(double a, double b, int n_max);

/// Hypothesis check for the quantile discretization of the density
/// x^(-exponent) on (0, 1] at x0 = 0.
Example65Report example65_check(int atoms, double exponent);

ConcentrationReport thm63_family(const ConcentrationFamilyConfig& config);

// ---------------------------------------------------------------------------
// Matrix-model consistency

/// tau_N of every word over {1 -> Z, * -> Z^*} of length 1..max_length
/// (max_length <= 4), keyed by the word string.
std::map<std::string, Complex> word_moments(const CMatrix& z, int max_length);

struct EngineConsistencyConfig {
  Index n = 512;
  int trials = 40;
  std::uint64_t seed = 0;
  int max_length = 4;
  double tolerance = 0.05;
};

struct MomentRow {
  std::string label;
  double exact = 0.0;
  double estimate = 0.0;
  double rel_error = 0.0;
  bool pass = false;
};

struct EngineConsistencyReport {
  EngineConsistencyConfig config;
  std::vector<MomentRow> rows;
  bool pass = false;
};

/// Monte-Carlo tau_N of the strictly upper-triangular model against the exact
/// engine value for every balanced word up to max_length.
EngineConsistencyReport engine_consistency(const EngineConsistencyConfig& config);

struct SemicircleConfig {
  Index n = 512;
  int trials = 40;
  std::uint64_t seed = 0;
  int k_max = 4;
  double tolerance = 0.05;
};

struct SemicircleReport {
  SemicircleConfig config;
  std::vector<MomentRow> rows;  ///< labels "gue:2k" and "mix:2k"
  bool pass = false;
};

/// Even moments of a GUE sample and of the two-block semicircular mixture
/// against the Catalan numbers.
SemicircleReport semicircle_check(const SemicircleConfig& config);

// ---------------------------------------------------------------------------
// Haagerup-Schultz battery on random matrices with separated spectra

struct HSBatteryConfig {
  Index n = 20;
  int matrices = 200;
  std::uint64_t seed = 0;
  double nonnormality = 0.5;  ///< scale of the strictly upper part before the unitary conjugation
};

struct HSRecord {
  int index = 0;
  std::string b1;
  std::string b2;
  std::string lemma61_b;
  std::string lemma61_c;
  Index expected_rank = 0;
  double trace_error = 0.0;           ///< |Tr P(Z, B1) - #eigenvalues in B1|
  double invariance_residual = 0.0;   ///< ||(1 - P) Z P|| / ||Z||
  LatticeReport lattice;
  SimilarityReport similarity;
  Lemma61Report lemma61;
  bool pass = false;
};

struct HSBatteryReport {
  HSBatteryConfig config;
  std::vector<HSRecord> records;
  int trace_failures = 0;
  int invariance_failures = 0;
  int lattice_failures = 0;
  int similarity_failures = 0;
  int lemma61_failures = 0;
  bool pass = false;
};

/// Random n x n matrix Q (diag(lambda) + s U) Q^* with |lambda| kept away
/// from the candidate region radii; returns the matrix and its eigenvalues.
std::pair<CMatrix, std::vector<Complex>> random_separated_matrix(Index n, double nonnormality, std::uint64_t seed);

HSBatteryReport hs_battery(const HSBatteryConfig& config);

// ---------------------------------------------------------------------------
// JSON / CSV

nlohmann::json to_json(const AngleExperimentConfig& config);
AngleExperimentConfig angle_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AngleReport& report);
Table trial_table(const AngleReport& report);

nlohmann::json to_json(const Cor55Config& config);
Cor55Config cor55_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Cor55Report& report);

nlohmann::json to_json(const Lemma54Config& config);
Lemma54Config lemma54_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Lemma54Report& report);

nlohmann::json to_json(const Lemma53Config& config);
Lemma53Config lemma53_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Lemma53Report& report);

nlohmann::json to_json(const Lemma61Report& report);

nlohmann::json to_json(const RestrictionConfig& config);
RestrictionConfig restriction_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RestrictionReport& report);

nlohmann::json to_json(const ConcentrationFamilyConfig& config);
ConcentrationFamilyConfig concentration_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ConcentrationReport& report);
Table rung_table(const ConcentrationReport& report);

nlohmann::json to_json(const EngineConsistencyConfig& config);
EngineConsistencyConfig engine_consistency_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EngineConsistencyReport& report);

nlohmann::json to_json(const SemicircleConfig& config);
SemicircleConfig semicircle_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SemicircleReport& report);

nlohmann::json to_json(const HSBatteryConfig& config);
HSBatteryConfig hs_battery_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const HSBatteryReport& report);
Table record_table(const HSBatteryReport& report);

Table moment_table(const std::vector<MomentRow>& rows);

}  // namespace dtlab
