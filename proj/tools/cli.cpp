#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dtlab/brown_hs.hpp"
#include "dtlab/cumulant_engine.hpp"
#include "dtlab/error.hpp"
#include "dtlab/experiments.hpp"
#include "dtlab/linalg.hpp"
#include "dtlab/matrix_io.hpp"
#include "dtlab/pairing_oracle.hpp"

namespace dtlab::cli {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Small configs that only exist at the command level

struct SimulateDtConfig {
  std::vector<RadialMeasure::Atom> atoms{{1.0, 0.5}, {2.0, 0.5}};
  double c = 1.0;
  Index n = 64;
  int trials = 4;
  std::uint64_t seed = 0;
  int max_length = 2;
  std::string matrix_out;  // optional DTLM file for the trial-0 matrix
};

struct Lemma61Config {
  std::vector<RadialMeasure::Atom> atoms{{0.5, 0.25}, {1.0, 0.25}, {2.0, 0.5}};
  double c = 1.0;
  Index n = 64;
  std::uint64_t seed = 0;
  Region b = Region::disc(1.5);
  Region region_c = Region::disc(0.75);
};

void require_keys(const json& j, std::initializer_list<std::string_view> allowed, const std::string& what) {
  if (!j.is_object()) throw_config("cli.config", what + " config must be a JSON object");
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw_config("cli.config", "unknown key '" + item.key() + "' in " + what + " config");
    }
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

json atoms_json(const std::vector<RadialMeasure::Atom>& atoms) { return dtlab::to_json(RadialMeasure(atoms)); }

std::vector<RadialMeasure::Atom> atoms_from(const json& j) { return radial_measure_from_json(j).atoms(); }

SimulateDtConfig simulate_dt_from_json(const json& j) {
  require_keys(j, {"mode", "measure", "c", "N", "trials", "seed", "max_length", "matrix_out"}, "simulate");
  SimulateDtConfig c;
  if (j.contains("measure")) c.atoms = atoms_from(j.at("measure"));
  read(j, "c", c.c);
  read(j, "N", c.n);
  read(j, "trials", c.trials);
  read(j, "seed", c.seed);
  read(j, "max_length", c.max_length);
  read(j, "matrix_out", c.matrix_out);
  if (c.trials < 1) throw_config("cli.config", "trials must be positive");
  return c;
}

json to_json(const SimulateDtConfig& c) {
  json j = {{"mode", "dt"},       {"measure", atoms_json(c.atoms)}, {"c", c.c},
            {"N", c.n},           {"trials", c.trials},             {"seed", c.seed},
            {"max_length", c.max_length}};
  if (!c.matrix_out.empty()) j["matrix_out"] = c.matrix_out;
  return j;
}

Lemma61Config lemma61_from_json(const json& j) {
  require_keys(j, {"measure", "c", "N", "seed", "b", "region_c"}, "lemma61");
  Lemma61Config c;
  if (j.contains("measure")) c.atoms = atoms_from(j.at("measure"));
  read(j, "c", c.c);
  read(j, "N", c.n);
  read(j, "seed", c.seed);
  if (j.contains("b")) c.b = region_from_json(j.at("b"));
  if (j.contains("region_c")) c.region_c = region_from_json(j.at("region_c"));
  return c;
}

json to_json(const Lemma61Config& c) {
  return {{"measure", atoms_json(c.atoms)}, {"c", c.c},       {"N", c.n},
          {"seed", c.seed},                 {"b", dtlab::to_json(c.b)}, {"region_c", dtlab::to_json(c.region_c)}};
}

/// Copies the override keys a section understands; `rename` maps an
/// override key onto the section's own key.
void apply_overrides(json& section, const json& overrides, std::initializer_list<std::string_view> keys,
                     const std::map<std::string, std::string>& rename = {}) {
  for (const auto& item : overrides.items()) {
    const auto it = rename.find(item.key());
    const std::string target = it == rename.end() ? item.key() : it->second;
    if (std::find(keys.begin(), keys.end(), target) != keys.end()) section[target] = item.value();
  }
}

void reject_overrides(const json& overrides, const std::string& what) {
  if (!overrides.empty()) {
    throw_config("cli.flags", "--" + overrides.items().begin().key() + " does not apply to " + what);
  }
}

EpsWord parse_word(const json& config) {
  if (!config.contains("word") || !config.at("word").is_string()) throw_config("cli.config", "missing word");
  return EpsWord::parse(config.at("word").get<std::string>());
}

CoeffWord coeff_word(const json& config) {
  const EpsWord word = parse_word(config);
  if (!config.contains("coeffs") || config.at("coeffs").is_null()) return CoeffWord::units(word);
  std::vector<BElem> coeffs;
  for (const auto& f : config.at("coeffs")) coeffs.push_back(belem_from_json(f));
  return CoeffWord(word, std::move(coeffs));
}

const std::vector<std::string> kAngleSections{"lemma62", "cor55", "lemma54", "lemma53", "lemma61", "restriction"};

// ---------------------------------------------------------------------------
// Commands

CommandResult cmd_moment(const json& config) {
  const CoeffWord cw = coeff_word(config);
  MomentEngine engine;
  const BElem m = engine.moment(cw);
  CommandResult r;
  r.report = moment_report(cw, m);
  Table t;
  t.header = {"word", "moment", "trace"};
  t.add_row({cw.word().to_string(), m.to_string(), rational_to_string(trace(m))});
  r.table = std::move(t);
  return r;
}

CommandResult cmd_oracle(const json& config) {
  const EpsWord word = parse_word(config);
  const auto pairings = admissible_pairings(word);
  const Rational oracle = pairing_oracle(word);
  const Rational engine = scalar_moment(CoeffWord::units(word));
  CommandResult r;
  r.pass = oracle == engine;
  r.report = {{"word", word.to_string()},
              {"pairings", pairings.size()},
              {"oracle", rational_to_string(oracle)},
              {"engine", rational_to_string(engine)},
              {"pass", r.pass}};
  Table t;
  t.header = {"word", "pairings", "oracle", "engine", "pass"};
  t.add_row({word.to_string(), std::to_string(pairings.size()), rational_to_string(oracle),
             rational_to_string(engine), r.pass ? "true" : "false"});
  r.table = std::move(t);
  return r;
}

CommandResult cmd_simulate(const json& config) {
  const std::string mode = config.value("mode", "dt");
  CommandResult r;
  if (mode == "engine") {
    json section = config;
    section.erase("mode");
    const auto rep = engine_consistency(engine_consistency_config_from_json(section));
    r.report = to_json(rep);
    r.report["mode"] = mode;
    r.table = moment_table(rep.rows);
    r.pass = rep.pass;
    return r;
  }
  if (mode == "semicircle") {
    json section = config;
    section.erase("mode");
    const auto rep = semicircle_check(semicircle_config_from_json(section));
    r.report = to_json(rep);
    r.report["mode"] = mode;
    r.table = moment_table(rep.rows);
    r.pass = rep.pass;
    return r;
  }
  if (mode != "dt") throw_config("cli.config", "simulate mode must be dt, engine or semicircle");

  const SimulateDtConfig cfg = simulate_dt_from_json(config);
  const RadialMeasure mu(cfg.atoms);
  using Moments = std::map<std::string, Complex>;
  struct TrialOut {
    std::uint64_t seed;
    Moments moments;
    double spectral_radius;
    double norm;
  };
  const auto trials = map_trials(cfg.trials, [&](int i) {
    const std::uint64_t seed = trial_seed(cfg.seed, TrialStream::simulate, i);
    const MatrixModel m = build_dt(mu, cfg.c, cfg.n, seed);
    if (i == 0 && !cfg.matrix_out.empty()) save_binary(cfg.matrix_out, m.Z);
    double radius = 0.0;
    for (Complex z : brown_empirical(m.Z)) radius = std::max(radius, std::abs(z));
    return TrialOut{seed, word_moments(m.Z, cfg.max_length), radius, op_norm(m.Z)};
  });

  json moments = json::object();
  for (const auto& [word, unused] : trials.front().moments) {
    std::vector<double> re, im;
    for (const auto& t : trials) {
      re.push_back(t.moments.at(word).real());
      im.push_back(t.moments.at(word).imag());
    }
    moments[word] = {mean(re), mean(im)};
  }
  Table t;
  t.header = {"index", "seed", "tau_zstar_z", "spectral_radius", "norm"};
  json per_trial = json::array();
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const auto& x = trials[i];
    const double second = x.moments.count("*1") ? x.moments.at("*1").real() : 0.0;
    per_trial.push_back(
        {{"index", i}, {"seed", x.seed}, {"tau_zstar_z", second}, {"spectral_radius", x.spectral_radius}, {"norm", x.norm}});
    t.add_row({std::to_string(i), std::to_string(x.seed), format_number(second), format_number(x.spectral_radius),
               format_number(x.norm)});
  }
  r.report = {{"mode", "dt"}, {"config", to_json(cfg)}, {"moments", moments}, {"trials", per_trial}, {"pass", true}};
  r.table = std::move(t);
  return r;
}

CommandResult cmd_hs(const json& config) {
  const std::string mode = config.value("mode", "battery");
  CommandResult r;
  if (mode == "battery") {
    json section = config;
    section.erase("mode");
    const auto rep = hs_battery(hs_battery_config_from_json(section));
    r.report = to_json(rep);
    r.report["mode"] = mode;
    r.table = record_table(rep);
    r.pass = rep.pass;
    return r;
  }
  if (mode != "matrix") throw_config("cli.config", "hs mode must be battery or matrix");
  require_keys(config, {"mode", "matrix", "matrix_file", "regions"}, "hs");
  CMatrix z;
  if (config.contains("matrix")) {
    z = matrix_from_json(config.at("matrix"));
  } else if (config.contains("matrix_file")) {
    z = load_binary(config.at("matrix_file").get<std::string>());
  } else {
    throw_config("cli.config", "hs matrix mode needs matrix or matrix_file");
  }
  if (!config.contains("regions") || !config.at("regions").is_array() || config.at("regions").empty()) {
    throw_config("cli.config", "hs matrix mode needs a nonempty regions array");
  }
  std::vector<Region> regions;
  for (const auto& item : config.at("regions")) regions.push_back(region_from_json(item));

  const SchurForm form = schur(z);
  const auto points = brown_empirical(z);
  json projections = json::array();
  Table t;
  t.header = {"region", "rank", "brown_mass", "trace", "invariance_residual"};
  for (const auto& region : regions) {
    const HSProjection p = hs_projection(form, region);
    const double tr = p.P.trace().real();
    const double residual = invariance_residual(z, p);
    projections.push_back({{"region", dtlab::to_json(region)},
                           {"rank", p.rank},
                           {"brown_mass", brown_mass(points, region)},
                           {"trace", tr},
                           {"invariance_residual", residual}});
    t.add_row({region.to_string(), std::to_string(p.rank), format_number(brown_mass(points, region)),
               format_number(tr), format_number(residual)});
  }
  r.report = {{"mode", mode}, {"dim", z.rows()}, {"projections", projections}};
  if (regions.size() >= 2) {
    const LatticeReport lattice = check_lattice(z, regions[0], regions[1]);
    r.report["lattice"] = to_json(lattice);
    r.pass = lattice.pass;
  }
  r.report["pass"] = r.pass;
  r.table = std::move(t);
  return r;
}

CommandResult cmd_angle(const json& config) {
  CommandResult r;
  r.report = json::object();
  for (const auto& section : kAngleSections) {
    if (!config.contains(section)) continue;
    const json& s = config.at(section);
    json out;
    bool pass = true;
    if (section == "lemma62") {
      const auto rep = run_lemma62(angle_config_from_json(s));
      out = to_json(rep);
      pass = rep.pass;
      r.table = trial_table(rep);
    } else if (section == "cor55") {
      const auto rep = cor55_battery(cor55_config_from_json(s));
      out = to_json(rep);
      pass = rep.pass;
    } else if (section == "lemma54") {
      const auto rep = lemma54_check(lemma54_config_from_json(s));
      out = to_json(rep);
      pass = rep.pass;
    } else if (section == "lemma53") {
      const auto rep = lemma53_norm_check(lemma53_config_from_json(s));
      out = to_json(rep);
      pass = rep.pass;
    } else if (section == "lemma61") {
      const Lemma61Config cfg = lemma61_from_json(s);
      const MatrixModel m = build_dt(RadialMeasure(cfg.atoms), cfg.c, cfg.n, cfg.seed);
      const auto rep = lemma61_check(m.Z, cfg.b, cfg.region_c);
      out = to_json(rep);
      pass = rep.pass;
    } else {
      const auto rep = restriction_dt_check(restriction_config_from_json(s));
      out = to_json(rep);
      pass = rep.pass;
    }
    r.report[section] = out;
    r.pass = r.pass && pass;
  }
  r.report["pass"] = r.pass;
  return r;
}

CommandResult cmd_concentration(const json& config) {
  const auto rep = thm63_family(concentration_config_from_json(config));
  CommandResult r;
  r.report = to_json(rep);
  r.table = rung_table(rep);
  r.pass = rep.pass;
  return r;
}

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw_config("cli.io", "cannot write " + path);
  f << content;
  if (!f) throw_config("cli.io", "failed writing " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw_config("cli.io", "cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw_config("cli.config", "invalid JSON in " + what + ": " + e.what());
  }
}

std::uint64_t manifest_seed(const json& config) {
  if (config.contains("seed")) return config.at("seed").get<std::uint64_t>();
  for (const auto& item : config.items()) {
    if (item.value().is_object() && item.value().contains("seed")) return item.value().at("seed").get<std::uint64_t>();
  }
  return 0;
}

/// Emits the report to stdout or to --out plus the companion files and the
/// manifest.  Returns the exit code for the report.
int emit(const std::string& command, const json& config, const CommandResult& result, const std::string& format,
         const std::string& out_path, std::ostream& out) {
  const std::string primary = render(result, format);
  if (out_path.empty()) {
    out << primary;
    return result.pass ? kPass : kCriterionFailure;
  }
  const std::string out_abs = std::filesystem::absolute(out_path).lexically_normal().string();
  json outputs = {{"report", out_abs}, {"manifest", out_abs + ".manifest.json"}};
  write_file(out_path, primary);
  if (format == "json" && result.table) {
    write_file(out_path + ".csv", to_csv(*result.table));
    outputs["csv"] = out_abs + ".csv";
  } else if (format == "csv") {
    write_file(out_path + ".json", render(result, "json"));
    outputs["json"] = out_abs + ".json";
  }
  const json manifest = {{"command", command},          {"config", config},          {"seed", manifest_seed(config)},
                         {"version", DTLAB_VERSION},    {"format", format},          {"timestamp", timestamp_utc()},
                         {"outputs", outputs}};
  write_file(out_path + ".manifest.json", manifest.dump(2) + "\n");
  return result.pass ? kPass : kCriterionFailure;
}

}  // namespace

// ---------------------------------------------------------------------------

json resolve_config(const std::string& command, const json& file_config, const json& overrides) {
  const json base = file_config.is_null() ? json::object() : file_config;
  if (!base.is_object()) throw_config("cli.config", "config must be a JSON object");

  if (command == "moment" || command == "oracle") {
    json c = base;
    apply_overrides(c, overrides, {"word", "coeffs"});
    require_keys(c, command == "moment" ? std::initializer_list<std::string_view>{"word", "coeffs"}
                                       : std::initializer_list<std::string_view>{"word"},
                 command);
    if (command == "moment") {
      const CoeffWord cw = coeff_word(c);
      json coeffs = json::array();
      for (const auto& f : cw.coeffs()) coeffs.push_back(dtlab::to_json(f));
      return {{"word", cw.word().to_string()}, {"coeffs", coeffs}};
    }
    return {{"word", parse_word(c).to_string()}};
  }
  if (command == "simulate") {
    json c = base;
    const std::string mode = c.value("mode", "dt");
    apply_overrides(c, overrides, {"seed", "N", "trials"});
    c.erase("mode");
    json out;
    if (mode == "dt") {
      out = to_json(simulate_dt_from_json(c));
    } else if (mode == "engine") {
      out = to_json(engine_consistency_config_from_json(c));
    } else if (mode == "semicircle") {
      out = to_json(semicircle_config_from_json(c));
    } else {
      throw_config("cli.config", "simulate mode must be dt, engine or semicircle");
    }
    out["mode"] = mode;
    return out;
  }
  if (command == "hs") {
    json c = base;
    const std::string mode = c.value("mode", "battery");
    if (mode == "matrix") {
      reject_overrides(overrides, "hs matrix mode");
      require_keys(c, {"mode", "matrix", "matrix_file", "regions"}, "hs");
      c["mode"] = mode;
      return c;
    }
    if (mode != "battery") throw_config("cli.config", "hs mode must be battery or matrix");
    c.erase("mode");
    apply_overrides(c, overrides, {"seed", "N", "matrices"}, {{"trials", "matrices"}});
    json out = to_json(hs_battery_config_from_json(c));
    out["mode"] = mode;
    return out;
  }
  if (command == "angle") {
    json c = base.empty() ? json{{"lemma62", json::object()}} : base;
    for (const auto& item : c.items()) {
      if (std::find(kAngleSections.begin(), kAngleSections.end(), item.key()) == kAngleSections.end()) {
        throw_config("cli.config", "unknown angle section '" + item.key() + "'");
      }
    }
    json out = json::object();
    for (const auto& section : kAngleSections) {
      if (!c.contains(section)) continue;
      json s = c.at(section);
      apply_overrides(s, overrides, {"seed", "N", "trials"});
      if (section == "lemma62") {
        out[section] = to_json(angle_config_from_json(s));
      } else if (section == "cor55") {
        out[section] = to_json(cor55_config_from_json(s));
      } else if (section == "lemma54") {
        out[section] = to_json(lemma54_config_from_json(s));
      } else if (section == "lemma53") {
        out[section] = to_json(lemma53_config_from_json(s));
      } else if (section == "lemma61") {
        out[section] = to_json(lemma61_from_json(s));
      } else {
        out[section] = to_json(restriction_config_from_json(s));
      }
    }
    return out;
  }
  if (command == "concentration") {
    json c = base;
    apply_overrides(c, overrides, {"seed"});
    return to_json(concentration_config_from_json(c));
  }
  throw_config("cli.command", "unknown command '" + command + "'");
}

CommandResult execute(const std::string& command, const json& config) {
  if (command == "moment") return cmd_moment(config);
  if (command == "oracle") return cmd_oracle(config);
  if (command == "simulate") return cmd_simulate(config);
  if (command == "hs") return cmd_hs(config);
  if (command == "angle") return cmd_angle(config);
  if (command == "concentration") return cmd_concentration(config);
  throw_config("cli.command", "unknown command '" + command + "'");
}

std::string render(const CommandResult& result, const std::string& format) {
  if (format == "json") return result.report.dump(2) + "\n";
  if (format == "csv") {
    if (!result.table) throw_config("cli.format", "this command has no CSV table");
    return to_csv(*result.table);
  }
  throw_config("cli.format", "format must be json or csv");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"dtlab: DT-operator moments, matrix models, Haagerup-Schultz projections and angle experiments",
               "dtlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(DTLAB_VERSION));

  struct Common {
    std::string config_path;
    std::string out_path;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    std::optional<long long> n;
    std::optional<int> trials;
  };
  Common common;
  std::string word;
  std::string coeffs;
  std::string manifest_path;
  bool verify = false;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", common.out_path, "Write the report here plus <out>.csv/.json and <out>.manifest.json");
    sub->add_option("--format", common.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "JSON config file")->check(CLI::ExistingFile);
  };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", common.seed, "Global 64-bit seed"); };
  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--n", common.n, "Matrix size N")->check(CLI::PositiveNumber);
    sub->add_option("--trials", common.trials, "Number of seeded trials")->check(CLI::PositiveNumber);
  };

  auto* moment = app.add_subcommand("moment", "Exact B-valued moment of a word T^e1 b1 ... T^en bn");
  moment->add_option("word", word, "Word over {*,1}, e.g. *1*1")->required();
  moment->add_option("--coeffs", coeffs, "JSON array of coefficient polynomials, e.g. '[[\"0\",\"1\"],[\"1\"]]'");
  add_output(moment);

  auto* oracle = app.add_subcommand("oracle", "Scalar moment by non-crossing pairing enumeration");
  oracle->add_option("word", word, "Word over {*,1}")->required();
  add_output(oracle);

  auto* simulate = app.add_subcommand("simulate", "DT matrix models (mode dt), engine or semicircle consistency");
  add_config(simulate);
  add_seed(simulate);
  add_model(simulate);
  add_output(simulate);

  auto* hs = app.add_subcommand("hs", "Haagerup-Schultz projections: random battery or a given matrix");
  add_config(hs);
  add_seed(hs);
  add_model(hs);
  add_output(hs);

  auto* angle = app.add_subcommand("angle", "Angle construction and the inequalities behind it");
  add_config(angle);
  add_seed(angle);
  add_model(angle);
  add_output(angle);

  auto* concentration = app.add_subcommand("concentration", "Analytic angle ladder for concentration families");
  add_config(concentration);
  add_seed(concentration);
  add_output(concentration);

  auto* replay = app.add_subcommand("replay", "Re-run a command from its manifest");
  replay->add_option("manifest", manifest_path, "Path to <out>.manifest.json")->required()->check(CLI::ExistingFile);
  replay->add_option("--out", common.out_path, "Write the regenerated report here instead of stdout");
  replay->add_flag("--verify", verify, "Compare against the recorded report: exit 0 when byte-identical, 1 otherwise");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kConfigError;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();

    if (command == "replay") {
      const json manifest = parse_json(read_file(manifest_path), manifest_path);
      const std::string cmd = manifest.at("command").get<std::string>();
      const std::string format = manifest.value("format", "json");
      const CommandResult result = execute(cmd, manifest.at("config"));
      const std::string primary = render(result, format);
      if (verify) {
        const std::string recorded = read_file(manifest.at("outputs").at("report").get<std::string>());
        if (recorded != primary) {
          err << "replay: regenerated report differs from " << manifest.at("outputs").at("report") << "\n";
          return kCriterionFailure;
        }
      }
      if (common.out_path.empty()) {
        if (!verify) out << primary;
      } else {
        write_file(common.out_path, primary);
      }
      // With --verify the exit code reports the comparison, not the criterion.
      if (verify) return kPass;
      return result.pass ? kPass : kCriterionFailure;
    }

    json file_config;
    if (!common.config_path.empty()) file_config = parse_json(read_file(common.config_path), common.config_path);
    json overrides = json::object();
    if (common.seed) overrides["seed"] = *common.seed;
    if (common.n) overrides["N"] = *common.n;
    if (common.trials) overrides["trials"] = *common.trials;
    if (command == "moment" || command == "oracle") {
      overrides["word"] = word;
      if (!coeffs.empty()) overrides["coeffs"] = parse_json(coeffs, "--coeffs");
    }
    const json config = resolve_config(command, file_config, overrides);
    const CommandResult result = execute(command, config);
    return emit(command, config, result, common.format, common.out_path, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::config ? kConfigError : kNumericalAbort;
  } catch (const json::exception& e) {
    err << "error: cli.config: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace dtlab::cli
