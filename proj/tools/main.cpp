// bethe-overlap: command-line harness for the identity suites and single evaluations.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "bethe_overlap/bethe.hpp"
#include "bethe_overlap/chain.hpp"
#include "bethe_overlap/overlap.hpp"
#include "bethe_overlap/serialize.hpp"
#include "bethe_overlap/verify.hpp"

using namespace bethe_overlap;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<unsigned> precision;
  std::string out;
};

struct RunSettings {
  ScalarMode mode = ScalarMode::exact;
  unsigned bits = kDefaultPrecisionBits;
  std::uint64_t seed = 1;
  Json config = Json::object();
};

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (j.contains("schema") && j["schema"] != kReportSchema) {
    throw ConfigError("unsupported config schema '" + j["schema"].dump() + "'");
  }
  return j;
}

ScalarMode parse_mode(const std::string& s) {
  if (s == "exact") return ScalarMode::exact;
  if (s == "float") return ScalarMode::floating;
  throw ConfigError("mode must be 'exact' or 'float', got '" + s + "'");
}

template <typename T>
T config_value(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j[key].get<T>();
  } catch (const std::exception&) {
    throw ConfigError(std::string("config field '") + key + "' has the wrong type");
  }
}

RunSettings resolve(const CommonFlags& flags) {
  RunSettings s;
  s.config = load_config(flags.config_path);
  s.mode = parse_mode(flags.mode.value_or(config_value<std::string>(s.config, "mode", "exact")));
  s.bits = flags.precision.value_or(config_value<unsigned>(s.config, "precision_bits", kDefaultPrecisionBits));
  if (s.bits < 64 || s.bits > 4096) throw ConfigError("precision_bits must lie in [64, 4096]");
  s.seed = flags.seed.value_or(config_value<std::uint64_t>(s.config, "seed", 1));
  return s;
}

Json echo(const RunSettings& s) {
  Json j = s.config;
  j["mode"] = s.mode == ScalarMode::exact ? "exact" : "float";
  j["precision_bits"] = s.bits;
  j["seed"] = s.seed;
  return j;
}

const Json& require(const Json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("config is missing '") + key + "'");
  return j[key];
}

Scalar scalar_field(const Json& j, const char* key, const RunSettings& s) {
  return scalar_from_json(require(j, key), s.mode, s.bits);
}

ParamSet set_field(const Json& j, const char* key, const RunSettings& s) {
  if (!j.contains(key)) return ParamSet({}, key);
  return params_from_json(j[key], s.mode, s.bits, key);
}

SpinChainModel model_from(const RunSettings& s) {
  const Json& m = require(s.config, "model");
  const Scalar one = s.mode == ScalarMode::exact ? Scalar::exact(1) : Scalar::floating(1.0, 0.0, s.bits);
  const ModelConstant cm(m.contains("c") ? scalar_field(m, "c", s) : one);
  if (m.contains("theta")) return SpinChainModel::make(set_field(m, "theta", s), cm, config_value<bool>(m, "homogeneous", false));
  if (m.contains("L")) return SpinChainModel::homogeneous(config_value<std::size_t>(m, "L", 1), cm);
  throw ConfigError("model needs 'theta' or 'L'");
}

TwistGeneral twist_from(const RunSettings& s) {
  const Json& t = require(s.config, "twist");
  if (t.contains("kappa_plus")) {
    return TwistGeneral::make(scalar_field(t, "kappa_tilde", s), scalar_field(t, "kappa_plus", s),
                              scalar_field(t, "kappa_minus", s), scalar_field(t, "kappa", s), scalar_field(t, "rho1", s));
  }
  return TwistGeneral::from_rhos(scalar_field(t, "kappa_tilde", s), scalar_field(t, "kappa_minus", s),
                                 scalar_field(t, "kappa", s), scalar_field(t, "rho1", s), scalar_field(t, "rho2", s));
}

Scalar alpha_from(const RunSettings& s) { return scalar_field(require(s.config, "twist"), "alpha", s); }

double float_tol(const RunSettings& s) { return config_value<double>(s.config, "float_tol", 1e-25); }

int emit(Report& report, const RunSettings& s, const std::string& out_path) {
  report.config = echo(s);
  const std::string text = report_to_json(report).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write report to '" + out_path + "'");
    out << text;
  }
  std::cerr << report.command << ": " << report.passed() << " passed, " << report.failed() << " failed\n";
  return report.all_pass() ? kExitPass : kExitFail;
}

int cmd_verify(const CommonFlags& flags, const std::vector<std::string>& suites, std::optional<std::size_t> max_size,
               std::optional<std::size_t> chain_length, std::optional<int> instances) {
  const RunSettings s = resolve(flags);
  VerifyConfig cfg;
  cfg.mode = s.mode;
  cfg.precision_bits = s.bits;
  cfg.seed = s.seed;
  cfg.max_set_size = max_size.value_or(config_value<std::size_t>(s.config, "max_set_size", 3));
  cfg.max_chain_length = chain_length.value_or(config_value<std::size_t>(s.config, "max_chain_length", 3));
  cfg.instances = instances.value_or(config_value<int>(s.config, "instances", 3));
  cfg.float_tol = config_value<double>(s.config, "float_tol", 1e-30);
  cfg.suites = suites.empty() ? config_value<std::vector<std::string>>(s.config, "suites", {}) : suites;
  if (cfg.max_set_size > 6) throw ConfigError("max_set_size is capped at 6");
  if (cfg.max_chain_length < 1 || cfg.max_chain_length > 6) throw ConfigError("max_chain_length must lie in [1, 6]");
  if (cfg.instances < 1) throw ConfigError("instances must be positive");
  Report report = run_verify(cfg);
  RunSettings echoed = s;
  echoed.config["suites"] = cfg.suites.empty() ? known_suites() : cfg.suites;
  echoed.config["max_set_size"] = cfg.max_set_size;
  echoed.config["max_chain_length"] = cfg.max_chain_length;
  echoed.config["instances"] = cfg.instances;
  return emit(report, echoed, flags.out);
}

int cmd_overlap(const CommonFlags& flags) {
  const RunSettings s = resolve(flags);
  PrecisionScope scope(s.bits);
  const SpinChainModel model = model_from(s);
  const TwistGeneral tw = twist_from(s);
  const Scalar alpha = alpha_from(s);
  const ParamSet v = set_field(s.config, "v", s);
  const ParamSet u = set_field(s.config, "u", s);
  OverlapInput in = OverlapInput::make(spin_half_weights(model), tw, alpha, v, u, model.c, set_field(s.config, "eta", s));
  const double tol = float_tol(s);
  const bool explicit_list = s.config.contains("formulas");
  const auto requested = config_value<std::vector<std::string>>(
      s.config, "formulas", {"offshell", "onshell", "constrained", "det", "reduced"});
  const Json inputs{{"theta", params_to_json(model.theta)}, {"v", params_to_json(v)}, {"u", params_to_json(u)},
                    {"alpha", scalar_to_json(alpha)}};

  Report report;
  report.command = "overlap";
  const Scalar brute = brute_overlap(model, tw, v, u);
  report.records.push_back(value_record("overlap/brute", "explicit matrix products", inputs, scalar_to_json(brute), true));

  using Formula = std::function<Scalar()>;
  const std::vector<std::tuple<std::string, std::string, Formula>> formulas = {
      {"offshell", "partition-sum overlap", [&] { return overlap_sum_offshell(in); }},
      {"onshell", "on-shell partition sum", [&] { return overlap_sum_onshell(in, false); }},
      {"constrained", "single-MID sum under alpha = -rho2/rho1", [&] { return overlap_sum_onshell(in, true); }},
      {"det", "determinant overlap", [&] { return overlap_det(in); }},
      {"reduced", "alpha = 1, rho1 = -rho2 determinant", [&] { return overlap_det_reduced(in); }},
  };
  for (const auto& [key, identity, eval] : formulas) {
    if (std::find(requested.begin(), requested.end(), key) == requested.end()) continue;
    const std::string name = "overlap/" + key + "_vs_brute";
    try {
      report.records.push_back(compare_record(name, identity, inputs, eval(), brute, tol));
    } catch (const Error& e) {
      // Without an explicit request, inapplicable formulas are skipped; the off-shell sum always applies.
      if (explicit_list || key == "offshell") report.records.push_back(error_record(name, identity, inputs, e.what()));
    }
  }
  report.finalize();
  return emit(report, s, flags.out);
}

BetheSystem system_from(const RunSettings& s, const SpinChainModel& model, const Json& solve_cfg) {
  const std::string kind = config_value<std::string>(solve_cfg, "system", "diag");
  const std::size_t count = config_value<std::size_t>(solve_cfg, "root_count", 1);
  const WeightPair w = spin_half_weights(model);
  if (kind == "diag") return BetheSystem::diag(w, alpha_from(s), count, model.c);
  if (kind == "modified") return BetheSystem::modified(w, twist_from(s), count, model.c);
  if (kind == "reduced") return BetheSystem::reduced(w, twist_from(s), count, model.c);
  throw ConfigError("solve.system must be diag, modified or reduced");
}

int cmd_solve(const CommonFlags& flags) {
  RunSettings s = resolve(flags);
  if (s.mode != ScalarMode::floating) {
    s.mode = ScalarMode::floating;  // the solver is numeric; exact inputs are rounded
  }
  PrecisionScope scope(s.bits);
  const SpinChainModel model = model_from(s);
  const Json solve_cfg = s.config.contains("solve") ? s.config["solve"] : Json::object();
  const BetheSystem sys = system_from(s, model, solve_cfg);
  const Real tol(config_value<std::string>(solve_cfg, "tol", "1e-30"));
  const int max_iter = config_value<int>(solve_cfg, "max_iter", 100);
  RootSet rs;
  if (config_value<bool>(solve_cfg, "continuation", false)) {
    rs = solve_from_anchors(sys, model.theta, tol, max_iter);
  } else {
    const ParamSet initial =
        solve_cfg.contains("initial") ? set_field(solve_cfg, "initial", s) : default_initial_guess(sys, s.bits);
    rs = solve_newton(sys, initial, tol, max_iter);
  }
  Report report;
  report.command = "solve";
  const Json inputs{{"theta", params_to_json(model.theta)}, {"system", config_value<std::string>(solve_cfg, "system", "diag")}};
  Json value{{"roots", params_to_json(rs.roots)}, {"iterations", rs.iterations}, {"converged", rs.converged}};
  if (!rs.message.empty()) value["message"] = rs.message;
  report.records.push_back(
      value_record("solve/roots", "Newton solution of the Bethe system", inputs, value, rs.converged,
                   real_to_string(rs.residual_norm)));
  return emit(report, s, flags.out);
}

int cmd_rate(const CommonFlags& flags) {
  const RunSettings s = resolve(flags);
  PrecisionScope scope(s.bits);
  const SpinChainModel model = model_from(s);
  const TwistGeneral tw = twist_from(s);
  const Scalar alpha = alpha_from(s);
  const ParamSet v = set_field(s.config, "v", s);
  const ParamSet u = set_field(s.config, "u", s);
  const Scalar overlap =
      s.config.contains("overlap") ? scalar_field(s.config, "overlap", s) : brute_overlap(model, tw, v, u);
  Report report;
  report.command = "rate";
  const Json inputs{{"theta", params_to_json(model.theta)}, {"v", params_to_json(v)}, {"u", params_to_json(u)}};
  try {
    const Scalar rate = rate_prefactor(spin_half_weights(model), alpha, tw, v, u, overlap, model.c);
    report.records.push_back(value_record("rate/prefactor", "|2c d/dz log(Lambda1/Lambda2)|^2 |S|^2 at z = 0", inputs,
                                          Json{{"prefactor", scalar_to_json(rate)}, {"overlap", scalar_to_json(overlap)}},
                                          true));
  } catch (const Error& e) {
    report.records.push_back(error_record("rate/prefactor", "golden-rule prefactor", inputs, e.what()));
  }
  return emit(report, s, flags.out);
}

void add_common(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("--config", flags.config_path, "JSON configuration file");
  sub->add_option("--seed", flags.seed, "random seed");
  sub->add_option("--mode", flags.mode, "exact or float");
  sub->add_option("--precision", flags.precision, "float precision in bits");
  sub->add_option("--out", flags.out, "report path (stdout when omitted)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modified Izergin determinants and twisted-chain overlaps"};
  app.require_subcommand(1);
  CommonFlags flags;
  std::vector<std::string> suites;
  std::optional<std::size_t> max_size;
  std::optional<std::size_t> chain_length;
  std::optional<int> instances;

  auto* verify = app.add_subcommand("verify", "run identity suites");
  add_common(verify, flags);
  verify->add_option("--suite", suites, "suite name (repeatable)");
  verify->add_option("--max-size", max_size, "largest parameter-set size");
  verify->add_option("--chain-length", chain_length, "largest chain length");
  verify->add_option("--instances", instances, "random instances per shape");
  auto* overlap = app.add_subcommand("overlap", "evaluate one overlap by every applicable formula");
  add_common(overlap, flags);
  auto* solve = app.add_subcommand("solve", "solve a Bethe system");
  add_common(solve, flags);
  auto* rate = app.add_subcommand("rate", "golden-rule rate prefactor");
  add_common(rate, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (verify->parsed()) return cmd_verify(flags, suites, max_size, chain_length, instances);
    if (overlap->parsed()) return cmd_overlap(flags);
    if (solve->parsed()) return cmd_solve(flags);
    if (rate->parsed()) return cmd_rate(flags);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitConfig;
}
