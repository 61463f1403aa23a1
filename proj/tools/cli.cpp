#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <map>
#include <memory>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coopsim/errors.hpp"
#include "coopsim/experiments.hpp"
#include "coopsim/io.hpp"

namespace coopsim::cli {
namespace {

// Values given on the command line for one subcommand; an option that was
// not passed keeps the config's value.
struct Overrides {
  std::string config_path;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
  std::uint64_t replicates = 0;
  double beta = 0.0;
  double intensity = 0.0;
  std::vector<double> a;
  std::vector<std::uint32_t> v;
  std::string space;
  int dimension = 0;
  std::uint64_t vertices = 0;
  std::string mode;
  double u = 1.0;
  std::uint64_t seeds = 10;
  std::uint64_t z0 = 1;
  std::uint64_t threshold = 0;
  std::uint64_t target_successes = 0;
  std::uint64_t replicate = 0;
  bool keep_initial_phase = false;

  std::map<std::string, CLI::Option*> given;
  bool has(const std::string& name) const {
    const auto it = given.find(name);
    return it != given.end() && it->second->count() > 0;
  }
};

void add_common(CLI::App& cmd, Overrides& o) {
  o.given["config"] = cmd.add_option("--config", o.config_path, "JSON experiment config");
  o.given["seed"] = cmd.add_option("--seed", o.seed, "base seed (overrides config and COOPSIM_SEED)");
  o.given["threads"] = cmd.add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  o.given["out"] = cmd.add_option("--out", o.out, "output CSV path");
  o.given["replicates"] = cmd.add_option("--replicates", o.replicates, "replicates per grid point");
  o.given["beta"] = cmd.add_option("--beta", o.beta, "degree exponent beta");
  o.given["intensity"] = cmd.add_option("--intensity", o.intensity, "Poisson intensity N");
  o.given["space"] = cmd.add_option("--space", o.space, "cube | sphere2 | complete")
                         ->check(CLI::IsMember({"cube", "sphere2", "complete"}));
  o.given["dimension"] = cmd.add_option("--dimension", o.dimension, "cube dimension");
  o.given["vertices"] = cmd.add_option("--vertices", o.vertices, "complete graph size D");
}

void add_grid(CLI::App& cmd, Overrides& o) {
  o.given["a"] = cmd.add_option("--a", o.a, "cooperativity grid");
  o.given["v"] = cmd.add_option("--v", o.v, "parasite counts, used as given");
  o.given["mode"] = cmd.add_option("--mode", o.mode, "full | cosame_only")->check(CLI::IsMember({"full", "cosame_only"}));
  o.given["u"] = cmd.add_option("--u", o.u, "target proportion");
}

std::uint64_t parse_env_seed(const char* text) {
  std::uint64_t value = 0;
  const std::string s(text);
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size()) throw config_error("COOPSIM_SEED is not an unsigned integer: " + s);
  return value;
}

// Seed precedence: --seed, then the config's base_seed, then COOPSIM_SEED, then 0.
ExperimentConfig resolve(const Overrides& o, const std::string& command) {
  ExperimentConfig config;
  bool seed_in_config = false;
  if (!o.config_path.empty()) {
    std::string text;
    try {
      text = read_text_file(o.config_path);
    } catch (const io_error& e) {
      throw config_error(e.what());
    }
    config = parse_config(text);
    seed_in_config = nlohmann::json::parse(text).contains("base_seed");
  }
  if (o.has("seed")) {
    config.base_seed = o.seed;
  } else if (!seed_in_config) {
    if (const char* env = std::getenv("COOPSIM_SEED")) config.base_seed = parse_env_seed(env);
  }
  if (o.has("threads")) config.threads = o.threads;
  if (o.has("out")) config.output = o.out;
  if (o.has("replicates")) config.replicates = o.replicates;
  if (o.has("beta")) config.beta = o.beta;
  if (o.has("intensity")) config.intensity = o.intensity;
  if (o.has("space")) {
    if (o.space == "cube") {
      config.space.kind = SpaceKind::cube;
      if (config.space.dimension < 1) config.space.dimension = 1;
    } else if (o.space == "sphere2") {
      config.space.kind = SpaceKind::sphere2;
      config.space.dimension = 2;
    } else {
      config.space.kind = SpaceKind::complete;
      config.space.dimension = 0;
    }
  }
  if (o.has("dimension")) config.space.dimension = o.dimension;
  if (o.has("vertices")) config.space.vertices = o.vertices;
  if (o.has("a")) {
    config.a_grid = o.a;
    config.v_grid.clear();
  }
  if (o.has("v")) {
    config.v_grid = o.v;
    config.a_grid.clear();
  }
  if (o.has("mode")) config.mode = o.mode == "full" ? InfectionMode::full : InfectionMode::cosame_only;
  if (o.has("u")) config.u = o.u;
  if (config.output.empty()) config.output = command + ".csv";
  return config;
}

void print_sweep(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << std::setw(8) << "a" << std::setw(8) << "v" << std::setw(10) << "invaded" << std::setw(10) << "fraction"
      << std::setw(10) << "stderr" << std::setw(10) << "pi_lower" << std::setw(10) << "pi_upper" << '\n';
  out << std::fixed << std::setprecision(4);
  for (const SweepRow& r : rows) {
    out << std::setw(8) << r.a << std::setw(8) << r.v << std::setw(10) << r.invaded << std::setw(10) << r.fraction
        << std::setw(10) << r.stderr_;
    if (r.pi_lower) out << std::setw(10) << r.pi_lower->pi_hat; else out << std::setw(10) << "-";
    if (r.pi_upper) out << std::setw(10) << r.pi_upper->pi_hat; else out << std::setw(10) << "-";
    out << '\n';
  }
  out << std::defaultfloat;
}

int dispatch(const std::string& command, const Overrides& o, std::ostream& out) {
  ExperimentConfig config = resolve(o, command);
  if (o.has("z0")) config.z0 = o.z0;
  if (o.has("threshold")) config.threshold = o.threshold;
  if (o.has("target-successes")) config.target_successes = o.target_successes;
  if (o.keep_initial_phase) config.remove_initial_phase = false;
  const std::uint64_t seeds = o.seeds;

  std::string csv;
  if (command == "sweep") {
    const auto rows = invasion_probability_sweep(config);
    csv = sweep_csv(rows);
    print_sweep(out, rows);
  } else if (command == "time") {
    const auto result = invasion_time_experiment(config, config.remove_initial_phase);
    csv = time_csv(result);
    out << "successful replicates: " << result.rows.size() << " of " << result.attempts << " attempts\n"
        << "T_lower " << result.prediction.lower << ", T_upper_base " << result.prediction.upper_base
        << ", slack_loglog " << result.prediction.slack_loglog << ", slack_eps " << result.prediction.slack_eps << '\n';
  } else if (command == "wavefront") {
    const auto result = wavefront_experiment(config);
    csv = wavefront_csv(result);
    out << "successful replicates: " << result.traces.size() << " of " << result.attempts << " attempts\n";
    for (const WavefrontTrace& t : result.traces)
      out << "replicate " << t.replicate << ": " << t.box_distance.size() - 1 << " generations, late slope "
          << t.late_slope << '\n';
  } else if (command == "dbpc") {
    config.validate(false);
    if (config.a_grid.empty()) throw config_error("dbpc needs an a grid (--a or a_grid)");
    const auto rows = dbpc_survival_sweep(config.a_grid, config.z0, survival_threshold(config), config.replicates,
                                          config.base_seed, config.threads, config.dbpc_generation_cap);
    csv = dbpc_csv(rows);
    for (const DbpcRow& r : rows)
      out << "a " << r.a << ": pi_hat " << r.estimate.pi_hat << " (stderr " << r.estimate.stderr_ << ", undecided "
          << r.estimate.undecided << ")\n";
  } else if (command == "validate") {
    const auto report = validate_graph(config, seeds);
    csv = validation_csv(report);
    out << "connectivity rate " << report.connectivity_rate << ", degree band rate " << report.degree_band_rate
        << " over " << seeds << " graphs\n";
  } else {
    config.validate();
    if (config.grid_size() != 1) throw config_error("run-one takes exactly one a or v value");
    const RunResult run = run_replicate(config, 0, o.replicate);
    csv = trace_csv(run);
    out << outcome_name(run.outcome) << " after " << run.reports.back().generation << " generations, "
        << run.reports.back().cumulative << " infected\n";
  }
  write_file_atomically(config.output, csv);
  out << "wrote " << config.output << '\n';
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Cooperative parasite invasions on random geometric and complete graphs", "coopsim");
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"sweep", "invasion probability sweep with DBPC bounds"},
      {"time", "invasion time study"},
      {"wavefront", "wavefront distance traces"},
      {"dbpc", "DBPC survival probability sweep"},
      {"validate", "connectivity and degree-band checks of fresh graphs"},
      {"run-one", "a single replicate with its per-generation trace"},
  };

  std::map<std::string, std::unique_ptr<Overrides>> parsed;
  for (const auto& [name, help] : commands) {
    CLI::App* cmd = app.add_subcommand(name, help);
    Overrides& o = *parsed.emplace(name, std::make_unique<Overrides>()).first->second;
    add_common(*cmd, o);
    if (name == "validate") {
      cmd->add_option("--seeds", o.seeds, "number of fresh graphs")->check(CLI::PositiveNumber);
    } else {
      add_grid(*cmd, o);
    }
    if (name == "dbpc") o.given["z0"] = cmd->add_option("--z0", o.z0, "initial DBPC population");
    if (name == "dbpc" || name == "sweep")
      o.given["threshold"] = cmd->add_option("--threshold", o.threshold, "DBPC survival threshold");
    if (name == "time" || name == "wavefront")
      o.given["target-successes"] =
          cmd->add_option("--target-successes", o.target_successes, "stop after this many successful replicates");
    if (name == "time") cmd->add_flag("--keep-initial-phase", o.keep_initial_phase, "leave T_minus_initial empty");
    if (name == "run-one") cmd->add_option("--replicate", o.replicate, "replicate index");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::string command;
  for (const CLI::App* sub : app.get_subcommands()) command = sub->get_name();

  try {
    return dispatch(command, *parsed.at(command), out);
  } catch (const config_error& e) {
    err << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const unsupported_topology& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUsage;
  } catch (const io_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace coopsim::cli
