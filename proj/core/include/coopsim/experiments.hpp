#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coopsim/dbpc.hpp"
#include "coopsim/epidemic.hpp"
#include "coopsim/geometry.hpp"

namespace coopsim {

enum class SpaceKind { cube, sphere2, complete };
enum class GraphMode { fresh_per_replicate, shared_across_replicates };

struct ExperimentSpace {
  SpaceKind kind = SpaceKind::cube;
  int dimension = 1;
  /// Complete graphs only; unset means round(N^beta).
  std::optional<std::uint64_t> vertices;

  bool geometric() const { return kind != SpaceKind::complete; }
  SpaceSpec spec() const;  // geometric spaces only
};

/// Declarative description of one campaign. Field names match the config
/// file keys.
struct ExperimentConfig {
  ExperimentSpace space;
  double intensity = 1e5;
  double beta = 0.7;
  /// Cooperativity grid; v = round(a sqrt(N^beta)), or round(a sqrt(D)).
  std::vector<double> a_grid;
  /// Alternative to a_grid: parasite counts used as given.
  std::vector<std::uint32_t> v_grid;
  double u = 1.0;
  std::uint64_t replicates = 1;
  std::uint64_t base_seed = 0;
  GraphMode graph_mode = GraphMode::fresh_per_replicate;
  InfectionMode mode = InfectionMode::full;
  unsigned threads = 1;
  std::string output;

  /// Replicates behind each pi-hat bound column; 0 leaves the columns empty.
  std::uint64_t bound_replicates = 10'000;
  /// DBPC survival threshold; unset means the host population size.
  std::optional<std::uint64_t> threshold;
  std::uint64_t z0 = 1;
  std::uint64_t dbpc_generation_cap = 500;
  /// Epidemic generation cap; 0 selects the topology default.
  std::uint64_t generation_cap = 0;
  /// Time and wavefront runs: stop after this many successful replicates,
  /// using at most `replicates` attempts. 0 runs every attempt.
  std::uint64_t target_successes = 0;
  bool remove_initial_phase = true;
  double delta = 0.01;

  /// Throws config_error on any violated invariant. Graph validation and
  /// DBPC sweeps pass require_grid = false.
  void validate(bool require_grid = true) const;
  std::size_t grid_size() const { return v_grid.empty() ? a_grid.size() : v_grid.size(); }
};

/// Parse a JSON config document; unknown keys are rejected and the grid may be
/// left for flags to supply. Throws config_error.
ExperimentConfig parse_config(std::string_view text);
/// Throws config_error for unreadable or malformed files.
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& config);

/// N^beta for geometric spaces, D for complete graphs.
double degree_scale(const ExperimentConfig& config);
/// Host count used as the default survival threshold: round(N) or D.
std::uint64_t host_population(const ExperimentConfig& config);
std::uint64_t complete_vertices(const ExperimentConfig& config);
std::uint64_t survival_threshold(const ExperimentConfig& config);

/// (a, v) of grid entry j.
struct GridPoint {
  double a = 0.0;
  std::uint32_t v = 0;
};
GridPoint grid_point(const ExperimentConfig& config, std::size_t j);

struct SweepRow {
  double a = 0.0;
  std::uint32_t v = 0;
  std::uint64_t replicates = 0;
  std::uint64_t invaded = 0;
  double fraction = 0.0;
  double stderr_ = 0.0;
  std::optional<SurvivalEstimate> pi_lower;
  std::optional<SurvivalEstimate> pi_upper;
};

/// Binomial standard error sqrt(p (1 - p) / n).
double binomial_stderr(double p, std::uint64_t n);

std::vector<SweepRow> invasion_probability_sweep(const ExperimentConfig& config);
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Runs one epidemic replicate of grid entry j, as the sweep would.
RunResult run_replicate(const ExperimentConfig& config, std::size_t j, std::uint64_t replicate);

struct InvasionTimePrediction {
  std::uint64_t lower = 0;
  std::uint64_t upper_base = 0;
  double slack_loglog = 0.0;
  double slack_eps = 0.0;
};
InvasionTimePrediction predict_invasion_time(const ExperimentConfig& config);

struct TimeRow {
  std::uint64_t replicate = 0;
  std::uint64_t T = 0;
  std::optional<std::uint64_t> T_minus_initial;
};

struct TimeResult {
  InvasionTimePrediction prediction;
  std::vector<TimeRow> rows;
  std::uint64_t attempts = 0;
};

/// Invasion times of the successful replicates of the single grid entry.
TimeResult invasion_time_experiment(const ExperimentConfig& config, bool remove_initial_phase);
std::string time_csv(const TimeResult& result);

struct WavefrontTrace {
  std::uint64_t replicate = 0;
  std::vector<std::uint64_t> box_distance;  // indexed by generation
  double late_slope = 0.0;
};

struct WavefrontResult {
  std::vector<WavefrontTrace> traces;
  std::uint64_t attempts = 0;
};

WavefrontResult wavefront_experiment(const ExperimentConfig& config);
std::string wavefront_csv(const WavefrontResult& result);

/// Least-squares slope of box distance against generation over the final
/// half of the generations; 0 for traces shorter than two points.
double late_run_slope(const std::vector<std::uint64_t>& trace);

struct DbpcRow {
  double a = 0.0;
  std::uint64_t z0 = 1;
  std::uint64_t threshold = 0;
  std::uint64_t replicates = 0;
  SurvivalEstimate estimate;
};

std::vector<DbpcRow> dbpc_survival_sweep(const std::vector<double>& a_grid, std::uint64_t z0, std::uint64_t threshold,
                                         std::uint64_t replicates, std::uint64_t seed, unsigned threads = 1,
                                         std::uint64_t generation_cap = 500);
std::string dbpc_csv(const std::vector<DbpcRow>& rows);

struct GraphCheck {
  std::uint64_t seed_index = 0;
  std::uint64_t vertices = 0;
  bool connected = false;
  std::uint64_t interior = 0;
  double band_rate = 0.0;
};

struct ValidationReport {
  std::vector<GraphCheck> graphs;
  double connectivity_rate = 0.0;
  /// Mean over graphs of the interior degree-band membership rate.
  double degree_band_rate = 0.0;
};

ValidationReport validate_graph(const ExperimentConfig& config, std::uint64_t seeds);
std::string validation_csv(const ValidationReport& report);

/// Per-generation trace `g,new_infected,cumulative,box_distance,cosame,codiff`.
std::string trace_csv(const RunResult& run);

}  // namespace coopsim
