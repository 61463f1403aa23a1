#include "coopsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include <json.hpp>

#include "coopsim/errors.hpp"
#include "coopsim/io.hpp"
#include "coopsim/parallel.hpp"
#include "coopsim/rgg.hpp"
#include "coopsim/spatial_index.hpp"

namespace coopsim {
namespace {

using nlohmann::json;

constexpr std::uint64_t kGraphTag = 0;
constexpr std::uint64_t kDynamicsTag = 1;
constexpr std::uint64_t kSharedGraphTag = 0x5348415245ULL;
constexpr std::uint64_t kBoundTag = 0x424f554e44ULL;

// floor/ceil with a little slack so 1/(2r) = 1000 in exact arithmetic does not
// land on 999.9999999.
std::uint64_t tolerant_floor(double x) { return static_cast<std::uint64_t>(std::floor(x + 1e-9)); }
std::uint64_t tolerant_ceil(double x) { return static_cast<std::uint64_t>(std::ceil(x - 1e-9)); }

const char* kind_name(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::cube: return "cube";
    case SpaceKind::sphere2: return "sphere2";
    case SpaceKind::complete: return "complete";
  }
  return "?";
}

template <class T>
T get_field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw config_error(std::string("bad value for '") + key + "': " + e.what());
  }
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const char* where) {
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; }))
      throw config_error(std::string("unknown key '") + key + "' in " + where);
  }
}

std::shared_ptr<const GeometricGraph> make_graph(const ExperimentConfig& config, RandomStream rng) {
  return std::make_shared<const GeometricGraph>(build_rgg(config.space.spec(), config.intensity, config.beta, rng));
}

EpidemicParams epidemic_params(const ExperimentConfig& config, const GridPoint& gp) {
  EpidemicParams params;
  params.parasites_per_infection = gp.v;
  params.cooperativity_a = gp.a;
  params.target_proportion = config.u;
  params.mode = config.mode;
  params.generation_cap = config.generation_cap;
  return params;
}

// Graph shared by every replicate in quenched mode, null otherwise.
std::shared_ptr<const GeometricGraph> shared_graph(const ExperimentConfig& config) {
  if (!config.space.geometric() || config.graph_mode != GraphMode::shared_across_replicates) return nullptr;
  return make_graph(config, RandomStream(config.base_seed).split(kSharedGraphTag));
}

std::shared_ptr<const GeometricGraph> replicate_graph(const ExperimentConfig& config,
                                                      const std::shared_ptr<const GeometricGraph>& shared,
                                                      const RandomStream& stream) {
  return shared ? shared : make_graph(config, stream.split(kGraphTag));
}

template <class Graph>
RunResult run_on(const Graph& graph, const EpidemicParams& params, const RandomStream& stream,
                 const GenerationObserver& observer = {}) {
  EpidemicState state = init_epidemic(graph, params);
  RandomStream dynamics = stream.split(kDynamicsTag);
  RunResult result = run_to_absorption(graph, state, params, DestinationTape::from(dynamics), observer);
  if (!state.check_invariants()) throw invariant_violation("epidemic state partition is inconsistent");
  return result;
}

RunResult run_replicate_with(const ExperimentConfig& config, std::size_t j, std::uint64_t replicate,
                             const std::shared_ptr<const GeometricGraph>& shared) {
  const EpidemicParams params = epidemic_params(config, grid_point(config, j));
  const RandomStream stream = RandomStream::derive(config.base_seed, j, replicate);
  if (!config.space.geometric()) return run_on(CompleteGraph(complete_vertices(config)), params, stream);
  const auto graph = replicate_graph(config, shared, stream);
  return run_on(*graph, params, stream);
}

void require_single_geometric(const ExperimentConfig& config, const char* what) {
  config.validate();
  if (!config.space.geometric()) throw unsupported_topology(std::string(what) + " needs a geometric space");
  if (config.grid_size() != 1) throw config_error(std::string(what) + " takes exactly one a or v value");
}

// Runs attempts 0, 1, ... in batches and hands finished results to `accept`
// in index order until it returns false or the attempt budget runs out.
// Results past the stopping index are discarded, so the outcome does not
// depend on the batch size or thread count.
template <class Result, class Attempt, class Accept>
std::uint64_t run_attempts(std::uint64_t budget, unsigned threads, bool stop_early, Attempt&& attempt,
                           Accept&& accept) {
  const std::uint64_t batch = stop_early ? std::max<std::uint64_t>(8, 2ull * threads) : budget;
  std::uint64_t next = 0;
  while (next < budget) {
    const std::uint64_t count = std::min(batch, budget - next);
    std::vector<Result> results(count);
    parallel_for(count, threads, [&](std::size_t k) { results[k] = attempt(next + k); });
    for (std::uint64_t k = 0; k < count; ++k) {
      if (!accept(next + k, std::move(results[k]))) return next + k + 1;
    }
    next += count;
  }
  return next;
}

}  // namespace

SpaceSpec ExperimentSpace::spec() const {
  switch (kind) {
    case SpaceKind::cube: return SpaceSpec::cube(dimension);
    case SpaceKind::sphere2: return SpaceSpec::sphere2();
    case SpaceKind::complete: break;
  }
  throw unsupported_topology("complete graphs have no geometric space");
}

void ExperimentConfig::validate(bool require_grid) const {
  if (space.kind == SpaceKind::cube && space.dimension < 1) throw config_error("cube dimension must be >= 1");
  if (space.kind == SpaceKind::sphere2 && space.dimension != 2) throw config_error("sphere2 has dimension 2");
  if (space.vertices && space.kind != SpaceKind::complete) throw config_error("vertices applies to complete graphs only");
  if (!(intensity > 0.0) || !std::isfinite(intensity)) throw config_error("intensity must be positive");
  if (!(beta > 0.0 && beta < 1.0)) throw config_error("beta must lie in (0, 1)");
  if (!a_grid.empty() && !v_grid.empty()) throw config_error("give only one of a_grid and v_grid");
  if (require_grid && a_grid.empty() && v_grid.empty()) throw config_error("config needs a_grid or v_grid");
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    if (!(a_grid[i] > 0.0) || !std::isfinite(a_grid[i])) throw config_error("a_grid entries must be positive");
    if (i > 0 && !(a_grid[i] > a_grid[i - 1])) throw config_error("a_grid must be strictly increasing");
  }
  for (std::size_t i = 0; i < v_grid.size(); ++i) {
    if (v_grid[i] < 1) throw config_error("v_grid entries must be >= 1");
    if (i > 0 && v_grid[i] <= v_grid[i - 1]) throw config_error("v_grid must be strictly increasing");
  }
  if (!(u > 0.0 && u <= 1.0)) throw config_error("u must lie in (0, 1]");
  if (replicates < 1) throw config_error("replicates must be >= 1");
  if (threads < 1) throw config_error("threads must be >= 1");
  if (threshold && *threshold < 2) throw config_error("threshold must be >= 2");
  if (z0 < 1) throw config_error("z0 must be >= 1");
  if (!(delta > 0.0)) throw config_error("delta must be positive");
  if (space.kind == SpaceKind::complete && complete_vertices(*this) < 2)
    throw config_error("complete graph needs at least two vertices");
}

ExperimentConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw config_error("config must be a JSON object");
  reject_unknown(doc,
                 {"space", "intensity", "beta", "a_grid", "v_grid", "u", "replicates", "base_seed", "graph_mode",
                  "mode", "threads", "output", "bound_replicates", "threshold", "z0", "dbpc_generation_cap",
                  "generation_cap", "target_successes", "remove_initial_phase", "delta"},
                 "config");
  ExperimentConfig c;
  if (doc.contains("space")) {
    const json& s = doc["space"];
    if (!s.is_object()) throw config_error("space must be an object");
    reject_unknown(s, {"kind", "dimension", "vertices"}, "space");
    const auto kind = get_field<std::string>(s, "kind");
    if (kind == "cube") {
      c.space.kind = SpaceKind::cube;
      c.space.dimension = s.contains("dimension") ? get_field<int>(s, "dimension") : 1;
    } else if (kind == "sphere2") {
      c.space.kind = SpaceKind::sphere2;
      c.space.dimension = s.contains("dimension") ? get_field<int>(s, "dimension") : 2;
    } else if (kind == "complete") {
      c.space.kind = SpaceKind::complete;
      c.space.dimension = 0;
      if (s.contains("vertices")) c.space.vertices = get_field<std::uint64_t>(s, "vertices");
    } else {
      throw config_error("unknown space kind '" + kind + "'");
    }
    if (c.space.kind != SpaceKind::complete && s.contains("vertices")) c.space.vertices = get_field<std::uint64_t>(s, "vertices");
  }
  if (doc.contains("intensity")) c.intensity = get_field<double>(doc, "intensity");
  if (doc.contains("beta")) c.beta = get_field<double>(doc, "beta");
  if (doc.contains("a_grid")) c.a_grid = get_field<std::vector<double>>(doc, "a_grid");
  if (doc.contains("v_grid")) c.v_grid = get_field<std::vector<std::uint32_t>>(doc, "v_grid");
  if (doc.contains("u")) c.u = get_field<double>(doc, "u");
  if (doc.contains("replicates")) c.replicates = get_field<std::uint64_t>(doc, "replicates");
  if (doc.contains("base_seed")) c.base_seed = get_field<std::uint64_t>(doc, "base_seed");
  if (doc.contains("graph_mode")) {
    const auto mode = get_field<std::string>(doc, "graph_mode");
    if (mode == "fresh_per_replicate") c.graph_mode = GraphMode::fresh_per_replicate;
    else if (mode == "shared_across_replicates") c.graph_mode = GraphMode::shared_across_replicates;
    else throw config_error("unknown graph_mode '" + mode + "'");
  }
  if (doc.contains("mode")) {
    const auto mode = get_field<std::string>(doc, "mode");
    if (mode == "full") c.mode = InfectionMode::full;
    else if (mode == "cosame_only") c.mode = InfectionMode::cosame_only;
    else throw config_error("unknown mode '" + mode + "'");
  }
  if (doc.contains("threads")) c.threads = get_field<unsigned>(doc, "threads");
  if (doc.contains("output")) c.output = get_field<std::string>(doc, "output");
  if (doc.contains("bound_replicates")) c.bound_replicates = get_field<std::uint64_t>(doc, "bound_replicates");
  if (doc.contains("threshold") && !doc["threshold"].is_null()) c.threshold = get_field<std::uint64_t>(doc, "threshold");
  if (doc.contains("z0")) c.z0 = get_field<std::uint64_t>(doc, "z0");
  if (doc.contains("dbpc_generation_cap")) c.dbpc_generation_cap = get_field<std::uint64_t>(doc, "dbpc_generation_cap");
  if (doc.contains("generation_cap")) c.generation_cap = get_field<std::uint64_t>(doc, "generation_cap");
  if (doc.contains("target_successes")) c.target_successes = get_field<std::uint64_t>(doc, "target_successes");
  if (doc.contains("remove_initial_phase")) c.remove_initial_phase = get_field<bool>(doc, "remove_initial_phase");
  if (doc.contains("delta")) c.delta = get_field<double>(doc, "delta");
  c.validate(false);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const io_error& e) {
    throw config_error(e.what());
  }
  return parse_config(text);
}

std::string config_to_json(const ExperimentConfig& c) {
  json space{{"kind", kind_name(c.space.kind)}};
  if (c.space.geometric()) space["dimension"] = c.space.dimension;
  if (c.space.vertices) space["vertices"] = *c.space.vertices;
  json doc{{"space", space},
           {"intensity", c.intensity},
           {"beta", c.beta},
           {"u", c.u},
           {"replicates", c.replicates},
           {"base_seed", c.base_seed},
           {"graph_mode", c.graph_mode == GraphMode::fresh_per_replicate ? "fresh_per_replicate"
                                                                         : "shared_across_replicates"},
           {"mode", c.mode == InfectionMode::full ? "full" : "cosame_only"},
           {"threads", c.threads},
           {"output", c.output},
           {"bound_replicates", c.bound_replicates},
           {"z0", c.z0},
           {"dbpc_generation_cap", c.dbpc_generation_cap},
           {"generation_cap", c.generation_cap},
           {"target_successes", c.target_successes},
           {"remove_initial_phase", c.remove_initial_phase},
           {"delta", c.delta}};
  if (!c.a_grid.empty()) doc["a_grid"] = c.a_grid;
  if (!c.v_grid.empty()) doc["v_grid"] = c.v_grid;
  if (c.threshold) doc["threshold"] = *c.threshold;
  return doc.dump(2);
}

std::uint64_t complete_vertices(const ExperimentConfig& config) {
  if (config.space.vertices) return *config.space.vertices;
  return static_cast<std::uint64_t>(std::llround(std::pow(config.intensity, config.beta)));
}

double degree_scale(const ExperimentConfig& config) {
  if (!config.space.geometric()) return static_cast<double>(complete_vertices(config));
  return std::pow(config.intensity, config.beta);
}

std::uint64_t host_population(const ExperimentConfig& config) {
  if (!config.space.geometric()) return complete_vertices(config);
  return static_cast<std::uint64_t>(std::llround(config.intensity));
}

std::uint64_t survival_threshold(const ExperimentConfig& config) {
  return config.threshold ? *config.threshold : std::max<std::uint64_t>(2, host_population(config));
}

GridPoint grid_point(const ExperimentConfig& config, std::size_t j) {
  const double scale = degree_scale(config);
  if (!config.v_grid.empty()) {
    const std::uint32_t v = config.v_grid.at(j);
    return {static_cast<double>(v) / std::sqrt(scale), v};
  }
  const double a = config.a_grid.at(j);
  return {a, parasites_for(a, scale)};
}

double binomial_stderr(double p, std::uint64_t n) {
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

RunResult run_replicate(const ExperimentConfig& config, std::size_t j, std::uint64_t replicate) {
  config.validate();
  return run_replicate_with(config, j, replicate, shared_graph(config));
}

std::vector<SweepRow> invasion_probability_sweep(const ExperimentConfig& config) {
  config.validate();
  const auto shared = shared_graph(config);
  const std::uint64_t threshold = survival_threshold(config);
  std::vector<SweepRow> rows;
  for (std::size_t j = 0; j < config.grid_size(); ++j) {
    const GridPoint gp = grid_point(config, j);
    std::vector<std::uint8_t> success(config.replicates, 0);
    parallel_for(config.replicates, config.threads,
                 [&](std::size_t i) { success[i] = invaded(run_replicate_with(config, j, i, shared).outcome); });
    SweepRow row;
    row.a = gp.a;
    row.v = gp.v;
    row.replicates = config.replicates;
    row.invaded = static_cast<std::uint64_t>(std::count(success.begin(), success.end(), 1));
    row.fraction = static_cast<double>(row.invaded) / static_cast<double>(row.replicates);
    row.stderr_ = binomial_stderr(row.fraction, row.replicates);

    if (config.bound_replicates > 0) {
      SurvivalOptions options;
      options.z0 = 1;
      options.threshold = threshold;
      options.generation_cap = config.dbpc_generation_cap;
      options.replicates = config.bound_replicates;
      options.threads = config.threads;
      const RandomStream bounds = RandomStream(config.base_seed).split(kBoundTag).split(j);
      row.pi_upper = estimate_survival(poisson_dbpc(gp.a), options, bounds.split(0));
      if (config.space.geometric()) {
        const int n = config.space.spec().dimension();
        const double lower_a = gp.a / std::sqrt(std::pow(2.0, n));
        row.pi_lower = estimate_survival(poisson_dbpc(lower_a), options, bounds.split(1));
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  CsvBuilder csv("a,v,replicates,invaded,fraction,stderr,pi_lower,pi_upper");
  for (const SweepRow& r : rows) {
    csv.field(r.a).field(std::uint64_t{r.v}).field(r.replicates).field(r.invaded).field(r.fraction).field(r.stderr_);
    if (r.pi_lower) csv.field(r.pi_lower->pi_hat); else csv.empty_field();
    if (r.pi_upper) csv.field(r.pi_upper->pi_hat); else csv.empty_field();
    csv.end_row();
  }
  return csv.text();
}

InvasionTimePrediction predict_invasion_time(const ExperimentConfig& config) {
  if (!config.space.geometric()) throw unsupported_topology("invasion time prediction needs a geometric space");
  const SpaceSpec space = config.space.spec();
  const RggParams params = RggParams::derive(space, config.intensity, config.beta);
  const double span = space.is_cube() ? 1.0 / (2.0 * params.radius) : std::numbers::pi / params.radius;
  const double n = space.dimension();
  InvasionTimePrediction p;
  p.lower = tolerant_floor(span);
  p.upper_base = tolerant_ceil(span);
  p.slack_loglog = std::log(std::log(config.intensity));
  const double eps = std::pow(config.intensity, (config.beta / 2.0 - 1.0) / n + config.delta);
  p.slack_eps = eps / (params.radius * params.radius);
  return p;
}

TimeResult invasion_time_experiment(const ExperimentConfig& config, bool remove_initial_phase) {
  require_single_geometric(config, "invasion time experiment");
  if (config.u != 1.0) throw config_error("invasion time experiment needs u = 1");
  const auto shared = shared_graph(config);
  const EpidemicParams params = epidemic_params(config, grid_point(config, 0));

  auto attempt = [&](std::uint64_t i) -> std::optional<TimeRow> {
    const RandomStream stream = RandomStream::derive(config.base_seed, 0, i);
    const auto graph = replicate_graph(config, shared, stream);
    std::optional<std::uint64_t> initial_end;
    GenerationObserver observer;
    std::optional<GridIndex> boxes;
    std::vector<std::uint32_t> filled;
    if (remove_initial_phase) {
      boxes.emplace(build_index(graph->index().shared_points(), graph->radius() / 2.0));
      filled.assign(boxes->bucket_count(), 0);
      observer = [&](const EpidemicState& state) {
        if (initial_end) return;
        for (VertexId v : state.infected()) {
          const std::size_t b = boxes->bucket_of(v);
          if (++filled[b] == boxes->bucket(b).size()) initial_end = state.generation();
        }
      };
    }
    const RunResult run = run_on(*graph, params, stream, observer);
    const auto* full = std::get_if<FullInvasion>(&run.outcome);
    if (!full) return std::nullopt;
    TimeRow row{i, full->generation, std::nullopt};
    if (remove_initial_phase && initial_end) row.T_minus_initial = full->generation - *initial_end;
    return row;
  };

  TimeResult result;
  result.prediction = predict_invasion_time(config);
  const bool stop_early = config.target_successes > 0;
  result.attempts = run_attempts<std::optional<TimeRow>>(
      config.replicates, config.threads, stop_early, attempt, [&](std::uint64_t, std::optional<TimeRow> row) {
        if (row) result.rows.push_back(*row);
        return !stop_early || result.rows.size() < config.target_successes;
      });
  return result;
}

std::string time_csv(const TimeResult& result) {
  CsvBuilder csv("replicate,T,T_lower,T_upper_base,T_minus_initial");
  for (const TimeRow& r : result.rows) {
    csv.field(r.replicate).field(r.T).field(result.prediction.lower).field(result.prediction.upper_base);
    if (r.T_minus_initial) csv.field(*r.T_minus_initial); else csv.empty_field();
    csv.end_row();
  }
  return csv.text();
}

double late_run_slope(const std::vector<std::uint64_t>& trace) {
  if (trace.size() < 2) return 0.0;
  const std::size_t last = trace.size() - 1;
  std::size_t first = last / 2;
  if (first == last) first = last - 1;
  const double count = static_cast<double>(last - first + 1);
  double mean_g = 0.0;
  double mean_d = 0.0;
  for (std::size_t g = first; g <= last; ++g) {
    mean_g += static_cast<double>(g);
    mean_d += static_cast<double>(trace[g]);
  }
  mean_g /= count;
  mean_d /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t g = first; g <= last; ++g) {
    const double dx = static_cast<double>(g) - mean_g;
    sxy += dx * (static_cast<double>(trace[g]) - mean_d);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

WavefrontResult wavefront_experiment(const ExperimentConfig& config) {
  require_single_geometric(config, "wavefront experiment");
  const auto shared = shared_graph(config);

  auto attempt = [&](std::uint64_t i) -> std::optional<WavefrontTrace> {
    const RunResult run = run_replicate_with(config, 0, i, shared);
    if (!invaded(run.outcome)) return std::nullopt;
    WavefrontTrace trace;
    trace.replicate = i;
    for (const GenerationReport& r : run.reports) trace.box_distance.push_back(r.box_distance);
    trace.late_slope = late_run_slope(trace.box_distance);
    return trace;
  };

  WavefrontResult result;
  const bool stop_early = config.target_successes > 0;
  result.attempts = run_attempts<std::optional<WavefrontTrace>>(
      config.replicates, config.threads, stop_early, attempt,
      [&](std::uint64_t, std::optional<WavefrontTrace> trace) {
        if (trace) result.traces.push_back(std::move(*trace));
        return !stop_early || result.traces.size() < config.target_successes;
      });
  return result;
}

std::string wavefront_csv(const WavefrontResult& result) {
  CsvBuilder csv("replicate,g,box_distance");
  for (const WavefrontTrace& t : result.traces) {
    for (std::size_t g = 0; g < t.box_distance.size(); ++g) {
      csv.field(t.replicate).field(std::uint64_t{g}).field(t.box_distance[g]);
      csv.end_row();
    }
  }
  return csv.text();
}

std::vector<DbpcRow> dbpc_survival_sweep(const std::vector<double>& a_grid, std::uint64_t z0, std::uint64_t threshold,
                                         std::uint64_t replicates, std::uint64_t seed, unsigned threads,
                                         std::uint64_t generation_cap) {
  if (a_grid.empty()) throw invalid_argument("a grid is empty");
  SurvivalOptions options;
  options.z0 = z0;
  options.threshold = threshold;
  options.generation_cap = generation_cap;
  options.replicates = replicates;
  options.threads = threads;
  std::vector<DbpcRow> rows;
  for (std::size_t j = 0; j < a_grid.size(); ++j) {
    const DbpcParams params = poisson_dbpc(a_grid[j]);
    rows.push_back({a_grid[j], z0, threshold, replicates, estimate_survival(params, options, RandomStream(seed).split(j))});
  }
  return rows;
}

std::string dbpc_csv(const std::vector<DbpcRow>& rows) {
  CsvBuilder csv("a,z0,threshold,replicates,survived,died,undecided,pi_hat,stderr");
  for (const DbpcRow& r : rows) {
    csv.field(r.a).field(r.z0).field(r.threshold).field(r.replicates);
    csv.field(r.estimate.survived).field(r.estimate.died).field(r.estimate.undecided);
    csv.field(r.estimate.pi_hat).field(r.estimate.stderr_);
    csv.end_row();
  }
  return csv.text();
}

ValidationReport validate_graph(const ExperimentConfig& config, std::uint64_t seeds) {
  config.validate(false);
  if (!config.space.geometric()) throw unsupported_topology("graph validation needs a geometric space");
  if (seeds < 1) throw config_error("seeds must be >= 1");
  ValidationReport report;
  report.graphs.resize(seeds);
  parallel_for(seeds, config.threads, [&](std::size_t i) {
    const auto graph = make_graph(config, RandomStream::derive(config.base_seed, 0, i).split(kGraphTag));
    GraphCheck& check = report.graphs[i];
    check.seed_index = i;
    check.vertices = graph->vertex_count();
    check.connected = graph->vertex_count() == 0 || is_connected(*graph);
    for (VertexId v = 0; v < graph->vertex_count(); ++v) check.interior += is_interior(*graph, v);
    check.band_rate = degree_band_rate(*graph);
  });
  double connected = 0.0;
  double band = 0.0;
  for (const GraphCheck& c : report.graphs) {
    connected += c.connected ? 1.0 : 0.0;
    band += c.band_rate;
  }
  report.connectivity_rate = connected / static_cast<double>(seeds);
  report.degree_band_rate = band / static_cast<double>(seeds);
  return report;
}

std::string validation_csv(const ValidationReport& report) {
  CsvBuilder csv("seed_index,vertices,connected,interior,band_rate");
  for (const GraphCheck& c : report.graphs) {
    csv.field(c.seed_index).field(c.vertices).field(std::uint64_t{c.connected ? 1u : 0u}).field(c.interior).field(c.band_rate);
    csv.end_row();
  }
  return csv.text();
}

std::string trace_csv(const RunResult& run) {
  CsvBuilder csv("g,new_infected,cumulative,box_distance,cosame,codiff");
  for (const GenerationReport& r : run.reports) {
    csv.field(r.generation).field(r.newly_infected).field(r.cumulative).field(r.box_distance);
    csv.field(r.cosame).field(r.codiff);
    csv.end_row();
  }
  return csv.text();
}

}  // namespace coopsim
