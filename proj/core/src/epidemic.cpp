#include "coopsim/epidemic.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "coopsim/errors.hpp"

namespace coopsim {

constexpr std::uint8_t kSusceptible = static_cast<std::uint8_t>(HostStatus::susceptible);
constexpr std::uint8_t kInfected = static_cast<std::uint8_t>(HostStatus::infected);
constexpr std::uint8_t kRemoved = static_cast<std::uint8_t>(HostStatus::removed);
constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

void EpidemicParams::validate() const {
  if (parasites_per_infection < 1) throw invalid_argument("at least one parasite per infection is required");
  if (!(target_proportion > 0.0 && target_proportion <= 1.0)) {
    throw invalid_argument("target proportion must lie in (0,1]");
  }
}

std::uint32_t parasites_for(double a, double degree_scale) {
  if (!(a > 0.0) || !(degree_scale > 0.0)) throw invalid_argument("a and degree scale must be positive");
  const double v = std::round(a * std::sqrt(degree_scale));
  if (v < 1.0) throw invalid_argument("a too small: round(a sqrt(d)) is zero parasites");
  if (v > 4.0e9) throw invalid_argument("parasite count overflows");
  return static_cast<std::uint32_t>(v);
}

CompleteGraph::CompleteGraph(std::uint64_t vertices) : vertices_(vertices) {
  if (vertices < 2) throw invalid_argument("complete graph needs at least two vertices");
  if (vertices >= kNoVertex) throw invalid_argument("complete graph too large for 32-bit ids");
}

CompleteGraph build_complete_graph(std::uint64_t vertices) { return CompleteGraph(vertices); }

bool EpidemicState::check_invariants() const {
  std::size_t s = 0, i = 0, r = 0;
  for (std::uint8_t st : status_) {
    if (st == kSusceptible) ++s;
    else if (st == kInfected) ++i;
    else if (st == kRemoved) ++r;
    else return false;
  }
  if (s != susceptible_ || i != infected_.size() || r != removed_) return false;
  if (s + i + r != status_.size()) return false;
  for (VertexId v : infected_) {
    if (status_[v] != kInfected) return false;
  }
  return true;
}

bool invaded(const Outcome& outcome) {
  return std::holds_alternative<FullInvasion>(outcome) || std::holds_alternative<TargetReached>(outcome);
}

const char* outcome_name(const Outcome& outcome) {
  struct Visitor {
    const char* operator()(const Extinct&) const { return "extinct"; }
    const char* operator()(const TargetReached&) const { return "target_reached"; }
    const char* operator()(const FullInvasion&) const { return "full_invasion"; }
    const char* operator()(const CapExceeded&) const { return "cap_exceeded"; }
  };
  return std::visit(Visitor{}, outcome);
}

std::uint64_t default_generation_cap(const CompleteGraph&) { return 10'000; }

std::uint64_t default_generation_cap(const GeometricGraph& graph) {
  const double span = graph.space().is_cube() ? 1.0 / (2.0 * graph.radius()) : std::numbers::pi / graph.radius();
  return 10 * static_cast<std::uint64_t>(std::ceil(span));
}

namespace {

class CompleteSampler {
 public:
  explicit CompleteSampler(const CompleteGraph& graph) : others_(graph.vertex_count() - 1) {}

  bool prepare(VertexId) { return true; }

  VertexId draw(VertexId x, RandomStream& rng) {
    const auto i = static_cast<VertexId>(rng.below(others_));
    return i >= x ? i + 1 : i;
  }

 private:
  std::uint64_t others_;
};

// Uniform neighbor draws on a geometric graph. Candidates come from the
// index's slot runs; exact runs (sorted 1-D) are sampled directly, otherwise
// by rejection with a fallback to the materialized neighbor list.
class GeometricSampler {
 public:
  explicit GeometricSampler(const GeometricGraph& graph)
      : graph_(graph), index_(graph.index()), space_(graph.space()), radius_(graph.radius()) {}

  bool prepare(VertexId x) {
    index_.candidate_runs(x, radius_, runs_);
    total_ = 0;
    for (const SlotRun& run : runs_) total_ += run.size();
    if (total_ <= 1) return false;  // only x itself
    use_list_ = false;
    if (index_.runs_exact()) self_slot_ = index_.slot_of(x);
    return true;
  }

  VertexId draw(VertexId x, RandomStream& rng) {
    if (index_.runs_exact()) {
      std::uint32_t slot = runs_.front().begin + static_cast<std::uint32_t>(rng.below(total_ - 1));
      if (slot >= self_slot_) ++slot;
      return index_.slot_to_id(slot);
    }
    if (!use_list_) {
      const Point p = graph_.points()[x];
      for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        std::uint64_t i = rng.below(total_);
        std::size_t r = 0;
        while (i >= runs_[r].size()) i -= runs_[r++].size();
        const VertexId y = index_.slot_to_id(runs_[r].begin + static_cast<std::uint32_t>(i));
        if (y != x && distance_unchecked(space_, p, graph_.points()[y]) <= radius_) return y;
      }
      use_list_ = true;
      graph_.neighbors(x, list_);
    }
    if (list_.empty()) return kNoVertex;
    return list_[rng.below(list_.size())];
  }

 private:
  static constexpr int kMaxRejections = 64;

  const GeometricGraph& graph_;
  const GridIndex& index_;
  const SpaceSpec& space_;
  double radius_;
  std::vector<SlotRun> runs_;
  std::uint64_t total_ = 0;
  std::uint32_t self_slot_ = 0;
  bool use_list_ = false;
  std::vector<VertexId> list_;
};

// Distance of geometric vertices from the origin in radius/2 shells.
class ShellMeter {
 public:
  explicit ShellMeter(const GeometricGraph& graph, VertexId origin)
      : graph_(&graph), origin_(graph.points()[origin]), half_radius_(graph.radius() / 2.0) {}

  std::uint64_t shell(VertexId v) const {
    const double d = distance_unchecked(graph_->space(), graph_->points()[v], origin_);
    return static_cast<std::uint64_t>(std::floor(d / half_radius_));
  }

 private:
  const GeometricGraph* graph_;
  Point origin_;
  double half_radius_;
};

}  // namespace

struct EpidemicAccess {
  static EpidemicState init(std::size_t vertex_count, VertexId origin) {
    if (vertex_count == 0) throw empty_graph_error();
    if (origin >= vertex_count) throw invalid_argument("origin vertex out of range");
    EpidemicState state;
    state.origin_ = origin;
    state.status_.assign(vertex_count, kSusceptible);
    state.status_[origin] = kInfected;
    state.infected_ = {origin};
    state.susceptible_ = vertex_count - 1;
    state.tally_.resize(vertex_count);
    return state;
  }

  template <class Sampler>
  static GenerationReport step(EpidemicState& state, Sampler& sampler, const EpidemicParams& params,
                               const DestinationTape& tape, const ShellMeter* meter) {
    if (state.infected_.empty()) throw illegal_state("step_generation called on an extinct state");
    const std::uint32_t epoch = ++state.epoch_;
    const std::uint32_t parasites = params.parasites_per_infection;
    auto& status = state.status_;
    auto& tally = state.tally_;
    state.touched_.clear();

    for (const VertexId x : state.infected_) {
      if (!sampler.prepare(x)) continue;
      RandomStream rng = tape.for_vertex(x);
      for (std::uint32_t k = 0; k < parasites; ++k) {
        const VertexId y = sampler.draw(x, rng);
        if (y == kNoVertex) break;
        if (status[y] != kSusceptible) continue;
        EpidemicState::Tally& t = tally[y];
        if (t.epoch != epoch) {
          t = {epoch, 1, x, 0};
          state.touched_.push_back(y);
        } else {
          ++t.count;
          if (t.last_origin == x) {
            t.cosame = 1;
          } else {
            t.last_origin = x;
          }
        }
      }
    }

    GenerationReport report;
    state.next_.clear();
    const bool cosame_only = params.mode == InfectionMode::cosame_only;
    for (const VertexId y : state.touched_) {
      const EpidemicState::Tally& t = tally[y];
      const bool infects = cosame_only ? t.cosame != 0 : t.count >= 2;
      if (!infects) continue;
      state.next_.push_back(y);
      if (t.cosame) ++report.cosame; else ++report.codiff;
    }

    for (const VertexId x : state.infected_) status[x] = kRemoved;
    state.removed_ += state.infected_.size();
    for (const VertexId y : state.next_) {
      status[y] = kInfected;
      if (meter) state.max_box_distance_ = std::max(state.max_box_distance_, meter->shell(y));
    }
    state.susceptible_ -= state.next_.size();
    state.infected_.swap(state.next_);
    ++state.generation_;

    report.generation = state.generation_;
    report.newly_infected = state.infected_.size();
    report.cumulative = state.cumulative_infected();
    report.box_distance = state.max_box_distance_;
    return report;
  }

  template <class Graph, class Sampler>
  static RunResult run(const Graph& graph, EpidemicState& state, const EpidemicParams& params,
                       const DestinationTape& tape, const GenerationObserver& observer, Sampler& sampler,
                       const ShellMeter* meter) {
    params.validate();
    if (state.vertex_count() != graph.vertex_count()) throw invalid_argument("state belongs to another graph");
    const std::uint64_t cap = params.generation_cap ? params.generation_cap : default_generation_cap(graph);
    const auto total = static_cast<double>(graph.vertex_count());

    RunResult result;
    GenerationReport initial;
    initial.generation = state.generation();
    initial.newly_infected = state.infected_count();
    initial.cumulative = state.cumulative_infected();
    initial.box_distance = state.max_box_distance();
    result.reports.push_back(initial);
    if (observer) observer(state);

    while (true) {
      const std::uint64_t cumulative = state.cumulative_infected();
      if (params.target_proportion < 1.0 && static_cast<double>(cumulative) >= params.target_proportion * total) {
        result.outcome = TargetReached{state.generation(), cumulative};
        break;
      }
      if (cumulative == graph.vertex_count()) {
        result.outcome = FullInvasion{state.generation()};
        break;
      }
      if (state.is_extinct()) {
        result.outcome = Extinct{state.generation(), cumulative};
        break;
      }
      if (state.generation() >= cap) {
        result.outcome = CapExceeded{state.generation(), cumulative, state.infected_count()};
        break;
      }
      result.reports.push_back(step(state, sampler, params, tape, meter));
      if (observer) observer(state);
    }
    return result;
  }
};

EpidemicState init_epidemic(const CompleteGraph& graph, const EpidemicParams& params, std::optional<VertexId> origin) {
  params.validate();
  return EpidemicAccess::init(graph.vertex_count(), origin.value_or(0));
}

EpidemicState init_epidemic(const GeometricGraph& graph, const EpidemicParams& params, std::optional<VertexId> origin) {
  params.validate();
  if (graph.vertex_count() == 0) throw empty_graph_error();
  return EpidemicAccess::init(graph.vertex_count(), origin ? *origin : closest_to_center(graph));
}

GenerationReport step_generation(const CompleteGraph& graph, EpidemicState& state, const EpidemicParams& params,
                                 const DestinationTape& tape) {
  params.validate();
  CompleteSampler sampler(graph);
  return EpidemicAccess::step(state, sampler, params, tape, nullptr);
}

GenerationReport step_generation(const GeometricGraph& graph, EpidemicState& state, const EpidemicParams& params,
                                 const DestinationTape& tape) {
  params.validate();
  GeometricSampler sampler(graph);
  const ShellMeter meter(graph, state.origin());
  return EpidemicAccess::step(state, sampler, params, tape, &meter);
}

RunResult run_to_absorption(const CompleteGraph& graph, EpidemicState& state, const EpidemicParams& params,
                            const DestinationTape& tape, const GenerationObserver& observer) {
  CompleteSampler sampler(graph);
  return EpidemicAccess::run(graph, state, params, tape, observer, sampler, nullptr);
}

RunResult run_to_absorption(const GeometricGraph& graph, EpidemicState& state, const EpidemicParams& params,
                            const DestinationTape& tape, const GenerationObserver& observer) {
  GeometricSampler sampler(graph);
  const ShellMeter meter(graph, state.origin());
  return EpidemicAccess::run(graph, state, params, tape, observer, sampler, &meter);
}

std::uint64_t wavefront_distance(const EpidemicState& state, const GeometricGraph& graph) {
  if (state.vertex_count() != graph.vertex_count()) throw invalid_argument("state belongs to another graph");
  const ShellMeter meter(graph, state.origin());
  std::uint64_t best = 0;
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    if (state.status(v) != HostStatus::susceptible) best = std::max(best, meter.shell(v));
  }
  return best;
}

std::uint64_t wavefront_distance(const EpidemicState&, const CompleteGraph&) {
  throw unsupported_topology("wavefront distance needs a geometric graph");
}

}  // namespace coopsim
