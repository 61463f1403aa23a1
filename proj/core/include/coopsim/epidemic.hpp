#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "coopsim/random.hpp"
#include "coopsim/rgg.hpp"

namespace coopsim {

enum class InfectionMode : std::uint8_t {
  full,         // any >= 2 attackers infect
  cosame_only,  // only >= 2 attackers released by one vertex infect
};

enum class HostStatus : std::uint8_t { susceptible, infected, removed };

struct EpidemicParams {
  std::uint32_t parasites_per_infection = 2;
  /// Informational: the a with parasites_per_infection = round(a sqrt(scale)).
  double cooperativity_a = std::numeric_limits<double>::quiet_NaN();
  /// Proportion u of hosts whose infection ends the run.
  double target_proportion = 1.0;
  InfectionMode mode = InfectionMode::full;
  /// 0 selects default_generation_cap() of the topology.
  std::uint64_t generation_cap = 0;

  void validate() const;
};

/// round(a * sqrt(degree_scale)); throws if that is below one parasite.
std::uint32_t parasites_for(double a, double degree_scale);

/// Complete graph on D vertices; neighbors of v are all other vertices.
class CompleteGraph {
 public:
  explicit CompleteGraph(std::uint64_t vertices);
  std::size_t vertex_count() const { return vertices_; }
  std::size_t degree(VertexId) const { return vertices_ - 1; }

 private:
  std::size_t vertices_;
};

CompleteGraph build_complete_graph(std::uint64_t vertices);

/// Source of parasite destinations. Vertex x always sends its parasites
/// along the draws of for_vertex(x), whichever generation it is infected in,
/// so two runs sharing a tape see identical per-vertex movement.
class DestinationTape {
 public:
  explicit DestinationTape(std::uint64_t key) : key_(key) {}
  static DestinationTape from(RandomStream& rng) { return DestinationTape(rng()); }
  RandomStream for_vertex(VertexId v) const { return RandomStream(key_).split(v); }
  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
};

struct GenerationReport {
  std::uint64_t generation = 0;
  std::uint64_t newly_infected = 0;
  std::uint64_t cumulative = 0;
  std::uint64_t box_distance = 0;
  std::uint64_t cosame = 0;
  std::uint64_t codiff = 0;
};

/// (S_g, I_g, R_g) partition plus bookkeeping of one run. Holds the
/// per-target attack tally as scratch so a generation allocates nothing.
class EpidemicState {
 public:
  std::uint64_t generation() const { return generation_; }
  VertexId origin() const { return origin_; }
  std::size_t vertex_count() const { return status_.size(); }
  std::size_t susceptible_count() const { return susceptible_; }
  std::size_t infected_count() const { return infected_.size(); }
  std::size_t removed_count() const { return removed_; }
  /// Hosts infected so far, |I_0| + ... + |I_g|.
  std::uint64_t cumulative_infected() const { return infected_.size() + removed_; }
  HostStatus status(VertexId v) const { return static_cast<HostStatus>(status_.at(v)); }
  /// I_g, in the order the infections were recorded.
  std::span<const VertexId> infected() const { return infected_; }
  bool is_extinct() const { return infected_.empty(); }
  /// Farthest radius/2 shell reached so far (geometric graphs only).
  std::uint64_t max_box_distance() const { return max_box_distance_; }

  /// Full O(V) check of the partition and counting invariants.
  bool check_invariants() const;

 private:
  friend struct EpidemicAccess;

  struct Tally {
    std::uint32_t epoch = 0;
    std::uint32_t count = 0;
    std::uint32_t last_origin = 0;
    std::uint32_t cosame = 0;
  };

  std::uint64_t generation_ = 0;
  VertexId origin_ = 0;
  std::vector<std::uint8_t> status_;
  std::vector<VertexId> infected_;
  std::size_t susceptible_ = 0;
  std::size_t removed_ = 0;
  std::uint64_t max_box_distance_ = 0;

  std::vector<Tally> tally_;
  std::vector<VertexId> touched_;
  std::vector<VertexId> next_;
  std::uint32_t epoch_ = 0;
};

struct Extinct {
  std::uint64_t generation = 0;
  std::uint64_t cumulative = 0;
};
struct TargetReached {
  std::uint64_t generation = 0;
  std::uint64_t cumulative = 0;
};
/// Every host infected; generation is the invasion time T.
struct FullInvasion {
  std::uint64_t generation = 0;
};
struct CapExceeded {
  std::uint64_t generation = 0;
  std::uint64_t cumulative = 0;
  std::uint64_t infected = 0;
};
using Outcome = std::variant<Extinct, TargetReached, FullInvasion, CapExceeded>;

/// True for TargetReached and FullInvasion.
bool invaded(const Outcome& outcome);
const char* outcome_name(const Outcome& outcome);

struct RunResult {
  Outcome outcome;
  /// Report of generation 0 followed by one report per executed step.
  std::vector<GenerationReport> reports;
};

/// Called with the state after initialization and after each step;
/// state.infected() is then the set of hosts infected in that generation.
using GenerationObserver = std::function<void(const EpidemicState&)>;

std::uint64_t default_generation_cap(const CompleteGraph& graph);
std::uint64_t default_generation_cap(const GeometricGraph& graph);

/// I_0 = {origin}: vertex 0 on complete graphs, closest_to_center() on
/// geometric graphs unless given explicitly.
EpidemicState init_epidemic(const CompleteGraph& graph, const EpidemicParams& params,
                            std::optional<VertexId> origin = std::nullopt);
EpidemicState init_epidemic(const GeometricGraph& graph, const EpidemicParams& params,
                            std::optional<VertexId> origin = std::nullopt);

/// One generation: every infected vertex releases its parasites to uniform
/// random neighbors, susceptible targets attacked cooperatively become I_{g+1},
/// I_g moves to R. Throws illegal_state on an extinct state.
GenerationReport step_generation(const CompleteGraph& graph, EpidemicState& state,
                                 const EpidemicParams& params, const DestinationTape& tape);
GenerationReport step_generation(const GeometricGraph& graph, EpidemicState& state,
                                 const EpidemicParams& params, const DestinationTape& tape);

RunResult run_to_absorption(const CompleteGraph& graph, EpidemicState& state, const EpidemicParams& params,
                            const DestinationTape& tape, const GenerationObserver& observer = {});
RunResult run_to_absorption(const GeometricGraph& graph, EpidemicState& state, const EpidemicParams& params,
                            const DestinationTape& tape, const GenerationObserver& observer = {});

/// max over I_g and R_g of floor(distance(x, origin) / (radius / 2)).
std::uint64_t wavefront_distance(const EpidemicState& state, const GeometricGraph& graph);
/// Complete graphs carry no geometry: always throws unsupported_topology.
std::uint64_t wavefront_distance(const EpidemicState& state, const CompleteGraph& graph);

}  // namespace coopsim
