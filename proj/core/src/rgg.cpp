#include "coopsim/rgg.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <numeric>
#include <ostream>
#include <tuple>

#include "coopsim/errors.hpp"

namespace coopsim {

RggParams RggParams::derive(const SpaceSpec& space, double intensity, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw invalid_argument("beta must lie in (0,1)");
  if (!(intensity >= 1.0) || !std::isfinite(intensity)) throw invalid_argument("intensity must be at least 1");
  RggParams p;
  p.intensity = intensity;
  p.beta = beta;
  p.dimension = space.dimension();
  p.expected_degree = std::pow(intensity, beta);
  if (space.is_cube()) {
    p.radius = 0.5 * std::pow(intensity, (beta - 1.0) / p.dimension);
  } else {
    p.radius = std::acos(1.0 - 2.0 * std::pow(intensity, beta - 1.0));
  }
  return p;
}

GeometricGraph::GeometricGraph(PointSet points, RggParams params)
    : GeometricGraph(std::make_shared<const PointSet>(std::move(points)), params) {}

GeometricGraph::GeometricGraph(std::shared_ptr<const PointSet> points, RggParams params)
    : points_(std::move(points)), params_(params), index_(points_, params.radius) {}

PointSet sort_into_grid_order(const PointSet& points, double cell_size) {
  const GridIndex layout(std::make_shared<const PointSet>(points.space(), std::vector<double>{}, points.intensity()),
                         cell_size);
  const std::size_t last = points.stride() - 1;
  const bool by_last = points.space().is_cube();
  std::vector<std::tuple<std::uint64_t, double, std::uint32_t>> keyed(points.size());
  for (std::uint32_t i = 0; i < points.size(); ++i) {
    keyed[i] = {layout.cell_key(points[i]), by_last ? points[i][last] : 0.0, i};
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::uint32_t> order(points.size());
  for (std::size_t i = 0; i < keyed.size(); ++i) order[i] = std::get<2>(keyed[i]);
  return points.permuted(order);
}

GeometricGraph build_rgg(const SpaceSpec& space, double intensity, double beta, RandomStream& rng) {
  const RggParams params = RggParams::derive(space, intensity, beta);
  PointSet sampled = sample_point_set(space, intensity, rng);
  return GeometricGraph(sort_into_grid_order(sampled, params.radius), params);
}

VertexId closest_to_center(const GeometricGraph& graph) {
  if (graph.vertex_count() == 0) throw empty_graph_error();
  const std::vector<double> center = reference_center(graph.space());
  VertexId best = 0;
  double best_d = distance_unchecked(graph.space(), graph.points()[0], center);
  for (VertexId v = 1; v < graph.vertex_count(); ++v) {
    const double d = distance_unchecked(graph.space(), graph.points()[v], center);
    if (d < best_d) {
      best_d = d;
      best = v;
    }
  }
  return best;
}

std::size_t degree(const GeometricGraph& graph, VertexId v) {
  return graph.index().count_within(v, graph.radius());
}

bool is_interior(const GeometricGraph& graph, VertexId v) {
  if (!graph.space().is_cube()) return true;
  const double r = graph.radius();
  for (double x : graph.points()[v]) {
    if (!(x > r && 1.0 - x > r)) return false;
  }
  return true;
}

DegreeStats degree_stats(const GeometricGraph& graph) {
  DegreeStats stats;
  double sum = 0.0;
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    if (!is_interior(graph, v)) continue;
    const std::size_t d = degree(graph, v);
    if (stats.interior_count == 0) {
      stats.min = stats.max = d;
    } else {
      stats.min = std::min(stats.min, d);
      stats.max = std::max(stats.max, d);
    }
    ++stats.interior_count;
    sum += static_cast<double>(d);
  }
  if (stats.interior_count > 0) stats.mean = sum / static_cast<double>(stats.interior_count);
  return stats;
}

DegreeBand degree_band(const RggParams& params) {
  const double n = params.dimension;
  const double gamma = 3.0 * params.beta / (3.0 + n);
  DegreeBand band;
  band.center = std::pow(params.intensity, params.beta);
  band.half_width = (2.0 * n + 1.0) * std::pow(params.intensity, ((n - 1.0) * params.beta + gamma) / n);
  return band;
}

double degree_band_rate(const GeometricGraph& graph) {
  const DegreeBand band = degree_band(graph.params());
  std::size_t interior = 0;
  std::size_t inside = 0;
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    if (!is_interior(graph, v)) continue;
    ++interior;
    if (band.contains(static_cast<double>(degree(graph, v)))) ++inside;
  }
  return interior == 0 ? 1.0 : static_cast<double>(inside) / static_cast<double>(interior);
}

bool is_connected(const GeometricGraph& graph) {
  const std::size_t count = graph.vertex_count();
  if (count == 0) throw empty_graph_error();
  const GridIndex& index = graph.index();
  const SpaceSpec& space = graph.space();
  const double r = graph.radius();

  // next_unvisited[s]: smallest unvisited slot >= s (path-compressed skip list)
  std::vector<std::uint32_t> next_unvisited(count + 1);
  std::iota(next_unvisited.begin(), next_unvisited.end(), 0u);
  auto find = [&](std::uint32_t s) {
    std::uint32_t root = s;
    while (next_unvisited[root] != root) root = next_unvisited[root];
    while (next_unvisited[s] != root) s = std::exchange(next_unvisited[s], root);
    return root;
  };
  auto visit = [&](std::uint32_t slot) { next_unvisited[slot] = slot + 1; };

  std::deque<VertexId> queue{0};
  visit(index.slot_of(0));
  std::size_t visited = 1;
  std::vector<SlotRun> runs;
  while (!queue.empty()) {
    const VertexId u = queue.front();
    queue.pop_front();
    const Point pu = graph.points()[u];
    index.candidate_runs(u, r, runs);
    for (const SlotRun& run : runs) {
      for (std::uint32_t s = find(run.begin); s < run.end; s = find(s + 1)) {
        const VertexId w = index.slot_to_id(s);
        if (index.runs_exact() || distance_unchecked(space, pu, graph.points()[w]) <= r) {
          visit(s);
          ++visited;
          queue.push_back(w);
        }
      }
    }
  }
  return visited == count;
}

void write_points_csv(std::ostream& out, const PointSet& points) {
  const bool sphere = points.space().is_sphere();
  out << "id";
  if (sphere) {
    out << ",x,y,z";
  } else {
    for (std::size_t d = 0; d < points.stride(); ++d) out << ",x" << d;
  }
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << i;
    for (double c : points[i]) {
      const auto res = std::to_chars(buf, buf + sizeof buf, c);
      out << ',' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
    }
    out << '\n';
  }
}

}  // namespace coopsim
