#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "coopsim/geometry.hpp"
#include "coopsim/spatial_index.hpp"

namespace coopsim {

using VertexId = std::uint32_t;

/// Scaling parameters of the random geometric graph.
///
/// Cube:   radius = 1/2 N^((beta-1)/n), expected_degree = (2 radius)^n N = N^beta.
/// Sphere: radius = arccos(1 - 2 N^(beta-1)), chosen so that a spherical cap
///         of that angular radius holds N^beta of the Poisson(N) points.
struct RggParams {
  double intensity = 0.0;
  double beta = 0.0;
  int dimension = 1;
  double radius = 0.0;
  double expected_degree = 0.0;

  static RggParams derive(const SpaceSpec& space, double intensity, double beta);
};

/// Random geometric graph held implicitly as points + grid index with cell
/// size equal to the connection radius. Adjacency: distance <= radius.
class GeometricGraph {
 public:
  GeometricGraph(PointSet points, RggParams params);
  GeometricGraph(std::shared_ptr<const PointSet> points, RggParams params);

  std::size_t vertex_count() const { return points_->size(); }
  const PointSet& points() const { return *points_; }
  const SpaceSpec& space() const { return points_->space(); }
  const RggParams& params() const { return params_; }
  double radius() const { return params_.radius; }
  const GridIndex& index() const { return index_; }

  std::vector<VertexId> neighbors(VertexId v) const { return index_.neighbors_within(v, params_.radius); }
  void neighbors(VertexId v, std::vector<VertexId>& out) const { index_.neighbors_within(v, params_.radius, out); }

 private:
  std::shared_ptr<const PointSet> points_;
  RggParams params_;
  GridIndex index_;
};

/// Reorder points so that ids follow the grid's bucket order and, inside a
/// bucket, ascending last coordinate. Graphs built from such a set answer
/// neighbor queries with contiguous id ranges.
PointSet sort_into_grid_order(const PointSet& points, double cell_size);

/// Sample a fresh Poisson point set and wire it up as a geometric graph.
GeometricGraph build_rgg(const SpaceSpec& space, double intensity, double beta, RandomStream& rng);

/// Vertex nearest to the space's reference center; ties go to the lowest id.
VertexId closest_to_center(const GeometricGraph& graph);

std::size_t degree(const GeometricGraph& graph, VertexId v);

struct DegreeStats {
  std::size_t interior_count = 0;
  std::size_t min = 0;
  std::size_t max = 0;
  double mean = 0.0;
};

/// Degree statistics over interior vertices: on the cube those farther than
/// the radius from the boundary, on the sphere every vertex.
DegreeStats degree_stats(const GeometricGraph& graph);

/// Concentration band N^beta +- (2n+1) N^(((n-1) beta + gamma)/n) with
/// gamma = 3 beta / (3 + n).
struct DegreeBand {
  double center = 0.0;
  double half_width = 0.0;
  bool contains(double d) const { return d >= center - half_width && d <= center + half_width; }
};
DegreeBand degree_band(const RggParams& params);

/// Fraction of interior vertices whose degree lies inside degree_band().
double degree_band_rate(const GeometricGraph& graph);

bool is_interior(const GeometricGraph& graph, VertexId v);

/// Breadth-first search over implicit neighbors.
bool is_connected(const GeometricGraph& graph);

/// CSV dump `id,x0,...` (cube) or `id,x,y,z` (sphere).
void write_points_csv(std::ostream& out, const PointSet& points);

}  // namespace coopsim
