#pragma once

#include <vector>

#include "coopsim/rgg.hpp"

namespace fixtures {

// Geometric graph on hand-placed points with an explicit radius.
inline coopsim::GeometricGraph graph_on(const coopsim::SpaceSpec& space, std::vector<double> coords, double radius) {
  coopsim::RggParams params;
  params.intensity = 1.0;
  params.beta = 0.5;
  params.dimension = space.dimension();
  params.radius = radius;
  params.expected_degree = 1.0;
  return coopsim::GeometricGraph(coopsim::PointSet(space, std::move(coords), 1.0), params);
}

inline coopsim::GeometricGraph line_graph(std::vector<double> xs, double radius) {
  return graph_on(coopsim::SpaceSpec::cube(1), std::move(xs), radius);
}

}  // namespace fixtures
