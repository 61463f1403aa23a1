#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "coopsim/random.hpp"

namespace coopsim {

struct Cube {
  int dimension = 1;
  friend bool operator==(const Cube&, const Cube&) = default;
};

/// Unit 2-sphere embedded in R^3; distances are geodesic angles.
struct Sphere2 {
  friend bool operator==(const Sphere2&, const Sphere2&) = default;
};

/// Ambient metric space: [0,1]^n with the maximum metric, or the unit 2-sphere.
class SpaceSpec {
 public:
  static SpaceSpec cube(int dimension);
  static SpaceSpec sphere2() { return SpaceSpec(Sphere2{}); }

  bool is_cube() const { return std::holds_alternative<Cube>(kind_); }
  bool is_sphere() const { return std::holds_alternative<Sphere2>(kind_); }

  /// Manifold dimension: n for the cube, 2 for the sphere.
  int dimension() const;
  /// Number of stored coordinates per point: n for the cube, 3 for the sphere.
  int coord_dim() const { return is_cube() ? std::get<Cube>(kind_).dimension : 3; }
  /// Volume that the Poisson intensity is multiplied by to get the expected count.
  double poisson_volume() const { return 1.0; }

  std::string name() const;

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

 private:
  explicit SpaceSpec(std::variant<Cube, Sphere2> kind) : kind_(kind) {}
  std::variant<Cube, Sphere2> kind_;
};

using Point = std::span<const double>;

inline double max_metric(Point p, Point q) noexcept {
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) d = std::max(d, std::abs(p[i] - q[i]));
  return d;
}

inline double geodesic_angle(Point p, Point q) noexcept {
  const double dot = p[0] * q[0] + p[1] * q[1] + p[2] * q[2];
  return std::acos(std::clamp(dot, -1.0, 1.0));
}

/// Metric of `space`; throws invalid_argument on a dimension mismatch.
double distance(const SpaceSpec& space, Point p, Point q);

/// Same as distance() but without argument validation (hot loops).
inline double distance_unchecked(const SpaceSpec& space, Point p, Point q) noexcept {
  return space.is_cube() ? max_metric(p, q) : geodesic_angle(p, q);
}

/// Polar sampling of a uniform point on the unit sphere:
/// theta = 2 pi u1, phi = arccos(1 - 2 u2).
std::array<double, 3> sphere_point_from_uniforms(double u1, double u2) noexcept;

/// Host locations: a dense, immutable sequence of points in one space.
/// Coordinates are stored flat with stride space.coord_dim().
class PointSet {
 public:
  PointSet(SpaceSpec space, std::vector<double> coords, double intensity);

  const SpaceSpec& space() const { return space_; }
  double intensity() const { return intensity_; }
  std::size_t size() const { return coords_.size() / stride_; }
  bool empty() const { return coords_.empty(); }
  std::size_t stride() const { return stride_; }

  Point operator[](std::size_t i) const { return {coords_.data() + i * stride_, stride_}; }
  std::span<const double> coords() const { return coords_; }

  /// New point set whose i-th point is this set's order[i]-th point.
  PointSet permuted(std::span<const std::uint32_t> order) const;

 private:
  SpaceSpec space_;
  std::size_t stride_;
  std::vector<double> coords_;
  double intensity_;
};

/// Homogeneous Poisson point process of the given intensity on `space`.
/// For the sphere the total count is Poisson(intensity) on the unit sphere.
PointSet sample_point_set(const SpaceSpec& space, double intensity, RandomStream& rng);

/// Center used to pick the initially infected vertex: (1/2,...,1/2) on the
/// cube, the north pole (0,0,1) on the sphere.
std::vector<double> reference_center(const SpaceSpec& space);

}  // namespace coopsim
