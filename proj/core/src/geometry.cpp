#include "coopsim/geometry.hpp"

#include <numbers>
#include <random>

#include "coopsim/errors.hpp"

namespace coopsim {

SpaceSpec SpaceSpec::cube(int dimension) {
  if (dimension < 1) throw invalid_argument("cube dimension must be at least 1");
  return SpaceSpec(Cube{dimension});
}

int SpaceSpec::dimension() const {
  return is_cube() ? std::get<Cube>(kind_).dimension : 2;
}

std::string SpaceSpec::name() const {
  if (is_sphere()) return "sphere2";
  return "cube" + std::to_string(dimension());
}

double distance(const SpaceSpec& space, Point p, Point q) {
  const auto dim = static_cast<std::size_t>(space.coord_dim());
  if (p.size() != dim || q.size() != dim) {
    throw invalid_argument("point dimension does not match space " + space.name());
  }
  return distance_unchecked(space, p, q);
}

std::array<double, 3> sphere_point_from_uniforms(double u1, double u2) noexcept {
  const double theta = 2.0 * std::numbers::pi * u1;
  const double phi = std::acos(1.0 - 2.0 * u2);
  const double s = std::sin(phi);
  return {s * std::cos(theta), s * std::sin(theta), std::cos(phi)};
}

PointSet::PointSet(SpaceSpec space, std::vector<double> coords, double intensity)
    : space_(space),
      stride_(static_cast<std::size_t>(space.coord_dim())),
      coords_(std::move(coords)),
      intensity_(intensity) {
  if (coords_.size() % stride_ != 0) {
    throw invalid_argument("coordinate count is not a multiple of the space dimension");
  }
  if (space_.is_cube()) {
    for (double c : coords_) {
      if (!(c >= 0.0 && c <= 1.0)) throw invalid_argument("cube coordinate outside [0,1]");
    }
  } else {
    for (std::size_t i = 0; i < size(); ++i) {
      const Point p = (*this)[i];
      const double norm2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
      if (!(std::abs(norm2 - 1.0) < 1e-12)) throw invalid_argument("sphere point is not a unit vector");
    }
  }
}

PointSet PointSet::permuted(std::span<const std::uint32_t> order) const {
  if (order.size() != size()) throw invalid_argument("permutation size mismatch");
  std::vector<double> out(coords_.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Point p = (*this)[order[i]];
    std::copy(p.begin(), p.end(), out.begin() + static_cast<std::ptrdiff_t>(i * stride_));
  }
  return PointSet(space_, std::move(out), intensity_);
}

PointSet sample_point_set(const SpaceSpec& space, double intensity, RandomStream& rng) {
  if (!(intensity > 0.0) || !std::isfinite(intensity)) {
    throw invalid_argument("intensity must be positive");
  }
  std::poisson_distribution<std::int64_t> count_dist(intensity * space.poisson_volume());
  const auto count = static_cast<std::size_t>(count_dist(rng));
  const auto stride = static_cast<std::size_t>(space.coord_dim());
  std::vector<double> coords(count * stride);
  if (space.is_cube()) {
    for (double& c : coords) c = rng.uniform01();
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const double u1 = rng.uniform01();
      const double u2 = rng.uniform01();
      const auto p = sphere_point_from_uniforms(u1, u2);
      std::copy(p.begin(), p.end(), coords.begin() + static_cast<std::ptrdiff_t>(i * 3));
    }
  }
  return PointSet(space, std::move(coords), intensity);
}

std::vector<double> reference_center(const SpaceSpec& space) {
  if (space.is_sphere()) return {0.0, 0.0, 1.0};
  return std::vector<double>(static_cast<std::size_t>(space.dimension()), 0.5);
}

}  // namespace coopsim
