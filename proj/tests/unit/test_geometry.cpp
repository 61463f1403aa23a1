#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "coopsim/errors.hpp"
#include "coopsim/geometry.hpp"
#include "stats.hpp"

using namespace coopsim;

namespace {

std::vector<double> random_point(const SpaceSpec& space, RandomStream& rng) {
  if (space.is_sphere()) {
    const auto p = sphere_point_from_uniforms(rng.uniform01(), rng.uniform01());
    return {p.begin(), p.end()};
  }
  std::vector<double> p(static_cast<std::size_t>(space.dimension()));
  for (double& x : p) x = rng.uniform01();
  return p;
}

}  // namespace

TEST_CASE("max metric on the cube") {
  const std::array<double, 2> p{0.1, 0.2};
  const std::array<double, 2> q{0.4, 0.1};
  CHECK(distance(SpaceSpec::cube(2), p, q) == doctest::Approx(0.3));
}

TEST_CASE("geodesic angle on the sphere") {
  const std::array<double, 3> x{1, 0, 0};
  const std::array<double, 3> y{0, 1, 0};
  const std::array<double, 3> z{-1, 0, 0};
  CHECK(distance(SpaceSpec::sphere2(), x, y) == doctest::Approx(std::numbers::pi / 2));
  CHECK(distance(SpaceSpec::sphere2(), x, z) == doctest::Approx(std::numbers::pi));
  CHECK(distance(SpaceSpec::sphere2(), x, x) == 0.0);
}

TEST_CASE("distance rejects mismatched dimensions") {
  const std::array<double, 2> p{0.1, 0.2};
  const std::array<double, 3> q{0.4, 0.1, 0.3};
  CHECK_THROWS_AS(distance(SpaceSpec::cube(2), p, q), coopsim::invalid_argument);
  CHECK_THROWS_AS(distance(SpaceSpec::sphere2(), p, p), coopsim::invalid_argument);
  CHECK_THROWS_AS(SpaceSpec::cube(0), coopsim::invalid_argument);
}

TEST_CASE("distance is a metric on random triples") {
  RandomStream rng(1);
  for (const SpaceSpec& space : {SpaceSpec::cube(1), SpaceSpec::cube(2), SpaceSpec::cube(3), SpaceSpec::sphere2()}) {
    for (int i = 0; i < 2000; ++i) {
      const auto a = random_point(space, rng);
      const auto b = random_point(space, rng);
      const auto c = random_point(space, rng);
      const double ab = distance(space, a, b);
      REQUIRE(ab >= 0.0);
      REQUIRE(ab == distance(space, b, a));
      REQUIRE(distance(space, a, a) == doctest::Approx(0.0).epsilon(1e-7));
      REQUIRE(ab <= distance(space, a, c) + distance(space, c, b) + 1e-9);
    }
  }
}

TEST_CASE("polar sphere sampling") {
  const auto p = sphere_point_from_uniforms(0.5, 0.5);
  CHECK(p[0] == doctest::Approx(-1.0));
  CHECK(std::abs(p[1]) < 1e-12);
  CHECK(std::abs(p[2]) < 1e-12);
}

TEST_CASE("point sets validate their coordinates") {
  CHECK_THROWS_AS(PointSet(SpaceSpec::cube(1), {1.5}, 1.0), coopsim::invalid_argument);
  CHECK_THROWS_AS(PointSet(SpaceSpec::cube(2), {0.5}, 1.0), coopsim::invalid_argument);
  CHECK_THROWS_AS(PointSet(SpaceSpec::sphere2(), {1.0, 1.0, 0.0}, 1.0), coopsim::invalid_argument);
  const PointSet ok(SpaceSpec::cube(1), {0.0, 1.0}, 1.0);
  CHECK(ok.size() == 2);
  RandomStream rng(0);
  CHECK_THROWS_AS(sample_point_set(SpaceSpec::cube(1), 0.0, rng), coopsim::invalid_argument);
  CHECK_THROWS_AS(sample_point_set(SpaceSpec::cube(1), -3.0, rng), coopsim::invalid_argument);
}

TEST_CASE("point counts fit Poisson(intensity)") {
  RandomStream rng(2);
  std::vector<std::uint64_t> counts;
  for (int i = 0; i < 500; ++i) counts.push_back(sample_point_set(SpaceSpec::cube(1), 1000.0, rng).size());
  CHECK_FALSE(test_stats::poisson_fit(counts, 1000.0).rejects(0.01));
}

TEST_CASE("quadrant counts fit Poisson(2.5)") {
  RandomStream rng(3);
  std::vector<std::uint64_t> counts;
  for (int i = 0; i < 1000; ++i) {
    const PointSet ps = sample_point_set(SpaceSpec::cube(2), 10.0, rng);
    std::array<std::uint64_t, 4> q{};
    for (std::size_t k = 0; k < ps.size(); ++k) q[(ps[k][0] >= 0.5 ? 1 : 0) + (ps[k][1] >= 0.5 ? 2 : 0)]++;
    counts.insert(counts.end(), q.begin(), q.end());
  }
  CHECK_FALSE(test_stats::poisson_fit(counts, 2.5).rejects(0.01));
}

TEST_CASE("counts in disjoint half-cubes are uncorrelated") {
  RandomStream rng(4);
  constexpr int reps = 10000;
  std::vector<double> left(reps);
  std::vector<double> right(reps);
  for (int i = 0; i < reps; ++i) {
    const PointSet ps = sample_point_set(SpaceSpec::cube(2), 50.0, rng);
    for (std::size_t k = 0; k < ps.size(); ++k) (ps[k][0] < 0.5 ? left : right)[i] += 1.0;
  }
  double ml = 0.0;
  double mr = 0.0;
  for (int i = 0; i < reps; ++i) {
    ml += left[i];
    mr += right[i];
  }
  ml /= reps;
  mr /= reps;
  std::vector<double> prod(reps);
  double cov = 0.0;
  for (int i = 0; i < reps; ++i) cov += prod[i] = (left[i] - ml) * (right[i] - mr);
  cov /= reps;
  double var = 0.0;
  for (double p : prod) var += (p - cov) * (p - cov);
  const double se = std::sqrt(var / reps / reps);
  CHECK(std::abs(cov) < 3.0 * se);
}

TEST_CASE("sphere samples are unit vectors with uniform z") {
  RandomStream rng(5);
  const PointSet ps = sample_point_set(SpaceSpec::sphere2(), 1e5, rng);
  std::vector<double> z;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Point p = ps[i];
    REQUIRE(std::abs(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - 1.0) < 1e-12);
    z.push_back(p[2]);
  }
  CHECK(test_stats::ks_uniform(z, -1.0, 1.0) < test_stats::ks_critical_001(z.size()));
}

TEST_CASE("reference centers") {
  CHECK(reference_center(SpaceSpec::cube(3)) == std::vector<double>{0.5, 0.5, 0.5});
  CHECK(reference_center(SpaceSpec::sphere2()) == std::vector<double>{0.0, 0.0, 1.0});
}
