#include <doctest.h>

#include <array>
#include <random>
#include <set>
#include <vector>

#include "coopsim/random.hpp"
#include "stats.hpp"

using coopsim::RandomStream;

TEST_CASE("streams are reproducible from their key") {
  RandomStream a(42);
  RandomStream b(42);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
  CHECK(a.position() == 100);
}

TEST_CASE("split streams differ from each other and from the parent") {
  const RandomStream base(7);
  std::set<std::uint64_t> firsts;
  for (std::uint64_t tag = 0; tag < 1000; ++tag) {
    RandomStream child = base.split(tag);
    firsts.insert(child());
  }
  CHECK(firsts.size() == 1000);
  RandomStream parent = base;
  RandomStream child = base.split(0);
  CHECK(parent() != child());
}

TEST_CASE("derive addresses (seed, experiment, replicate)") {
  RandomStream x = RandomStream::derive(1, 2, 3);
  RandomStream y = RandomStream(1).split(2).split(3);
  CHECK(x() == y());
  RandomStream z = RandomStream::derive(1, 3, 2);
  RandomStream w = RandomStream::derive(1, 2, 3);
  CHECK(z() != w());
}

TEST_CASE("uniform01 lies in [0,1) and below(n) in [0,n)") {
  RandomStream rng(3);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    REQUIRE(rng.below(7) < 7);
  }
  CHECK(rng.below(1) == 0);
}

TEST_CASE("below(n) is uniform") {
  RandomStream rng(11);
  constexpr int bins = 10;
  std::vector<double> counts(bins, 0.0);
  constexpr int n = 200000;
  for (int i = 0; i < n; ++i) counts[rng.below(bins)] += 1.0;
  const auto fit = test_stats::chi_square(counts, std::vector<double>(bins, 1.0 / bins), n);
  CHECK_FALSE(fit.rejects(0.001));
}

TEST_CASE("sibling replicate streams are uncorrelated") {
  const RandomStream base(99);
  constexpr int n = 100000;
  double sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    RandomStream a = base.split(2 * i);
    RandomStream b = base.split(2 * i + 1);
    sxy += (a.uniform01() - 0.5) * (b.uniform01() - 0.5);
  }
  // each product has variance 1/144
  CHECK(std::abs(sxy / n) < 4.0 * std::sqrt(1.0 / 144.0 / n));
}

TEST_CASE("works with standard distributions") {
  RandomStream rng(5);
  std::poisson_distribution<int> poisson(4.0);
  double sum = 0.0;
  constexpr int n = 100000;
  for (int i = 0; i < n; ++i) sum += poisson(rng);
  CHECK(sum / n == doctest::Approx(4.0).epsilon(0.02));
}
