#include "coopsim/oracles.hpp"

#include <string>

#include "coopsim/errors.hpp"

namespace coopsim {
namespace {

// boxes^balls, or bound + 1 once it passes the bound.
std::uint64_t placements(std::uint64_t boxes, std::uint64_t balls, std::uint64_t bound) {
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < balls; ++i) {
    if (boxes == 0) return 0;
    if (total > bound / boxes) return bound + 1;
    total *= boxes;
  }
  return total;
}

// Calls visit(occupancy) once per placement of `balls` balls into `boxes`
// boxes, maintaining the occupancy vector incrementally.
template <class Visit>
void for_each_placement(std::uint64_t balls, std::uint64_t boxes, Visit&& visit) {
  std::vector<std::uint32_t> choice(balls, 0);
  std::vector<std::uint32_t> occupancy(boxes, 0);
  if (balls > 0) occupancy[0] = static_cast<std::uint32_t>(balls);
  while (true) {
    visit(occupancy);
    std::size_t i = 0;
    while (i < balls) {
      --occupancy[choice[i]];
      if (++choice[i] < boxes) {
        ++occupancy[choice[i]];
        break;
      }
      choice[i] = 0;
      ++occupancy[0];
      ++i;
    }
    if (i == balls) return;
  }
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<double> convolution_power(const std::vector<double>& law, std::uint64_t times) {
  std::vector<double> result{1.0};
  std::vector<double> base = law;
  while (times > 0) {
    if (times & 1) result = convolve(result, base);
    times >>= 1;
    if (times > 0) base = convolve(base, base);
  }
  return result;
}

}  // namespace

std::vector<double> CountedLaw::probabilities() const {
  std::vector<double> p(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) p[k] = probability(k);
  return p;
}

double balls_boxes_event_prob(std::uint64_t balls, std::uint64_t boxes, std::uint64_t k, std::uint64_t h) {
  if (boxes == 0) throw invalid_argument("need at least one box");
  if (h > boxes) throw invalid_argument("protected suffix longer than the box count");
  const std::uint64_t total = placements(boxes, balls, kEnumerationBound);
  if (total > kEnumerationBound)
    throw enumeration_bound_exceeded(std::to_string(boxes) + "^" + std::to_string(balls) + " placements");
  if (k > balls / 2) return 0.0;
  const std::uint64_t prefix = boxes - h;
  std::uint64_t hits = 0;
  for_each_placement(balls, boxes, [&](const std::vector<std::uint32_t>& occ) {
    std::uint64_t doubles = 0;
    for (std::uint64_t b = 0; b < boxes; ++b) {
      if (occ[b] <= 1) continue;
      if (occ[b] > 2 || b >= prefix) return;
      ++doubles;
    }
    if (doubles == k) ++hits;
  });
  return static_cast<double>(hits) / static_cast<double>(total);
}

CountedLaw exact_first_generation_law(std::uint64_t vertices, std::uint64_t parasites) {
  if (vertices < 2) throw invalid_argument("complete graph needs at least two vertices");
  const std::uint64_t targets = vertices - 1;
  const std::uint64_t total = placements(targets, parasites, kEnumerationBound);
  if (total > kEnumerationBound)
    throw enumeration_bound_exceeded(std::to_string(targets) + "^" + std::to_string(parasites) + " placements");
  CountedLaw law;
  law.total = total;
  law.counts.assign(parasites / 2 + 1, 0);
  for_each_placement(parasites, targets, [&](const std::vector<std::uint32_t>& occ) {
    std::size_t hit = 0;
    for (std::uint32_t c : occ) hit += c >= 2;
    ++law.counts[hit];
  });
  return law;
}

std::vector<double> exact_dbpc_step_law(const DbpcParams& params, std::uint64_t k) {
  if (params.offspring.is_poisson() || params.cooperation.is_poisson())
    throw invalid_argument("exact step law needs table laws");
  const auto& offspring = params.offspring.weights();
  const auto& cooperation = params.cooperation.weights();
  const std::uint64_t pairs = pairs_of(k);
  const double support = static_cast<double>(k) * static_cast<double>(offspring.size() - 1) +
                         static_cast<double>(pairs) * static_cast<double>(cooperation.size() - 1) + 1.0;
  if (support > static_cast<double>(kSupportBound))
    throw enumeration_bound_exceeded("convolution support of " + std::to_string(support) + " points");
  return convolve(convolution_power(offspring, k), convolution_power(cooperation, pairs));
}

}  // namespace coopsim
