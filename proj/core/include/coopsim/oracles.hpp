#pragma once

#include <cstdint>
#include <vector>

#include "coopsim/dbpc.hpp"

namespace coopsim {

/// Enumeration limit shared by the placement oracles.
inline constexpr std::uint64_t kEnumerationBound = 10'000'000;
/// Largest support the convolution oracle will build.
inline constexpr std::uint64_t kSupportBound = 1'000'000;

/// Exact law as integer counts over equally likely placements.
struct CountedLaw {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  double probability(std::size_t k) const {
    return k < counts.size() ? static_cast<double>(counts[k]) / static_cast<double>(total) : 0.0;
  }
  std::vector<double> probabilities() const;
};

/// P(exactly k of the first boxes - h boxes hold exactly two balls and every
/// other box holds at most one), by enumerating all boxes^balls placements.
/// Throws enumeration_bound_exceeded beyond kEnumerationBound placements.
double balls_boxes_event_prob(std::uint64_t balls, std::uint64_t boxes, std::uint64_t k, std::uint64_t h);

/// Law of |I_1| on the complete graph with D vertices: the number of the D-1
/// targets hit at least twice by V uniform throws.
CountedLaw exact_first_generation_law(std::uint64_t vertices, std::uint64_t parasites);

/// Exact law of Z_{g+1} given Z_g = k for table laws, by convolving k
/// offspring laws and C(k,2) cooperation laws.
std::vector<double> exact_dbpc_step_law(const DbpcParams& params, std::uint64_t k);

}  // namespace coopsim
