#include "coopsim/random.hpp"

namespace coopsim {
namespace {

__extension__ using u128 = unsigned __int128;

}  // namespace

// Lemire's nearly divisionless bounded draw.
std::uint64_t RandomStream::below(std::uint64_t n) noexcept {
  std::uint64_t x = (*this)();
  u128 m = static_cast<u128>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = -n % n;
    while (low < threshold) {
      x = (*this)();
      m = static_cast<u128>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace coopsim
