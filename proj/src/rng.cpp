#include "gridhouse/rng.hpp"

#include <stdexcept>

namespace gridhouse {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo >= hi) throw std::invalid_argument("Rng::uniform: empty range");
  const auto range = static_cast<std::uint64_t>(hi - lo);
  // Lemire's multiply-shift with rejection; unbiased for any range.
  std::uint64_t x = next_u64();
  __uint128_t m = static_cast<__uint128_t>(x) * range;
  auto low = static_cast<std::uint64_t>(m);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<__uint128_t>(x) * range;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return lo + static_cast<std::int64_t>(m >> 64);
}

Rng Rng::derive(std::string_view stream_name) const {
  Rng mixer(state_ ^ fnv1a64(stream_name));
  return Rng(mixer.next_u64());
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace gridhouse
