#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace d3 {

// std::uniform_int_distribution and std::shuffle are implementation-defined;
// these keep seeded runs identical across standard libraries.

/// Uniform integer in [0, bound) by rejection on mt19937_64 output.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace d3
