#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace soa {

/// Uniform integer in [0, bound) from a 64-bit engine, identical on every
/// platform (std::uniform_int_distribution is not). Throws on bound 0.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Uniform double in [0, 1) with 53 random bits.
inline double unit_interval(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Fisher-Yates with uniform_below.
template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

}  // namespace soa
