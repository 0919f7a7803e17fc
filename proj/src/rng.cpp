#include "soa/rng.hpp"

#include "soa/model.hpp"

namespace soa {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw Error("InvalidArgument", "empty range");
  // Rejects the low 2^64 mod bound values so every residue is equally likely.
  std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

}  // namespace soa
