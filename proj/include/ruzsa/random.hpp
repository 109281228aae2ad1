#ifndef RUZSA_RANDOM_HPP_
#define RUZSA_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <random>

namespace ruzsa {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// Uniform double in [lo, hi), built from the top 53 bits of one draw.
inline double uniform_real(Rng& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

/// Uniform index in [0, n). n must be positive.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace ruzsa

#endif  // RUZSA_RANDOM_HPP_
