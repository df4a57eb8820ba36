#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace stfields {

using Rng = std::mt19937_64;

/// Independent generator stream keyed by (seed, stream id). Replicates and
/// trials each own one, so results do not depend on scheduling.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32), 0x5f3759dfU};
  return Rng(seq);
}

inline void fill_standard_normal(Rng& rng, std::span<double> out) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& v : out) v = normal(rng);
}

inline double standard_normal(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  return normal(rng);
}

}  // namespace stfields
