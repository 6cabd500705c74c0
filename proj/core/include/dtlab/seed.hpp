#pragma once

#include <cstdint>

namespace dtlab {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based seed split: one global seed, independent streams per
/// (stream, index).  Pure function, so trials can run in any order.
constexpr std::uint64_t derive_seed(std::uint64_t global, std::uint64_t stream,
                                    std::uint64_t index) noexcept {
  return splitmix64(splitmix64(global ^ splitmix64(stream)) + index);
}

}  // namespace dtlab
