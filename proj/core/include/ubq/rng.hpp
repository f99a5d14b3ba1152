#pragma once

#include <cstdint>
#include <random>

namespace ubq {

/// (seed, stream_id) names an independent random substream. The same pair
/// always yields the same draws on a given build.
struct ExperimentSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

using Engine = std::mt19937_64;

Engine make_engine(ExperimentSeed seed);

/// Packs a purpose tag, a grid-point index and a trial index into a stream id
/// so different phases of one experiment never share a substream.
constexpr std::uint64_t stream_key(std::uint32_t purpose, std::uint32_t grid_index, std::uint64_t trial) noexcept {
    return (static_cast<std::uint64_t>(purpose & 0xffu) << 56) |
           (static_cast<std::uint64_t>(grid_index & 0xffffffu) << 32) | (trial & 0xffffffffu);
}

/// Stream purposes used across the library.
namespace streams {
inline constexpr std::uint32_t kCalibration = 1;
inline constexpr std::uint32_t kPower = 2;
inline constexpr std::uint32_t kValidation = 3;
inline constexpr std::uint32_t kRecovery = 4;
inline constexpr std::uint32_t kMse = 5;
inline constexpr std::uint32_t kShape = 6;
inline constexpr std::uint32_t kGapFit = 7;
}  // namespace streams

}  // namespace ubq
