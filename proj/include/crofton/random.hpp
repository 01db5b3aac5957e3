#pragma once

#include <cstdint>

namespace crofton {

// Stream tags keep independent consumers of one seed apart.
inline constexpr std::uint32_t kStreamTransform = 1;
inline constexpr std::uint32_t kStreamDiskRadius = 2;
inline constexpr std::uint32_t kStreamDiskAngle = 3;
inline constexpr std::uint32_t kStreamPole = 4;
inline constexpr std::uint32_t kStreamGallery = 5;

/// Counter-based uniform variate in [0, 1): a pure function of
/// (seed, counter, stream), so any sample can be regenerated independently
/// of evaluation order or thread count.
double counter_uniform(std::uint64_t seed, std::uint64_t counter, std::uint32_t stream) noexcept;

/// 64 random bits for the same triple.
std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t counter, std::uint32_t stream) noexcept;

}  // namespace crofton
