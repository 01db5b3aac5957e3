#include "crofton/random.hpp"

namespace crofton {

namespace {

// splitmix64 finalizer
constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t counter, std::uint32_t stream) noexcept {
  std::uint64_t h = mix(seed ^ (static_cast<std::uint64_t>(stream) << 56));
  h = mix(h ^ counter);
  return mix(h + static_cast<std::uint64_t>(stream));
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter, std::uint32_t stream) noexcept {
  return static_cast<double>(counter_bits(seed, counter, stream) >> 11) * 0x1.0p-53;
}

}  // namespace crofton
