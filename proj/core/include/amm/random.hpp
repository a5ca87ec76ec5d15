#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace amm {

/// SplitMix64 step; used for seeding and stream derivation.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Stable 64-bit FNV-1a hash of a tag string (platform independent).
std::uint64_t tag_hash(std::string_view tag) noexcept;

/// Derives an independent stream seed from (seed, tag, n):
///   s = seed ^ tag_hash(tag) ^ (n * 0x9E3779B97F4A7C15); return splitmix64(s).
/// Generators must keep this derivation fixed; changing it changes every
/// generated matrix.
std::uint64_t derive_stream(std::uint64_t seed, std::string_view tag, std::uint64_t n) noexcept;

/// xoshiro256** 1.0 seeded through SplitMix64. Distribution helpers are
/// implemented here (not via <random> distributions) so draws are bitwise
/// identical on every platform.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }
  result_type operator()() noexcept { return next(); }

  std::uint64_t next() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform on (0, 1].
  double uniform_open0() noexcept { return 1.0 - uniform(); }
  /// Standard normal via Box-Muller; consumes exactly two uniforms per call.
  double normal() noexcept;
  /// Uniform integer in [0, bound), bound >= 1 (Lemire's rejection method).
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace amm
