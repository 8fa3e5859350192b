/*
 * Copyright 2026 The ranknull authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef RANKNULL_CORE_RNG_HPP_
#define RANKNULL_CORE_RNG_HPP_

#include <cmath>
#include <cstdint>

namespace ranknull {

/// 64-bit finalizer (murmur3 fmix64). Bijective, good avalanche.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 33;
  z *= 0xff51afd7ed558ccdULL;
  z ^= z >> 33;
  z *= 0xc4ceb9fe1a85ec53ULL;
  z ^= z >> 33;
  return z;
}

/// Counter-based splittable PRNG.
///
/// A stream is addressed by (seed, stream); draw i of a stream is a pure
/// function of (seed, stream, i). This is what makes replicated Monte Carlo
/// and simulation cells reproducible regardless of evaluation order or
/// concurrency: replicate j simply owns stream j.
///
/// The construction hashes the stream address into a key and walks a
/// Weyl sequence through the mix64 finalizer, in the spirit of SplitMix64.
class CounterRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix64(mix64(seed + kGolden) ^ mix64(stream * kGolden + 1))),
        counter_(0) {}

  std::uint64_t next_u64() noexcept {
    return mix64(key_ + (++counter_) * kGolden);
  }

  /// Uniform integer in [1, n]. n >= 1. Multiply-shift mapping; the
  /// modulo bias is below n / 2^64 and irrelevant at our scales.
  std::int64_t uniform_rank(std::int64_t n) noexcept {
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(next_u64()) *
        static_cast<unsigned __int128>(static_cast<std::uint64_t>(n));
    return static_cast<std::int64_t>(wide >> 64) + 1;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in (0, 1]; safe as a log() argument.
  double uniform_double_open() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (one value per call; the sibling
  /// draw is discarded to keep the draw count predictable).
  double gaussian() noexcept {
    const double u1 = uniform_double_open();
    const double u2 = uniform_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace ranknull

#endif  // RANKNULL_CORE_RNG_HPP_
