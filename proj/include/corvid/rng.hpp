/*
 * Copyright 2026 The Corvid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CORVID_RNG_HPP
#define CORVID_RNG_HPP

#include <algorithm>
#include <cstdint>
#include <string_view>
#include <vector>

namespace corvid {

// Deterministic random machinery. Everything here is fully specified by
// integer arithmetic so that seeds reproduce the same draws on any platform
// or language reimplementation. The core generator is splitmix64
// (Steele/Lea/Vigna); bounded draws use Lemire's multiply-shift rejection.

constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ULL;

/// splitmix64 finalizer: mixes a 64-bit value to a well-distributed output.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// FNV-1a over a byte string, for deriving seeds from textual ids.
constexpr std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

/// splitmix64 stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += kGolden64;
    return mix64(state_);
  }

  /// Uniform draw in [0, bound); bound must be nonzero. Unbiased.
  std::uint64_t next_below(std::uint64_t bound) {
    // Lemire's method: accept unless the 128-bit product falls in the
    // biased low fringe, then retry.
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Counter-based stream derivation: independent streams for (seed, index),
/// e.g. one per GOP, so work units can be processed in any order.
inline Rng derive_stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(mix64(mix64(seed) ^ mix64(index + kGolden64)));
}

/// Keyed seed for a named work item (e.g. a clip id). Adding items never
/// perturbs the seeds of existing ones.
inline std::uint64_t derive_keyed_seed(std::uint64_t seed, std::string_view key) {
  return mix64(mix64(seed) ^ fnv1a64(key));
}

/// Draws `count` distinct values from [0, pool_size) via partial
/// Fisher-Yates; result is sorted ascending. count must be <= pool_size.
inline std::vector<std::size_t> sample_without_replacement(Rng& rng,
                                                           std::size_t pool_size,
                                                           std::size_t count) {
  std::vector<std::size_t> pool(pool_size);
  for (std::size_t i = 0; i < pool_size; ++i) pool[i] = i;
  std::vector<std::size_t> picked;
  picked.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.next_below(pool_size - i));
    std::swap(pool[i], pool[j]);
    picked.push_back(pool[i]);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace corvid

#endif  // CORVID_RNG_HPP
