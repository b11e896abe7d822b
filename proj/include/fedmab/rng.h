//
// Copyright 2026 The fedmab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef FEDMAB_RNG_H_
#define FEDMAB_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace fedmab {

// SplitMix64 finalizer. Used for seed derivation only, never as a stream.
constexpr uint64_t MixBits(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Order-sensitive combination of integer keys into a single 64-bit seed.
constexpr uint64_t DeriveSeed(std::initializer_list<uint64_t> keys) {
  uint64_t h = 0x6a09e667f3bcc909ULL;
  for (uint64_t k : keys) h = MixBits(h ^ MixBits(k));
  return h;
}

// 64-bit FNV-1a over bytes; stable across platforms.
constexpr uint64_t HashString(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Domain tags for the independent streams of one run.
enum class StreamTag : uint64_t {
  kEnvironment = 1,
  kTopology = 2,
  kServer = 3,
  kAgent = 4,
};

// A reproducible random stream. The conversions to floating point are
// written out explicitly instead of using <random> distributions, whose
// algorithms are implementation-defined; bits are identical on every
// platform for a given seed.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : engine_(seed) {}

  uint64_t NextBits() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on the open interval (0, 1).
  double OpenUniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, n) by rejection; n > 0.
  uint64_t Below(uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

inline RandomStream MakeStream(uint64_t run_seed, StreamTag tag,
                               uint64_t index = 0) {
  return RandomStream(
      DeriveSeed({run_seed, static_cast<uint64_t>(tag), index}));
}

}  // namespace fedmab

#endif  // FEDMAB_RNG_H_
