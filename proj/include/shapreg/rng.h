// Copyright 2026 The shapreg Authors.
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

#ifndef SHAPREG_RNG_H_
#define SHAPREG_RNG_H_

#include <cstdint>
#include <random>

namespace shapreg {

// SplitMix64 finalizer. Used both for seed derivation and for hashing
// coalitions into reproducible pseudo-random game values.
constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based sub-stream seed: the same (seed, stream) pair always yields
// the same child seed, independent of the order in which streams are created.
constexpr std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64(seed ^ SplitMix64(stream + 0x632be59bd9b4e019ULL));
}

// Top 53 bits mapped onto [0, 1).
constexpr double UnitInterval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Fixed stream ids so that, for example, coalition draws are identical
// between a deterministic game and a stochastic game with the same seed.
enum class Stream : std::uint64_t {
  kCoalitions = 1,
  kExogenous = 2,
};

// mt19937_64 with distribution code that does not depend on the standard
// library implementation, so estimates are bit-reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, Stream stream)
      : engine_(DeriveSeed(seed, static_cast<std::uint64_t>(stream))) {}

  std::uint64_t Next() { return engine_(); }
  double Uniform() { return UnitInterval(engine_()); }
  // Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t UniformIndex(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace shapreg

#endif  // SHAPREG_RNG_H_
