// include/svkit/rng.hpp

// Copyright 2026  The svkit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SVKIT_RNG_HPP_
#define SVKIT_RNG_HPP_

#include <cassert>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string_view>
#include <vector>

namespace svkit {

// 64-bit FNV-1a accumulator. Every component seed in the toolkit derives
// from the master seed as hash64(master_seed, component_name, indices...),
// so parallel execution order never changes results.
class SeedHash {
 public:
  SeedHash& Mix(uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h_ = (h_ ^ ((v >> (8 * i)) & 0xff)) * kPrime;
    }
    return *this;
  }
  SeedHash& Mix(std::string_view s) {
    for (unsigned char c : s) h_ = (h_ ^ c) * kPrime;
    return Mix(static_cast<uint64_t>(s.size()));
  }
  uint64_t value() const { return h_; }

 private:
  static constexpr uint64_t kPrime = 0x100000001b3ull;
  uint64_t h_ = 0xcbf29ce484222325ull;
};

inline uint64_t DeriveSeed(uint64_t master, std::string_view component,
                           uint64_t index = 0) {
  return SeedHash().Mix(master).Mix(component).Mix(index).value();
}

// Deterministic RNG. mt19937_64 is fully specified by the standard; the
// conversions below replace std::*_distribution, whose outputs are
// implementation-defined and would break byte-identical reruns across
// toolchains.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t Next() { return eng_(); }

  // Uniform double in [0, 1), 53 random bits.
  double Uniform() { return (Next() >> 11) * 0x1.0p-53; }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [lo, hi], inclusive.
  int64_t UniformInt(int64_t lo, int64_t hi) {
    assert(lo <= hi);
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int64_t>(span == 0 ? Next() : Next() % span);
  }

  // Standard normal via Box-Muller; the second deviate is cached.
  double Gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - Uniform();  // (0, 1], keeps log() finite
    double u2 = Uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // k distinct indices from [0, n), partial Fisher-Yates, order random.
  std::vector<int64_t> SampleWithoutReplacement(int64_t n, int64_t k) {
    assert(k <= n);
    std::vector<int64_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (int64_t i = 0; i < k; ++i) {
      int64_t j = UniformInt(i, n - 1);
      std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace svkit

#endif  // SVKIT_RNG_HPP_
