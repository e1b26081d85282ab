// include/svkit/types.hpp

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

#ifndef SVKIT_TYPES_HPP_
#define SVKIT_TYPES_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace svkit {

// Thrown when inputs are structurally valid but numerically unusable
// (constant score sets, zero-variance cohorts, ...). The CLI maps this to
// exit code 2, plain input errors to exit code 1.
class DegenerateDataError : public std::runtime_error {
 public:
  explicit DegenerateDataError(const std::string& msg)
      : std::runtime_error(msg) {}
};

// Mono audio signal. Samples are dimensionless amplitudes, nominally in
// [-1, 1]; sample_rate in Hz (16 kHz everywhere in this toolkit).
struct Waveform {
  std::vector<double> samples;
  int sample_rate = 16000;

  Waveform() = default;
  Waveform(std::vector<double> s, int rate)
      : samples(std::move(s)), sample_rate(rate) {}

  int64_t NumSamples() const { return static_cast<int64_t>(samples.size()); }
  double DurationSeconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

// frames x n_mels matrix of log filterbank energies, row-major.
struct FeatureMatrix {
  int64_t rows = 0;  // frames
  int64_t cols = 0;  // mel bins
  std::vector<double> values;

  FeatureMatrix() = default;
  FeatureMatrix(int64_t r, int64_t c)
      : rows(r), cols(c), values(static_cast<size_t>(r * c), 0.0) {}

  double& At(int64_t r, int64_t c) { return values[r * cols + c]; }
  double At(int64_t r, int64_t c) const { return values[r * cols + c]; }
};

}  // namespace svkit

#endif  // SVKIT_TYPES_HPP_
