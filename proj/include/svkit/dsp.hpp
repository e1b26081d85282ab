// include/svkit/dsp.hpp

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

#ifndef SVKIT_DSP_HPP_
#define SVKIT_DSP_HPP_

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include "svkit/types.hpp"

namespace svkit::dsp {

enum class WindowKind { kHann, kHamming };

// The two filterbank front-ends. 40-mel: hann window, band 20-7600 Hz, no
// pre-emphasis. 64-mel: hamming window, full band, pre-emphasis 0.97.
struct FeatureConfig {
  int n_mels = 40;
  WindowKind window = WindowKind::kHann;
  double win_len_ms = 25.0;
  double hop_ms = 10.0;
  int nfft = 512;
  double preemphasis = 0.0;  // 0 disables
  double fmin_hz = 20.0;
  double fmax_hz = 7600.0;

  int WinSamples(int sample_rate) const;
  int HopSamples(int sample_rate) const;
  void Validate(int sample_rate) const;

  static FeatureConfig Fbank40();
  static FeatureConfig Fbank64();
};

// Filterbank energies are clamped here before the log.
inline constexpr double kLogFloor = 1e-10;
// Variance guard for instance normalization; columns with variance below
// this normalize to zero-mean with denominator sqrt(kNormEpsilon).
inline constexpr double kNormEpsilon = 1e-5;

// out[0] = in[0]; out[t] = in[t] - coeff * in[t-1].
Waveform Preemphasize(const Waveform& wave, double coeff);

struct FixedOffset {
  int64_t start = 0;
};
struct RandomOffset {
  uint64_t seed = 0;
};
using OffsetPolicy = std::variant<FixedOffset, RandomOffset>;

// Contiguous crop at the chosen offset when the signal is long enough;
// cyclic tiling (wrap padding) up to target_samples otherwise.
Waveform CropOrWrap(const Waveform& wave, int64_t target_samples,
                    const OffsetPolicy& offset);

// Frame i covers [i*hop, i*hop + win); no centering, no padding.
// n_frames = 1 + floor((len - win) / hop). Throws if len < win.
std::vector<std::vector<double>> FrameSignal(const Waveform& wave,
                                             int win_samples, int hop_samples);
int64_t NumFrames(int64_t num_samples, int win_samples, int hop_samples);

// Window coefficients:
//   periodic hann:    w[n] = 0.5 - 0.5 * cos(2*pi*n / N)
//   standard hamming: w[n] = 0.54 - 0.46 * cos(2*pi*n / (N-1))
std::vector<double> MakeWindow(WindowKind kind, int length);

// In-place iterative radix-2 FFT; size must be a power of two.
void FftComplex(std::vector<std::complex<double>>* data);

// |DFT| of the windowed, zero-padded frame; bins 0..nfft/2.
// window.size() must equal frame.size() and be <= nfft.
std::vector<double> FftMagnitude(const std::vector<double>& frame,
                                 const std::vector<double>& window, int nfft);

// HTK mel scale: mel(f) = 2595 * log10(1 + f / 700).
double HzToMel(double hz);
double MelToHz(double mel);

// Triangular filters, centers equally spaced on the mel scale between
// fmin and fmax; n_mels rows of nfft/2+1 bins.
std::vector<std::vector<double>> MelFilterbankMatrix(const FeatureConfig& cfg,
                                                     int sample_rate);

// Full pipeline: optional pre-emphasis, framing, window, |FFT|^2 power
// spectrum, mel projection, floored natural log.
FeatureMatrix ExtractFbank(const Waveform& wave, const FeatureConfig& cfg);

// Per mel-dimension over time: subtract mean, divide by std.
FeatureMatrix InstanceNormalize(const FeatureMatrix& feat);

}  // namespace svkit::dsp

#endif  // SVKIT_DSP_HPP_
