// src/dsp.cpp

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

#include "svkit/dsp.hpp"

#include <algorithm>
#include <cmath>

#include "svkit/rng.hpp"

namespace svkit::dsp {

int FeatureConfig::WinSamples(int sample_rate) const {
  return static_cast<int>(std::lround(win_len_ms * sample_rate / 1000.0));
}

int FeatureConfig::HopSamples(int sample_rate) const {
  return static_cast<int>(std::lround(hop_ms * sample_rate / 1000.0));
}

void FeatureConfig::Validate(int sample_rate) const {
  if (n_mels <= 0) throw std::invalid_argument("n_mels must be positive");
  if (nfft < WinSamples(sample_rate)) {
    throw std::invalid_argument("nfft smaller than the analysis window");
  }
  if ((nfft & (nfft - 1)) != 0) {
    throw std::invalid_argument("nfft must be a power of two");
  }
  if (preemphasis < 0.0 || preemphasis >= 1.0) {
    throw std::invalid_argument("pre-emphasis coefficient must be in [0,1)");
  }
  if (fmin_hz < 0.0 || fmin_hz >= fmax_hz) {
    throw std::invalid_argument("need 0 <= fmin < fmax");
  }
  if (fmax_hz > sample_rate / 2.0) {
    throw std::invalid_argument("fmax above Nyquist");
  }
}

FeatureConfig FeatureConfig::Fbank40() {
  FeatureConfig cfg;
  cfg.n_mels = 40;
  cfg.window = WindowKind::kHann;
  cfg.preemphasis = 0.0;
  cfg.fmin_hz = 20.0;
  cfg.fmax_hz = 7600.0;
  return cfg;
}

FeatureConfig FeatureConfig::Fbank64() {
  FeatureConfig cfg;
  cfg.n_mels = 64;
  cfg.window = WindowKind::kHamming;
  cfg.preemphasis = 0.97;
  cfg.fmin_hz = 0.0;
  cfg.fmax_hz = 8000.0;
  return cfg;
}

Waveform Preemphasize(const Waveform& wave, double coeff) {
  if (coeff < 0.0 || coeff >= 1.0) {
    throw std::invalid_argument("pre-emphasis coefficient must be in [0,1)");
  }
  Waveform out;
  out.sample_rate = wave.sample_rate;
  out.samples.resize(wave.samples.size());
  if (wave.samples.empty()) return out;
  out.samples[0] = wave.samples[0];
  for (size_t t = 1; t < wave.samples.size(); ++t) {
    out.samples[t] = wave.samples[t] - coeff * wave.samples[t - 1];
  }
  return out;
}

Waveform CropOrWrap(const Waveform& wave, int64_t target_samples,
                    const OffsetPolicy& offset) {
  if (wave.samples.empty()) {
    throw std::invalid_argument("empty waveform");
  }
  if (target_samples <= 0) {
    throw std::invalid_argument("target length must be positive");
  }
  int64_t len = wave.NumSamples();
  Waveform out;
  out.sample_rate = wave.sample_rate;
  out.samples.resize(static_cast<size_t>(target_samples));

  if (len < target_samples) {
    // wrap padding: tile cyclically, then crop from 0
    for (int64_t i = 0; i < target_samples; ++i) {
      out.samples[i] = wave.samples[i % len];
    }
    return out;
  }

  int64_t start = 0;
  if (const FixedOffset* fixed = std::get_if<FixedOffset>(&offset)) {
    start = fixed->start;
    if (start < 0 || start > len - target_samples) {
      throw std::invalid_argument("crop offset out of range");
    }
  } else {
    Rng rng(std::get<RandomOffset>(offset).seed);
    start = rng.UniformInt(0, len - target_samples);
  }
  std::copy(wave.samples.begin() + start,
            wave.samples.begin() + start + target_samples,
            out.samples.begin());
  return out;
}

int64_t NumFrames(int64_t num_samples, int win_samples, int hop_samples) {
  if (num_samples < win_samples) return 0;
  return 1 + (num_samples - win_samples) / hop_samples;
}

std::vector<std::vector<double>> FrameSignal(const Waveform& wave,
                                             int win_samples,
                                             int hop_samples) {
  if (win_samples <= 0 || hop_samples <= 0) {
    throw std::invalid_argument("window and hop must be positive");
  }
  if (wave.NumSamples() < win_samples) {
    throw std::invalid_argument(
        "signal shorter than one analysis window; wrap-pad first");
  }
  int64_t n_frames = NumFrames(wave.NumSamples(), win_samples, hop_samples);
  std::vector<std::vector<double>> frames(static_cast<size_t>(n_frames));
  for (int64_t i = 0; i < n_frames; ++i) {
    const double* begin = wave.samples.data() + i * hop_samples;
    frames[i].assign(begin, begin + win_samples);
  }
  return frames;
}

std::vector<double> MakeWindow(WindowKind kind, int length) {
  std::vector<double> w(length);
  if (length == 1) {
    w[0] = kind == WindowKind::kHann ? 0.0 : 0.08;
    return w;
  }
  for (int n = 0; n < length; ++n) {
    if (kind == WindowKind::kHann) {
      // periodic form: sin^2(pi n / N)
      w[n] = 0.5 - 0.5 * std::cos(2.0 * M_PI * n / length);
    } else {
      w[n] = 0.54 - 0.46 * std::cos(2.0 * M_PI * n / (length - 1));
    }
  }
  return w;
}

void FftComplex(std::vector<std::complex<double>>* data) {
  auto& a = *data;
  size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("FFT size must be a power of two");
  }
  // bit-reversal permutation
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double angle = -2.0 * M_PI / static_cast<double>(len);
    std::complex<double> wlen(std::cos(angle), std::sin(angle));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

std::vector<double> FftMagnitude(const std::vector<double>& frame,
                                 const std::vector<double>& window,
                                 int nfft) {
  if (window.size() != frame.size()) {
    throw std::invalid_argument("window/frame length mismatch");
  }
  if (static_cast<int>(frame.size()) > nfft) {
    throw std::invalid_argument("frame longer than nfft");
  }
  std::vector<std::complex<double>> buf(static_cast<size_t>(nfft));
  for (size_t i = 0; i < frame.size(); ++i) {
    buf[i] = frame[i] * window[i];
  }
  FftComplex(&buf);
  std::vector<double> mag(static_cast<size_t>(nfft / 2 + 1));
  for (int k = 0; k <= nfft / 2; ++k) {
    mag[k] = std::abs(buf[k]);
  }
  return mag;
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

std::vector<std::vector<double>> MelFilterbankMatrix(const FeatureConfig& cfg,
                                                     int sample_rate) {
  cfg.Validate(sample_rate);
  int n_bins = cfg.nfft / 2 + 1;
  std::vector<std::vector<double>> mat(
      cfg.n_mels, std::vector<double>(static_cast<size_t>(n_bins), 0.0));

  // n_mels + 2 points equally spaced on the mel scale
  double mel_lo = HzToMel(cfg.fmin_hz);
  double mel_hi = HzToMel(cfg.fmax_hz);
  std::vector<double> hz_points(cfg.n_mels + 2);
  for (int i = 0; i < cfg.n_mels + 2; ++i) {
    double mel = mel_lo + (mel_hi - mel_lo) * i / (cfg.n_mels + 1);
    hz_points[i] = MelToHz(mel);
  }

  double bin_hz = static_cast<double>(sample_rate) / cfg.nfft;
  for (int m = 0; m < cfg.n_mels; ++m) {
    double left = hz_points[m];
    double center = hz_points[m + 1];
    double right = hz_points[m + 2];
    for (int k = 0; k < n_bins; ++k) {
      double f = k * bin_hz;
      double w = 0.0;
      if (f > left && f <= center) {
        w = (f - left) / (center - left);
      } else if (f > center && f < right) {
        w = (right - f) / (right - center);
      }
      mat[m][k] = w;
    }
  }
  return mat;
}

FeatureMatrix ExtractFbank(const Waveform& wave, const FeatureConfig& cfg) {
  cfg.Validate(wave.sample_rate);
  Waveform input = cfg.preemphasis > 0.0
                       ? Preemphasize(wave, cfg.preemphasis)
                       : wave;

  int win = cfg.WinSamples(wave.sample_rate);
  int hop = cfg.HopSamples(wave.sample_rate);
  std::vector<std::vector<double>> frames = FrameSignal(input, win, hop);
  std::vector<double> window = MakeWindow(cfg.window, win);
  std::vector<std::vector<double>> mel =
      MelFilterbankMatrix(cfg, wave.sample_rate);
  int n_bins = cfg.nfft / 2 + 1;

  FeatureMatrix feat(static_cast<int64_t>(frames.size()), cfg.n_mels);
  std::vector<double> power(static_cast<size_t>(n_bins));
  for (size_t i = 0; i < frames.size(); ++i) {
    std::vector<double> mag = FftMagnitude(frames[i], window, cfg.nfft);
    for (int k = 0; k < n_bins; ++k) power[k] = mag[k] * mag[k];
    for (int m = 0; m < cfg.n_mels; ++m) {
      double acc = 0.0;
      const std::vector<double>& row = mel[m];
      for (int k = 0; k < n_bins; ++k) acc += row[k] * power[k];
      feat.At(static_cast<int64_t>(i), m) =
          std::log(std::max(acc, kLogFloor));
    }
  }
  return feat;
}

FeatureMatrix InstanceNormalize(const FeatureMatrix& feat) {
  if (feat.rows < 2) {
    throw std::invalid_argument("instance normalization needs >= 2 frames");
  }
  FeatureMatrix out(feat.rows, feat.cols);
  for (int64_t c = 0; c < feat.cols; ++c) {
    double mean = 0.0;
    for (int64_t r = 0; r < feat.rows; ++r) mean += feat.At(r, c);
    mean /= static_cast<double>(feat.rows);
    double var = 0.0;
    for (int64_t r = 0; r < feat.rows; ++r) {
      double d = feat.At(r, c) - mean;
      var += d * d;
    }
    var /= static_cast<double>(feat.rows);
    // Exact unit variance for healthy columns; the epsilon only guards the
    // near-constant case (which then normalizes to ~0).
    double denom = std::sqrt(std::max(var, kNormEpsilon));
    for (int64_t r = 0; r < feat.rows; ++r) {
      out.At(r, c) = (feat.At(r, c) - mean) / denom;
    }
  }
  return out;
}

}  // namespace svkit::dsp
