// tests/test_dsp.cpp

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstring>

#include "svkit/dsp.hpp"
#include "svkit/rng.hpp"

using namespace svkit;
using namespace svkit::dsp;

namespace {

Waveform RandomWave(Rng* rng, int64_t n, int sample_rate = 16000) {
  Waveform wave;
  wave.sample_rate = sample_rate;
  wave.samples.resize(n);
  for (double& v : wave.samples) v = rng->Uniform(-1.0, 1.0);
  return wave;
}

// O(n^2) DFT, the oracle for the radix-2 implementation.
std::vector<std::complex<double>> NaiveDft(const std::vector<double>& x) {
  size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (size_t t = 0; t < n; ++t) {
      double angle = -2.0 * M_PI * static_cast<double>(k * t) / n;
      acc += x[t] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[k] = acc;
  }
  return out;
}

// Independent mel converter for the filterbank-center oracle.
double OracleHzToMel(double hz) {
  return 1127.01048 * std::log(1.0 + hz / 700.0);  // 2595*log10 = 1127*ln
}
double OracleMelToHz(double mel) {
  return 700.0 * (std::exp(mel / 1127.01048) - 1.0);
}

}  // namespace

TEST_CASE("preemphasize with zero coefficient is the identity") {
  Rng rng(1);
  Waveform wave = RandomWave(&rng, 50);
  Waveform out = Preemphasize(wave, 0.0);
  CHECK(out.samples == wave.samples);
}

TEST_CASE("preemphasize applies the first-difference formula") {
  Waveform wave{{1.0, 1.0, 1.0}, 16000};
  Waveform out = Preemphasize(wave, 0.97);
  REQUIRE(out.samples.size() == 3);
  CHECK(out.samples[0] == 1.0);
  CHECK(out.samples[1] == doctest::Approx(0.03).epsilon(1e-12));
  CHECK(out.samples[2] == doctest::Approx(0.03).epsilon(1e-12));
}

TEST_CASE("preemphasize matches the reference loop on random input") {
  Rng rng(2);
  Waveform wave = RandomWave(&rng, 64);
  Waveform out = Preemphasize(wave, 0.97);
  CHECK(out.samples[0] == wave.samples[0]);
  for (size_t t = 1; t < wave.samples.size(); ++t) {
    CHECK(out.samples[t] ==
          doctest::Approx(wave.samples[t] - 0.97 * wave.samples[t - 1])
              .epsilon(1e-15));
  }
}

TEST_CASE("crop_or_wrap identity when target equals length") {
  Rng rng(3);
  Waveform wave = RandomWave(&rng, 32000);
  Waveform out = CropOrWrap(wave, 32000, FixedOffset{0});
  CHECK(out.samples == wave.samples);
}

TEST_CASE("crop_or_wrap tiles short signals cyclically") {
  Waveform wave{{1.0, 2.0, 3.0}, 16000};
  Waveform out = CropOrWrap(wave, 7, FixedOffset{0});
  CHECK(out.samples == std::vector<double>{1, 2, 3, 1, 2, 3, 1});
}

TEST_CASE("crop_or_wrap random offset is seeded and in range") {
  Rng rng(4);
  Waveform wave = RandomWave(&rng, 100000);
  Waveform a = CropOrWrap(wave, 64000, RandomOffset{7});
  Waveform b = CropOrWrap(wave, 64000, RandomOffset{7});
  CHECK(a.samples == b.samples);

  // recover the offset and check the bound
  int64_t start = Rng(7).UniformInt(0, 100000 - 64000);
  CHECK(start >= 0);
  CHECK(start <= 36000);
  CHECK(a.samples[0] == wave.samples[start]);
}

TEST_CASE("crop_or_wrap rejects empty input") {
  Waveform empty;
  CHECK_THROWS(CropOrWrap(empty, 10, FixedOffset{0}));
}

TEST_CASE("frame_signal counts") {
  Rng rng(5);
  CHECK(FrameSignal(RandomWave(&rng, 400), 400, 160).size() == 1);
  CHECK(FrameSignal(RandomWave(&rng, 32000), 400, 160).size() == 198);
  CHECK_THROWS(FrameSignal(RandomWave(&rng, 399), 400, 160));
}

TEST_CASE("frame count formula holds for random lengths") {
  Rng rng(6);
  for (int iter = 0; iter < 100; ++iter) {
    int64_t n = rng.UniformInt(400, 50000);
    auto frames = FrameSignal(RandomWave(&rng, n), 400, 160);
    CHECK(static_cast<int64_t>(frames.size()) == 1 + (n - 400) / 160);
    // frame i covers [i*hop, i*hop + win)
    CHECK(frames.back().size() == 400);
  }
}

TEST_CASE("fft of a unit impulse is flat at the window value") {
  std::vector<double> frame(400, 0.0);
  frame[0] = 1.0;
  std::vector<double> window = MakeWindow(WindowKind::kHamming, 400);
  std::vector<double> mag = FftMagnitude(frame, window, 512);
  REQUIRE(mag.size() == 257);
  for (double m : mag) {
    CHECK(m == doctest::Approx(std::abs(window[0])).epsilon(1e-12));
  }
}

TEST_CASE("fft of a constant frame concentrates in bin zero") {
  double c = 0.37;
  std::vector<double> frame(512, c);
  std::vector<double> ones(512, 1.0);
  std::vector<double> mag = FftMagnitude(frame, ones, 512);
  CHECK(mag[0] == doctest::Approx(512.0 * c).epsilon(1e-12));
  for (size_t k = 1; k < mag.size(); ++k) {
    CHECK(mag[k] < 1e-9);
  }
}

TEST_CASE("fft magnitude matches the naive DFT oracle") {
  Rng rng(8);
  for (int len : {64, 400, 512}) {
    std::vector<double> frame(len);
    for (double& v : frame) v = rng.Uniform(-1.0, 1.0);
    std::vector<double> window = MakeWindow(WindowKind::kHann, len);

    std::vector<double> padded(512, 0.0);
    for (int i = 0; i < len; ++i) padded[i] = frame[i] * window[i];
    std::vector<std::complex<double>> oracle = NaiveDft(padded);

    std::vector<double> mag = FftMagnitude(frame, window, 512);
    double max_ref = 0.0, max_err = 0.0;
    for (size_t k = 0; k < mag.size(); ++k) {
      max_ref = std::max(max_ref, std::abs(oracle[k]));
      max_err = std::max(max_err, std::abs(mag[k] - std::abs(oracle[k])));
    }
    CHECK(max_err <= 1e-9 * max_ref);
  }
}

TEST_CASE("full complex fft satisfies Parseval") {
  Rng rng(9);
  std::vector<std::complex<double>> buf(512);
  double time_power = 0.0;
  for (auto& v : buf) {
    double s = rng.Uniform(-1.0, 1.0);
    v = s;
    time_power += s * s;
  }
  FftComplex(&buf);
  double spec_power = 0.0;
  for (const auto& v : buf) spec_power += std::norm(v);
  CHECK(spec_power ==
        doctest::Approx(512.0 * time_power).epsilon(1e-6));
}

TEST_CASE("mel filterbank matrix shape and well-formedness") {
  for (const FeatureConfig& cfg :
       {FeatureConfig::Fbank40(), FeatureConfig::Fbank64()}) {
    auto mat = MelFilterbankMatrix(cfg, 16000);
    REQUIRE(static_cast<int>(mat.size()) == cfg.n_mels);
    for (const auto& row : mat) {
      REQUIRE(row.size() == 257);
      double peak = 0.0;
      for (double w : row) {
        CHECK(w >= 0.0);
        peak = std::max(peak, w);
      }
      CHECK(peak > 0.0);  // every filter touches at least one bin
    }
  }
}

TEST_CASE("mel filter peaks sit at the oracle center frequencies") {
  FeatureConfig cfg = FeatureConfig::Fbank40();
  auto mat = MelFilterbankMatrix(cfg, 16000);
  double bin_hz = 16000.0 / cfg.nfft;

  double mel_lo = OracleHzToMel(cfg.fmin_hz);
  double mel_hi = OracleHzToMel(cfg.fmax_hz);
  for (int m = 0; m < cfg.n_mels; ++m) {
    double center_hz =
        OracleMelToHz(mel_lo + (mel_hi - mel_lo) * (m + 1) / (cfg.n_mels + 1));
    size_t peak_bin =
        std::max_element(mat[m].begin(), mat[m].end()) - mat[m].begin();
    // discretized triangle peaks at the bin nearest the analytic center
    CHECK(std::abs(peak_bin * bin_hz - center_hz) <= bin_hz);
  }
}

TEST_CASE("mel filterbank rejects fmax above Nyquist") {
  FeatureConfig cfg = FeatureConfig::Fbank40();
  cfg.fmax_hz = 9000.0;
  CHECK_THROWS(MelFilterbankMatrix(cfg, 16000));
}

TEST_CASE("extract_fbank shapes and determinism") {
  Rng rng(10);
  Waveform wave = RandomWave(&rng, 32000);  // 2 s at 16 kHz

  FeatureMatrix f40 = ExtractFbank(wave, FeatureConfig::Fbank40());
  CHECK(f40.rows == 198);
  CHECK(f40.cols == 40);

  FeatureMatrix again = ExtractFbank(wave, FeatureConfig::Fbank40());
  CHECK(std::memcmp(f40.values.data(), again.values.data(),
                    f40.values.size() * sizeof(double)) == 0);

  FeatureMatrix f64 = ExtractFbank(wave, FeatureConfig::Fbank64());
  CHECK(f64.rows == 198);
  CHECK(f64.cols == 64);
}

TEST_CASE("extract_fbank of silence hits the log floor everywhere") {
  Waveform wave{std::vector<double>(16000, 0.0), 16000};
  FeatureMatrix feat = ExtractFbank(wave, FeatureConfig::Fbank40());
  double floor_log = std::log(kLogFloor);
  for (double v : feat.values) {
    CHECK(v == floor_log);
  }
}

TEST_CASE("the 64-mel config actually applies pre-emphasis") {
  Rng rng(11);
  Waveform wave = RandomWave(&rng, 16000);
  FeatureConfig with = FeatureConfig::Fbank64();
  FeatureConfig without = FeatureConfig::Fbank64();
  without.preemphasis = 0.0;
  FeatureMatrix a = ExtractFbank(wave, with);
  FeatureMatrix b = ExtractFbank(wave, without);
  double diff = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) {
    diff = std::max(diff, std::abs(a.values[i] - b.values[i]));
  }
  CHECK(diff > 1e-3);
}

TEST_CASE("instance_normalize yields zero-mean unit-variance columns") {
  Rng rng(12);
  FeatureMatrix feat(200, 8);
  for (double& v : feat.values) v = 3.0 * rng.Gaussian() + 1.5;

  FeatureMatrix out = InstanceNormalize(feat);
  for (int64_t c = 0; c < out.cols; ++c) {
    double mean = 0.0;
    for (int64_t r = 0; r < out.rows; ++r) mean += out.At(r, c);
    mean /= out.rows;
    double var = 0.0;
    for (int64_t r = 0; r < out.rows; ++r) {
      var += (out.At(r, c) - mean) * (out.At(r, c) - mean);
    }
    var /= out.rows;
    CHECK(std::abs(mean) < 1e-9);
    CHECK(std::abs(var - 1.0) < 1e-6);
  }
}

TEST_CASE("instance_normalize zeroes constant columns") {
  FeatureMatrix feat(50, 3);
  for (int64_t r = 0; r < feat.rows; ++r) {
    feat.At(r, 0) = 4.2;            // constant
    feat.At(r, 1) = r * 0.01;       // ramp
    feat.At(r, 2) = (r % 2) * 2.0;  // alternating
  }
  FeatureMatrix out = InstanceNormalize(feat);
  for (int64_t r = 0; r < out.rows; ++r) {
    CHECK(out.At(r, 0) == 0.0);
  }
}

TEST_CASE("instance_normalize is idempotent") {
  Rng rng(13);
  FeatureMatrix feat(150, 6);
  for (double& v : feat.values) v = rng.Gaussian() * 0.8 - 2.0;

  FeatureMatrix once = InstanceNormalize(feat);
  FeatureMatrix twice = InstanceNormalize(once);
  for (size_t i = 0; i < once.values.size(); ++i) {
    CHECK(std::abs(once.values[i] - twice.values[i]) < 1e-6);
  }
}
