// src/augment.cpp

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

#include "svkit/augment.hpp"

#include <cmath>

#include "svkit/dsp.hpp"

namespace svkit::augment {

namespace {

double MeanPower(const std::vector<double>& samples) {
  double acc = 0.0;
  for (double v : samples) acc += v * v;
  return samples.empty() ? 0.0 : acc / static_cast<double>(samples.size());
}

}  // namespace

std::vector<Waveform> SegmentCorpus(const Waveform& wave, double width_s,
                                    double step_s) {
  if (width_s <= 0.0 || step_s <= 0.0) {
    throw std::invalid_argument("segment width and step must be positive");
  }
  int64_t width = std::llround(width_s * wave.sample_rate);
  int64_t step = std::llround(step_s * wave.sample_rate);
  std::vector<Waveform> segments;
  for (int64_t start = 0; start + width <= wave.NumSamples(); start += step) {
    Waveform seg;
    seg.sample_rate = wave.sample_rate;
    seg.samples.assign(wave.samples.begin() + start,
                       wave.samples.begin() + start + width);
    segments.push_back(std::move(seg));
  }
  return segments;
}

Waveform FitToLength(const Waveform& wave, int64_t target_samples, Rng* rng) {
  if (wave.NumSamples() == target_samples) return wave;
  if (wave.NumSamples() < target_samples) {
    return dsp::CropOrWrap(wave, target_samples, dsp::FixedOffset{0});
  }
  int64_t start = rng->UniformInt(0, wave.NumSamples() - target_samples);
  return dsp::CropOrWrap(wave, target_samples, dsp::FixedOffset{start});
}

Waveform MixAtSnr(const Waveform& clean, const std::vector<Waveform>& noises,
                  double snr_db, Rng* rng) {
  if (noises.empty()) {
    throw std::invalid_argument("no noise sources given");
  }
  double clean_power = MeanPower(clean.samples);
  if (clean_power <= 0.0) {
    throw DegenerateDataError("zero-energy clean signal");
  }

  // Sum all sources first, then scale the aggregate to the target SNR.
  std::vector<double> noise_sum(clean.samples.size(), 0.0);
  for (const Waveform& noise : noises) {
    if (MeanPower(noise.samples) <= 0.0) {
      throw DegenerateDataError("zero-energy noise source");
    }
    Waveform fitted = FitToLength(noise, clean.NumSamples(), rng);
    for (size_t i = 0; i < noise_sum.size(); ++i) {
      noise_sum[i] += fitted.samples[i];
    }
  }
  double noise_power = MeanPower(noise_sum);
  if (noise_power <= 0.0) {
    throw DegenerateDataError("noise sources cancelled to zero energy");
  }

  // 10*log10(P_clean / P_noise) == snr_db after scaling
  double scale =
      std::sqrt(clean_power / (noise_power * std::pow(10.0, snr_db / 10.0)));
  Waveform out;
  out.sample_rate = clean.sample_rate;
  out.samples.resize(clean.samples.size());
  for (size_t i = 0; i < out.samples.size(); ++i) {
    out.samples[i] = clean.samples[i] + scale * noise_sum[i];
  }
  return out;
}

Waveform ApplyRir(const Waveform& wave, const Waveform& rir) {
  if (rir.samples.empty()) {
    throw std::invalid_argument("empty RIR");
  }
  if (MeanPower(rir.samples) <= 0.0) {
    throw DegenerateDataError("zero-energy RIR");
  }
  int64_t n = wave.NumSamples();
  int64_t k = rir.NumSamples();
  Waveform out;
  out.sample_rate = wave.sample_rate;
  out.samples.assign(static_cast<size_t>(n), 0.0);
  // full convolution truncated to the input length
  for (int64_t t = 0; t < n; ++t) {
    double acc = 0.0;
    int64_t j_max = std::min<int64_t>(k - 1, t);
    for (int64_t j = 0; j <= j_max; ++j) {
      acc += rir.samples[j] * wave.samples[t - j];
    }
    out.samples[t] = acc;
  }
  // normalize via the power of the recording
  double in_power = MeanPower(wave.samples);
  double out_power = MeanPower(out.samples);
  if (out_power <= 0.0) {
    throw DegenerateDataError("reverberated signal has zero energy");
  }
  double scale = std::sqrt(in_power / out_power);
  for (double& v : out.samples) v *= scale;
  return out;
}

FeatureMatrix SpecMask(const FeatureMatrix& feat, const MaskSpec& spec,
                       Rng* rng) {
  if (spec.max_time_mask_frames < 0 || spec.max_freq_mask_bins < 0 ||
      spec.n_masks < 0) {
    throw std::invalid_argument("mask spec must be nonnegative");
  }
  if (spec.max_time_mask_frames > feat.rows ||
      spec.max_freq_mask_bins > feat.cols) {
    throw std::invalid_argument("mask wider than the feature matrix");
  }
  FeatureMatrix out = feat;
  double mean = 0.0;
  for (double v : feat.values) mean += v;
  mean /= static_cast<double>(feat.values.size());

  for (int i = 0; i < spec.n_masks; ++i) {
    int64_t w = rng->UniformInt(0, spec.max_time_mask_frames);
    int64_t start = rng->UniformInt(0, feat.rows - w);
    for (int64_t r = start; r < start + w; ++r) {
      for (int64_t c = 0; c < feat.cols; ++c) out.At(r, c) = mean;
    }
  }
  for (int i = 0; i < spec.n_masks; ++i) {
    int64_t w = rng->UniformInt(0, spec.max_freq_mask_bins);
    int64_t start = rng->UniformInt(0, feat.cols - w);
    for (int64_t c = start; c < start + w; ++c) {
      for (int64_t r = 0; r < feat.rows; ++r) out.At(r, c) = mean;
    }
  }
  return out;
}

Waveform AugmentOnline(const Waveform& wave, const NoiseCorpus& corpus,
                       const std::vector<Waveform>& rirs, Rng* rng,
                       OnlineReport* report) {
  Category category = static_cast<Category>(rng->UniformInt(0, 3));
  OnlineReport local;
  local.category = category;

  Waveform out;
  switch (category) {
    case Category::kSpeech:
    case Category::kMusic:
    case Category::kNoise: {
      const std::vector<Waveform>* pool = nullptr;
      SnrPolicy policy;
      if (category == Category::kSpeech) {
        pool = &corpus.speech;
        policy = kSpeechPolicy;
      } else if (category == Category::kMusic) {
        pool = &corpus.music;
        policy = kMusicPolicy;
      } else {
        pool = &corpus.noise;
        policy = kNoisePolicy;
      }
      if (pool->empty()) {
        throw std::invalid_argument("noise corpus category is empty");
      }
      int n = static_cast<int>(
          rng->UniformInt(policy.sources_lo, policy.sources_hi));
      std::vector<Waveform> picked;
      picked.reserve(n);
      for (int i = 0; i < n; ++i) {
        picked.push_back(
            (*pool)[rng->UniformInt(0, static_cast<int64_t>(pool->size()) - 1)]);
      }
      double snr = rng->Uniform(policy.snr_lo_db, policy.snr_hi_db);
      local.n_sources = n;
      local.snr_db = snr;
      out = MixAtSnr(wave, picked, snr, rng);
      break;
    }
    case Category::kRir: {
      if (rirs.empty()) {
        throw std::invalid_argument("no RIR filters");
      }
      const Waveform& rir =
          rirs[rng->UniformInt(0, static_cast<int64_t>(rirs.size()) - 1)];
      local.n_sources = 1;
      out = ApplyRir(wave, rir);
      break;
    }
  }
  if (report) *report = local;
  return out;
}

std::vector<io::ManifestRecord> BuildOfflineManifest(
    const std::vector<UtteranceRecord>& utterances, uint64_t master_seed,
    const MaskSpec& mask_spec) {
  if (utterances.empty()) {
    throw std::invalid_argument("empty utterance list");
  }
  static const char* kRoomClasses[3] = {"rir_small", "rir_medium",
                                        "rir_large"};
  std::vector<io::ManifestRecord> out;
  out.reserve(utterances.size() * 5);
  for (const UtteranceRecord& utt : utterances) {
    auto record_seed = [&](const char* transform) {
      return SeedHash().Mix(master_seed).Mix(utt.utt_id).Mix(transform).value();
    };
    auto make = [&](const std::string& suffix, const std::string& transform,
                    uint64_t seed) {
      io::ManifestRecord rec;
      rec.utt_id = suffix.empty() ? utt.utt_id : utt.utt_id + "#" + suffix;
      rec.source_path = utt.path;
      rec.transform = transform;
      rec.seed = seed;
      return rec;
    };

    out.push_back(make("", "none", record_seed("none")));

    {
      uint64_t seed = record_seed("music");
      io::ManifestRecord rec = make("music", "music", seed);
      double snr = Rng(seed).Uniform(kMusicPolicy.snr_lo_db,
                                     kMusicPolicy.snr_hi_db);
      rec.params.emplace_back("snr", io::FormatDouble(snr, 4));
      out.push_back(std::move(rec));
    }
    {
      uint64_t seed = record_seed("noise");
      io::ManifestRecord rec = make("noise", "noise", seed);
      double snr = Rng(seed).Uniform(kNoisePolicy.snr_lo_db,
                                     kNoisePolicy.snr_hi_db);
      rec.params.emplace_back("snr", io::FormatDouble(snr, 4));
      out.push_back(std::move(rec));
    }
    {
      uint64_t seed = record_seed("rir");
      const char* room = kRoomClasses[Rng(seed).UniformInt(0, 2)];
      out.push_back(make("rir", room, seed));
    }
    {
      uint64_t seed = record_seed("specmask");
      io::ManifestRecord rec = make("specmask", "specmask", seed);
      rec.params.emplace_back("max_time",
                              std::to_string(mask_spec.max_time_mask_frames));
      rec.params.emplace_back("max_freq",
                              std::to_string(mask_spec.max_freq_mask_bins));
      rec.params.emplace_back("n_masks", std::to_string(mask_spec.n_masks));
      out.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace svkit::augment
