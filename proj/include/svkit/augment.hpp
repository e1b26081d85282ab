// include/svkit/augment.hpp

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

#ifndef SVKIT_AUGMENT_HPP_
#define SVKIT_AUGMENT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "svkit/io.hpp"
#include "svkit/rng.hpp"
#include "svkit/types.hpp"

namespace svkit::augment {

// Additive-noise policies. The aggregate of all picked sources is scaled
// to the drawn SNR (not each source individually).
struct SnrPolicy {
  double snr_lo_db = 0.0;
  double snr_hi_db = 0.0;
  int sources_lo = 1;
  int sources_hi = 1;
};

inline constexpr SnrPolicy kSpeechPolicy{13.0, 20.0, 3, 7};
inline constexpr SnrPolicy kMusicPolicy{5.0, 15.0, 1, 1};
inline constexpr SnrPolicy kNoisePolicy{0.0, 15.0, 1, 1};

// Cuts a recording into 5-second segments on a 3-second step; the trailing
// partial segment is discarded. Shorter input yields an empty list.
std::vector<Waveform> SegmentCorpus(const Waveform& wave, double width_s = 5.0,
                                    double step_s = 3.0);

// Wrap-tiles noise shorter than target; randomly crops longer noise.
Waveform FitToLength(const Waveform& wave, int64_t target_samples, Rng* rng);

// Adds the summed noises to clean, scaled so that
// 10*log10(P_clean / P_noise_total) equals snr_db. Each noise is first fit
// to the clean length. Throws DegenerateDataError on zero-energy input.
Waveform MixAtSnr(const Waveform& clean, const std::vector<Waveform>& noises,
                  double snr_db, Rng* rng);

// Full convolution truncated to the input length, then rescaled so output
// power equals input power.
Waveform ApplyRir(const Waveform& wave, const Waveform& rir);

struct MaskSpec {
  int max_time_mask_frames = 0;
  int max_freq_mask_bins = 0;
  int n_masks = 1;  // count per axis
};

// Sets random-width contiguous bands of frames (time) and bins (freq) to
// the global matrix mean. Time masks are drawn before frequency masks.
FeatureMatrix SpecMask(const FeatureMatrix& feat, const MaskSpec& spec,
                       Rng* rng);

enum class Category { kSpeech, kMusic, kNoise, kRir };

struct NoiseCorpus {
  std::vector<Waveform> speech;
  std::vector<Waveform> music;
  std::vector<Waveform> noise;
};

struct OnlineReport {
  Category category = Category::kSpeech;
  int n_sources = 0;
  double snr_db = 0.0;
};

// Picks one of {speech, music, noise, rir} uniformly and applies its
// policy. Sources are drawn with replacement. Throws if the drawn category
// has no material.
Waveform AugmentOnline(const Waveform& wave, const NoiseCorpus& corpus,
                       const std::vector<Waveform>& rirs, Rng* rng,
                       OnlineReport* report = nullptr);

struct UtteranceRecord {
  std::string utt_id;
  std::string path;
};

// Emits five records per input utterance: the original plus music, noise,
// one RIR room class, and a spec-mask directive. Parameters are drawn from
// per-record seeds hashed out of (master_seed, utt_id, transform); no audio
// is rendered here.
std::vector<io::ManifestRecord> BuildOfflineManifest(
    const std::vector<UtteranceRecord>& utterances, uint64_t master_seed,
    const MaskSpec& mask_spec);

}  // namespace svkit::augment

#endif  // SVKIT_AUGMENT_HPP_
