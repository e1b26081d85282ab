// src/synthetic.cpp

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

#include "svkit/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "svkit/rng.hpp"

namespace svkit::synthetic {

void Spec::Validate() const {
  if (n_speakers < 2) throw std::invalid_argument("need >= 2 speakers");
  if (utterances_per_speaker < 1) {
    throw std::invalid_argument("need >= 1 utterance per speaker");
  }
  if (dim < 2) throw std::invalid_argument("dim must be >= 2");
  if (within_speaker_spread < 0.0 || between_speaker_spread <= 0.0) {
    throw std::invalid_argument("spreads must be positive (within may be 0)");
  }
}

Data Generate(const Spec& spec) {
  spec.Validate();
  Rng rng(DeriveSeed(spec.seed, "synthetic"));

  auto utt_id = [](int s, int u) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "spk%04d-utt%03d", s, u);
    return std::string(buf);
  };

  Data data{io::EmbeddingStore(spec.dim), io::TrialList{}};
  for (int s = 0; s < spec.n_speakers; ++s) {
    std::vector<double> centroid(spec.dim);
    for (double& v : centroid) {
      v = spec.between_speaker_spread * rng.Gaussian();
    }
    for (int u = 0; u < spec.utterances_per_speaker; ++u) {
      std::vector<double> vec(spec.dim);
      double norm = 0.0;
      for (int d = 0; d < spec.dim; ++d) {
        vec[d] = centroid[d] + spec.within_speaker_spread * rng.Gaussian();
        norm += vec[d] * vec[d];
      }
      norm = std::sqrt(norm);
      if (norm < 1e-12) {
        // vanishing draw; nudge to a unit basis vector
        vec.assign(spec.dim, 0.0);
        vec[0] = 1.0;
        norm = 1.0;
      }
      std::vector<float> rec(spec.dim);
      for (int d = 0; d < spec.dim; ++d) {
        rec[d] = static_cast<float>(vec[d] / norm);
      }
      data.store.Add(utt_id(s, u), std::move(rec));
    }
  }

  // targets: every same-speaker pair
  data.trials.labeled = true;
  for (int s = 0; s < spec.n_speakers; ++s) {
    for (int u = 0; u < spec.utterances_per_speaker; ++u) {
      for (int v = u + 1; v < spec.utterances_per_speaker; ++v) {
        data.trials.trials.push_back(
            io::Trial{utt_id(s, u), utt_id(s, v), 1});
      }
    }
  }
  size_t n_targets = data.trials.trials.size();

  // nontargets: equal count of distinct random cross-speaker pairs
  std::unordered_set<std::string> seen;
  size_t made = 0;
  while (made < n_targets) {
    int sa = static_cast<int>(rng.UniformInt(0, spec.n_speakers - 1));
    int sb = static_cast<int>(rng.UniformInt(0, spec.n_speakers - 1));
    if (sa == sb) continue;
    int ua = static_cast<int>(rng.UniformInt(0, spec.utterances_per_speaker - 1));
    int ub = static_cast<int>(rng.UniformInt(0, spec.utterances_per_speaker - 1));
    std::string a = utt_id(sa, ua), b = utt_id(sb, ub);
    if (!seen.insert(a + "\t" + b).second) continue;
    data.trials.trials.push_back(io::Trial{std::move(a), std::move(b), 0});
    ++made;
  }
  return data;
}

}  // namespace svkit::synthetic
