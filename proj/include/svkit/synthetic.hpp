// include/svkit/synthetic.hpp

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

#ifndef SVKIT_SYNTHETIC_HPP_
#define SVKIT_SYNTHETIC_HPP_

#include <cstdint>

#include "svkit/io.hpp"

namespace svkit::synthetic {

// Synthetic embedding generator: speaker centroids are isotropic Gaussian
// with scale `between`, utterance vectors add isotropic noise with scale
// `within`, everything L2-normalized. Trials pair all same-speaker
// combinations as targets plus an equal count of seeded random
// cross-speaker nontargets.
struct Spec {
  int n_speakers = 20;
  int utterances_per_speaker = 10;
  int dim = 32;
  double within_speaker_spread = 0.3;
  double between_speaker_spread = 1.0;
  uint64_t seed = 0;

  void Validate() const;
};

struct Data {
  io::EmbeddingStore store;
  io::TrialList trials;
};

Data Generate(const Spec& spec);

}  // namespace svkit::synthetic

#endif  // SVKIT_SYNTHETIC_HPP_
