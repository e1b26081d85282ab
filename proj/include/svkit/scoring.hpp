// include/svkit/scoring.hpp

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

#ifndef SVKIT_SCORING_HPP_
#define SVKIT_SCORING_HPP_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "svkit/io.hpp"
#include "svkit/metrics.hpp"
#include "svkit/types.hpp"

namespace svkit::scoring {

// Evaluation protocol: 10 segments of 4 seconds at regular intervals from
// each utterance; a trial score is the mean of the 10x10 pairwise cosines.

// Start offsets are the n evenly spaced values from 0 to len - seg_len
// inclusive, rounded half-up to integer samples. Shorter input is
// wrap-padded to seg_len first (all segments then coincide).
std::vector<Waveform> SampleEvalSegments(const Waveform& wave,
                                         int n_segments = 10,
                                         double seg_len_s = 4.0);

double Cosine(const std::vector<double>& a, const std::vector<double>& b);

// Mean over all pairwise cosines between the two segment lists.
double TrialScore(const std::vector<std::vector<double>>& enroll,
                  const std::vector<std::vector<double>>& test);

struct NormStats {
  double mean = 0.0;
  double sigma = 0.0;
};

inline constexpr double kSigmaEpsilon = 1e-12;

// Cosine of emb against every cohort member, keep the top_x largest (ties
// broken by cohort index), return their mean and population std. Throws
// DegenerateDataError when the selected scores have sigma below epsilon.
NormStats TopCohortStats(const std::vector<double>& emb,
                         const std::vector<std::vector<double>>& cohort,
                         int top_x);

// Adaptive symmetric normalization:
// 0.5 * ((raw - mu_e)/sigma_e + (raw - mu_t)/sigma_t) with per-side top-X
// cohort statistics.
double AsNorm(double raw_score, const std::vector<double>& enroll_emb,
              const std::vector<double>& test_emb,
              const std::vector<std::vector<double>>& cohort, int top_x);

// Normalizes a whole aligned score vector; cohort statistics per distinct
// utterance are computed once.
std::vector<double> AsNormScores(
    const io::TrialList& trials, const std::vector<double>& raw_scores,
    const std::unordered_map<std::string, std::vector<double>>& utt_embeddings,
    const std::vector<std::vector<double>>& cohort, int top_x);

struct CohortConfig {
  int repeats = 10;
  uint64_t seed = 0;
};

struct GridCell {
  int n = 0;
  int x = 0;
  double eer_mean = 0.0, eer_std = 0.0;
  double dcf_mean = 0.0, dcf_std = 0.0;
};

struct GridResult {
  std::vector<GridCell> cells;
  int best_index = -1;  // argmin mean DCF; ties: smaller N, then smaller X
  std::vector<std::string> notes;  // e.g. skipped X > N cells
};

// For every (N, X) pair and each of `repeats` seeded cohort draws from the
// dev pool, normalizes all trial scores and evaluates EER / minDCF;
// reports mean and sample std per cell.
GridResult GridSearchNorm(
    const io::TrialList& trials, const std::vector<double>& raw_scores,
    const std::unordered_map<std::string, std::vector<double>>& utt_embeddings,
    const std::vector<std::vector<double>>& dev_pool,
    const std::vector<int>& ns, const std::vector<int>& xs,
    const CohortConfig& cfg, const metrics::DcfConfig& dcf_cfg);

// CSV: N,X,eer_mean,eer_std,dcf_mean,dcf_std  (one row per evaluated cell).
std::string FormatGridCsv(const GridResult& result);

}  // namespace svkit::scoring

#endif  // SVKIT_SCORING_HPP_
