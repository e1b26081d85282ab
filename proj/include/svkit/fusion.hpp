// include/svkit/fusion.hpp

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

#ifndef SVKIT_FUSION_HPP_
#define SVKIT_FUSION_HPP_

#include <string>
#include <vector>

#include "svkit/metrics.hpp"

namespace svkit::fusion {

// (s - min) / (max - min). Throws DegenerateDataError when all scores are
// equal (a broken system should surface, not silently map to 0.5).
std::vector<double> MinMaxScale(const std::vector<double>& scores);

// Per trial: sum_k w_k * minmax(system_k). Weights must be nonnegative and
// sum to 1 within 1e-9; all systems must cover the same trials (equal
// length, aligned order).
std::vector<double> Fuse(const std::vector<std::vector<double>>& systems,
                         const std::vector<double>& weights);

enum class Objective { kDcf, kEer };

struct TraceRow {
  std::vector<double> weights;
  double eer_percent = 0.0;
  double dcf = 0.0;
};

struct SearchResult {
  std::vector<double> weights;
  double objective = 0.0;
  double eer_percent = 0.0;
  double dcf = 0.0;
  std::vector<TraceRow> trace;
};

// Coarse simplex lattice scan (step coarse_step) followed by coordinate
// refinement at `granularity`: repeatedly move `granularity` of mass
// between system pairs while the objective improves. minDCF objective
// breaks ties by EER (and vice versa), then lexicographically smallest
// weights for determinism. Every evaluated vector lands in the trace.
SearchResult SearchWeights(const std::vector<std::vector<double>>& systems,
                           const std::vector<bool>& labels,
                           double granularity, Objective objective,
                           const metrics::DcfConfig& dcf_cfg,
                           double coarse_step = 0.05);

// CSV: w_0,...,w_{K-1},eer,dcf per evaluated candidate.
std::string FormatTraceCsv(const SearchResult& result);

}  // namespace svkit::fusion

#endif  // SVKIT_FUSION_HPP_
