// src/fusion.cpp

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

#include "svkit/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "svkit/io.hpp"
#include "svkit/types.hpp"

namespace svkit::fusion {

namespace {

constexpr double kWeightSumTolerance = 1e-9;

void CheckWeights(const std::vector<double>& weights, size_t n_systems) {
  if (weights.size() != n_systems) {
    throw std::invalid_argument("one weight per system required");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw std::invalid_argument("weights must sum to 1");
  }
}

struct Candidate {
  std::vector<double> weights;
  double eer = 0.0;
  double dcf = 0.0;
};

// objective first, the other metric as tie-break, then lexicographically
// smallest weights so the search is deterministic
bool Better(const Candidate& a, const Candidate& b, Objective objective) {
  double a1 = objective == Objective::kDcf ? a.dcf : a.eer;
  double b1 = objective == Objective::kDcf ? b.dcf : b.eer;
  if (a1 != b1) return a1 < b1;
  double a2 = objective == Objective::kDcf ? a.eer : a.dcf;
  double b2 = objective == Objective::kDcf ? b.eer : b.dcf;
  if (a2 != b2) return a2 < b2;
  return a.weights < b.weights;
}

}  // namespace

std::vector<double> MinMaxScale(const std::vector<double>& scores) {
  if (scores.size() < 2) {
    throw std::invalid_argument("need at least 2 scores to scale");
  }
  auto [lo_it, hi_it] = std::minmax_element(scores.begin(), scores.end());
  double lo = *lo_it, hi = *hi_it;
  if (hi <= lo) {
    throw DegenerateDataError("constant score set cannot be min-max scaled");
  }
  std::vector<double> out(scores.size());
  for (size_t i = 0; i < scores.size(); ++i) {
    out[i] = (scores[i] - lo) / (hi - lo);
  }
  return out;
}

std::vector<double> Fuse(const std::vector<std::vector<double>>& systems,
                         const std::vector<double>& weights) {
  if (systems.empty()) throw std::invalid_argument("no systems to fuse");
  size_t n = systems[0].size();
  for (const auto& s : systems) {
    if (s.size() != n) {
      throw std::invalid_argument("systems cover different trial counts");
    }
  }
  CheckWeights(weights, systems.size());

  std::vector<double> fused(n, 0.0);
  for (size_t k = 0; k < systems.size(); ++k) {
    std::vector<double> scaled = MinMaxScale(systems[k]);
    for (size_t i = 0; i < n; ++i) {
      fused[i] += weights[k] * scaled[i];
    }
  }
  return fused;
}

SearchResult SearchWeights(const std::vector<std::vector<double>>& systems,
                           const std::vector<bool>& labels,
                           double granularity, Objective objective,
                           const metrics::DcfConfig& dcf_cfg,
                           double coarse_step) {
  if (systems.empty()) throw std::invalid_argument("no systems to fuse");
  size_t n = systems[0].size();
  if (labels.size() != n) {
    throw std::invalid_argument("labels do not cover the trials");
  }
  bool any_target = false, any_nontarget = false;
  for (bool l : labels) (l ? any_target : any_nontarget) = true;
  if (!any_target || !any_nontarget) {
    throw std::invalid_argument("weight search needs labeled trials of both classes");
  }
  auto check_step = [](double step) {
    long k = std::lround(1.0 / step);
    if (step <= 0.0 || k < 1 || std::abs(k * step - 1.0) > 1e-9) {
      throw std::invalid_argument("granularity must divide 1");
    }
    return k;
  };
  long fine_units = check_step(granularity);
  check_step(coarse_step);

  // scale once; every candidate is then a cheap weighted sum
  std::vector<std::vector<double>> scaled;
  scaled.reserve(systems.size());
  for (const auto& s : systems) scaled.push_back(MinMaxScale(s));
  size_t k_systems = systems.size();

  SearchResult result;
  auto evaluate = [&](const std::vector<double>& weights) {
    std::vector<double> fused(n, 0.0);
    for (size_t k = 0; k < k_systems; ++k) {
      if (weights[k] == 0.0) continue;
      for (size_t i = 0; i < n; ++i) fused[i] += weights[k] * scaled[k][i];
    }
    Candidate cand;
    cand.weights = weights;
    cand.eer = metrics::Eer(fused, labels).eer_percent;
    cand.dcf = metrics::MinDcf(fused, labels, dcf_cfg).value;
    result.trace.push_back(TraceRow{weights, cand.eer, cand.dcf});
    return cand;
  };

  // coarse lattice pass over the whole simplex
  long coarse_units = std::lround(1.0 / coarse_step);
  Candidate best;
  bool have_best = false;
  std::vector<long> units(k_systems, 0);
  std::function<void(size_t, long)> scan = [&](size_t pos, long remaining) {
    if (pos + 1 == k_systems) {
      units[pos] = remaining;
      std::vector<double> weights(k_systems);
      for (size_t i = 0; i < k_systems; ++i) {
        weights[i] = static_cast<double>(units[i]) / coarse_units;
      }
      Candidate cand = evaluate(weights);
      if (!have_best || Better(cand, best, objective)) {
        best = cand;
        have_best = true;
      }
      return;
    }
    for (long u = 0; u <= remaining; ++u) {
      units[pos] = u;
      scan(pos + 1, remaining - u);
    }
  };
  scan(0, coarse_units);

  // coordinate refinement: move `granularity` of mass between pairs while
  // the objective improves
  double step = 1.0 / fine_units;
  bool improved = true;
  while (improved) {
    improved = false;
    Candidate round_best = best;
    for (size_t from = 0; from < k_systems; ++from) {
      if (best.weights[from] < step - 1e-12) continue;
      for (size_t to = 0; to < k_systems; ++to) {
        if (to == from) continue;
        std::vector<double> weights = best.weights;
        weights[from] -= step;
        weights[to] += step;
        if (weights[from] < 0.0) weights[from] = 0.0;
        Candidate cand = evaluate(weights);
        if (Better(cand, round_best, objective)) {
          round_best = cand;
          improved = true;
        }
      }
    }
    if (improved) best = round_best;
  }

  result.weights = best.weights;
  result.eer_percent = best.eer;
  result.dcf = best.dcf;
  result.objective = objective == Objective::kDcf ? best.dcf : best.eer;
  return result;
}

std::string FormatTraceCsv(const SearchResult& result) {
  std::string out;
  if (result.trace.empty()) return out;
  for (size_t k = 0; k < result.trace[0].weights.size(); ++k) {
    out += "w" + std::to_string(k) + ",";
  }
  out += "eer,dcf\n";
  for (const TraceRow& row : result.trace) {
    for (double w : row.weights) {
      out += io::FormatDouble(w, 4);
      out += ',';
    }
    out += io::FormatDouble(row.eer_percent, 6);
    out += ',';
    out += io::FormatDouble(row.dcf, 6);
    out += '\n';
  }
  return out;
}

}  // namespace svkit::fusion
