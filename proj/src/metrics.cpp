// src/metrics.cpp

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

#include "svkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "svkit/io.hpp"
#include "svkit/types.hpp"

namespace svkit::metrics {

double DcfPoint(const ErrorRates& rates, const DcfConfig& cfg) {
  return cfg.c_miss * rates.miss * cfg.p_target +
         cfg.c_fa * rates.fa * (1.0 - cfg.p_target);
}

std::vector<ErrorRates> RocSweep(const std::vector<double>& scores,
                                 const std::vector<bool>& labels) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("scores/labels size mismatch");
  }
  std::vector<double> targets, nontargets;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) {
      throw std::invalid_argument("non-finite score");
    }
    (labels[i] ? targets : nontargets).push_back(scores[i]);
  }
  if (targets.empty() || nontargets.empty()) {
    throw std::invalid_argument("need at least one target and one nontarget");
  }
  std::sort(targets.begin(), targets.end());
  std::sort(nontargets.begin(), nontargets.end());

  // thresholds: every distinct score, plus +inf (all-reject)
  std::vector<double> thresholds;
  thresholds.reserve(scores.size() + 1);
  thresholds.insert(thresholds.end(), targets.begin(), targets.end());
  thresholds.insert(thresholds.end(), nontargets.begin(), nontargets.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  thresholds.push_back(std::numeric_limits<double>::infinity());

  double nt = static_cast<double>(targets.size());
  double nn = static_cast<double>(nontargets.size());
  std::vector<ErrorRates> sweep;
  sweep.reserve(thresholds.size());
  for (double t : thresholds) {
    ErrorRates r;
    r.threshold = t;
    if (std::isinf(t)) {
      r.miss = 1.0;
      r.fa = 0.0;
    } else {
      // accept iff score >= t
      auto miss_count =
          std::lower_bound(targets.begin(), targets.end(), t) -
          targets.begin();
      auto accept_nontarget =
          nontargets.end() -
          std::lower_bound(nontargets.begin(), nontargets.end(), t);
      r.miss = static_cast<double>(miss_count) / nt;
      r.fa = static_cast<double>(accept_nontarget) / nn;
    }
    sweep.push_back(r);
  }
  return sweep;
}

EerResult Eer(const std::vector<double>& scores,
              const std::vector<bool>& labels) {
  std::vector<ErrorRates> sweep = RocSweep(scores, labels);
  // first point (ascending threshold) where miss catches up with fa
  for (size_t i = 0; i < sweep.size(); ++i) {
    if (sweep[i].miss < sweep[i].fa) continue;
    EerResult out;
    if (sweep[i].miss == sweep[i].fa || i == 0) {
      out.eer_percent = 100.0 * sweep[i].miss;
      out.threshold = sweep[i].threshold;
      return out;
    }
    const ErrorRates& a = sweep[i - 1];
    const ErrorRates& b = sweep[i];
    // linear interpolation of both rates between the bracketing points;
    // denominator is positive because at least one rate moved strictly
    double den = (b.miss - a.miss) + (a.fa - b.fa);
    double alpha = (a.fa - a.miss) / den;
    out.eer_percent = 100.0 * (a.miss + alpha * (b.miss - a.miss));
    out.threshold = std::isfinite(b.threshold)
                        ? a.threshold + alpha * (b.threshold - a.threshold)
                        : a.threshold;
    return out;
  }
  throw std::logic_error("ROC sweep ended without reaching miss >= fa");
}

MinDcfResult MinDcf(const std::vector<double>& scores,
                    const std::vector<bool>& labels, const DcfConfig& cfg) {
  std::vector<ErrorRates> sweep = RocSweep(scores, labels);
  MinDcfResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (const ErrorRates& r : sweep) {
    double dcf = DcfPoint(r, cfg);
    if (dcf < best.value) {
      best.value = dcf;
      best.threshold = r.threshold;
    }
  }
  return best;
}

Report Evaluate(const std::vector<double>& scores,
                const std::vector<bool>& labels, const DcfConfig& cfg) {
  Report report;
  for (bool l : labels) (l ? report.n_target : report.n_nontarget)++;
  EerResult eer = Eer(scores, labels);
  MinDcfResult dcf = MinDcf(scores, labels, cfg);
  report.eer_percent = eer.eer_percent;
  report.eer_threshold = eer.threshold;
  report.min_dcf = dcf.value;
  report.dcf_threshold = dcf.threshold;
  return report;
}

std::string FormatReportLine(const Report& report) {
  return "EER=" + io::FormatDouble(report.eer_percent, 4) +
         "% minDCF=" + io::FormatDouble(report.min_dcf, 4);
}

std::string FormatReportJson(const Report& report) {
  std::string out = "{";
  out += "\"eer_percent\": " + io::FormatDouble(report.eer_percent, 6);
  out += ", \"min_dcf\": " + io::FormatDouble(report.min_dcf, 6);
  out += ", \"n_target\": " + std::to_string(report.n_target);
  out += ", \"n_nontarget\": " + std::to_string(report.n_nontarget);
  out += ", \"eer_threshold\": " + io::FormatDouble(report.eer_threshold, 6);
  out += ", \"dcf_threshold\": " + io::FormatDouble(report.dcf_threshold, 6);
  out += "}\n";
  return out;
}

}  // namespace svkit::metrics
