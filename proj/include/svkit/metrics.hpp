// include/svkit/metrics.hpp

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

#ifndef SVKIT_METRICS_HPP_
#define SVKIT_METRICS_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace svkit::metrics {

struct DcfConfig {
  double c_miss = 1.0;
  double c_fa = 1.0;
  double p_target = 0.05;
};

struct ErrorRates {
  double miss = 0.0;
  double fa = 0.0;
  double threshold = 0.0;
};

// DCF = C_miss * E_miss * P_target + C_fa * E_fa * (1 - P_target).
double DcfPoint(const ErrorRates& rates, const DcfConfig& cfg);

// Operating points at every distinct score (decision: accept if
// score >= threshold) plus the all-reject point at +inf, in increasing
// threshold order. E_miss is nondecreasing, E_fa nonincreasing.
// labels[i] == true marks a target trial. Throws if either class is empty.
std::vector<ErrorRates> RocSweep(const std::vector<double>& scores,
                                 const std::vector<bool>& labels);

struct EerResult {
  double eer_percent = 0.0;
  double threshold = 0.0;
};

// Equal error rate by linear interpolation between the two sweep points
// bracketing E_miss = E_fa; returned as a percentage.
EerResult Eer(const std::vector<double>& scores,
              const std::vector<bool>& labels);

struct MinDcfResult {
  double value = 0.0;
  double threshold = 0.0;
};

// Exact minimum of DcfPoint over the sweep, no interpolation.
MinDcfResult MinDcf(const std::vector<double>& scores,
                    const std::vector<bool>& labels, const DcfConfig& cfg);

struct Report {
  double eer_percent = 0.0;
  double min_dcf = 0.0;
  int64_t n_target = 0;
  int64_t n_nontarget = 0;
  double eer_threshold = 0.0;
  double dcf_threshold = 0.0;
};

Report Evaluate(const std::vector<double>& scores,
                const std::vector<bool>& labels, const DcfConfig& cfg);

// "EER=<x.xxxx>% minDCF=<x.xxxx>"
std::string FormatReportLine(const Report& report);
// Single JSON text record with the same fields.
std::string FormatReportJson(const Report& report);

}  // namespace svkit::metrics

#endif  // SVKIT_METRICS_HPP_
