// tests/test_metrics.cpp

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

#include <algorithm>
#include <cmath>
#include <limits>

#include "svkit/metrics.hpp"
#include "svkit/rng.hpp"

using namespace svkit;
using namespace svkit::metrics;

namespace {

// Brute-force oracle: rates recomputed by plain counting at every distinct
// score plus +inf. Deliberately independent of metrics.cpp.
struct OraclePoint {
  double miss, fa, threshold;
};

std::vector<OraclePoint> OracleSweep(const std::vector<double>& scores,
                                     const std::vector<bool>& labels) {
  std::vector<double> thresholds = scores;
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  thresholds.push_back(std::numeric_limits<double>::infinity());

  double nt = 0, nn = 0;
  for (bool l : labels) (l ? nt : nn) += 1;

  std::vector<OraclePoint> out;
  for (double t : thresholds) {
    double miss = 0, fa = 0;
    for (size_t i = 0; i < scores.size(); ++i) {
      if (labels[i] && scores[i] < t) miss += 1;
      if (!labels[i] && scores[i] >= t) fa += 1;
    }
    out.push_back(OraclePoint{miss / nt, fa / nn, t});
  }
  return out;
}

double OracleMinDcf(const std::vector<double>& scores,
                    const std::vector<bool>& labels, const DcfConfig& cfg) {
  double best = std::numeric_limits<double>::infinity();
  for (const OraclePoint& p : OracleSweep(scores, labels)) {
    best = std::min(best, cfg.c_miss * p.miss * cfg.p_target +
                              cfg.c_fa * p.fa * (1.0 - cfg.p_target));
  }
  return best;
}

double OracleEer(const std::vector<double>& scores,
                 const std::vector<bool>& labels) {
  std::vector<OraclePoint> pts = OracleSweep(scores, labels);
  for (size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].miss < pts[i].fa) continue;
    if (pts[i].miss == pts[i].fa || i == 0) return 100.0 * pts[i].miss;
    double m1 = pts[i - 1].miss, f1 = pts[i - 1].fa;
    double m2 = pts[i].miss, f2 = pts[i].fa;
    double alpha = (f1 - m1) / ((m2 - m1) + (f1 - f2));
    return 100.0 * (m1 + alpha * (m2 - m1));
  }
  return -1.0;
}

void RandomScores(Rng* rng, size_t n, std::vector<double>* scores,
                  std::vector<bool>* labels, double target_shift = 0.5) {
  scores->clear();
  labels->clear();
  for (size_t i = 0; i < n; ++i) {
    bool target = rng->Uniform() < 0.4;
    labels->push_back(target);
    scores->push_back(rng->Gaussian() + (target ? target_shift : 0.0));
  }
  // make sure both classes exist
  labels->at(0) = true;
  labels->at(n - 1) = false;
}

}  // namespace

TEST_CASE("dcf_point evaluates the cost function exactly") {
  DcfConfig cfg;
  CHECK(DcfPoint({0.0, 0.0, 0.0}, cfg) == 0.0);
  CHECK(DcfPoint({1.0, 0.0, 0.0}, cfg) == 0.05);
  CHECK(DcfPoint({0.0, 1.0, 0.0}, cfg) == 0.95);
  CHECK(DcfPoint({0.5, 0.5, 0.0}, cfg) == 0.5);
}

TEST_CASE("roc_sweep basics") {
  std::vector<double> scores{0.9, 0.1};
  std::vector<bool> labels{true, false};
  std::vector<ErrorRates> sweep = RocSweep(scores, labels);

  bool perfect = false;
  for (const ErrorRates& r : sweep) {
    if (r.miss == 0.0 && r.fa == 0.0) perfect = true;
  }
  CHECK(perfect);
  // extremes: lowest threshold accepts everything, +inf rejects everything
  CHECK(sweep.front().miss == 0.0);
  CHECK(sweep.front().fa == 1.0);
  CHECK(sweep.back().miss == 1.0);
  CHECK(sweep.back().fa == 0.0);
}

TEST_CASE("roc_sweep rejects single-class input") {
  CHECK_THROWS(RocSweep({0.1, 0.2}, {true, true}));
  CHECK_THROWS(RocSweep({0.1, 0.2}, {false, false}));
}

TEST_CASE("roc_sweep rates are monotone along the threshold axis") {
  Rng rng(2024);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<double> scores;
    std::vector<bool> labels;
    RandomScores(&rng, 200, &scores, &labels);
    std::vector<ErrorRates> sweep = RocSweep(scores, labels);
    for (size_t i = 1; i < sweep.size(); ++i) {
      CHECK(sweep[i].miss >= sweep[i - 1].miss);
      CHECK(sweep[i].fa <= sweep[i - 1].fa);
    }
  }
}

TEST_CASE("eer of perfectly separated classes is zero") {
  std::vector<double> scores{0.9, 0.8, 0.2, 0.1};
  std::vector<bool> labels{true, true, false, false};
  CHECK(Eer(scores, labels).eer_percent == 0.0);
  CHECK(MinDcf(scores, labels, DcfConfig{}).value == 0.0);
}

TEST_CASE("eer of the two-target/two-nontarget crossing example") {
  // targets {0.8, 0.6}, nontargets {0.7, 0.3}: one crossing at 0.5/0.5
  std::vector<double> scores{0.8, 0.6, 0.7, 0.3};
  std::vector<bool> labels{true, true, false, false};
  double eer = Eer(scores, labels).eer_percent;
  CHECK(eer == doctest::Approx(OracleEer(scores, labels)).epsilon(1e-12));
  CHECK(eer == doctest::Approx(50.0));
}

TEST_CASE("eer of identically distributed classes is near 50") {
  Rng rng(7);
  std::vector<double> scores;
  std::vector<bool> labels;
  for (int i = 0; i < 10000; ++i) {
    labels.push_back(i % 2 == 0);
    scores.push_back(rng.Gaussian());  // same distribution for both classes
  }
  double eer = Eer(scores, labels).eer_percent;
  CHECK(eer > 48.0);
  CHECK(eer < 52.0);
}

TEST_CASE("eer and min_dcf match the brute-force oracles") {
  Rng rng(11);
  DcfConfig cfg;
  for (int iter = 0; iter < 40; ++iter) {
    std::vector<double> scores;
    std::vector<bool> labels;
    RandomScores(&rng, 50 + 37 * iter, &scores, &labels);

    MinDcfResult dcf = MinDcf(scores, labels, cfg);
    CHECK(dcf.value == OracleMinDcf(scores, labels, cfg));

    double eer = Eer(scores, labels).eer_percent;
    CHECK(std::abs(eer - OracleEer(scores, labels)) < 1e-9);
  }
}

TEST_CASE("metrics are invariant under strictly increasing transforms") {
  Rng rng(13);
  std::vector<double> scores;
  std::vector<bool> labels;
  RandomScores(&rng, 500, &scores, &labels);
  DcfConfig cfg;

  double eer = Eer(scores, labels).eer_percent;
  double dcf = MinDcf(scores, labels, cfg).value;

  std::vector<double> affine(scores.size()), expd(scores.size());
  for (size_t i = 0; i < scores.size(); ++i) {
    affine[i] = 2.0 * scores[i] + 3.0;
    expd[i] = std::exp(scores[i]);
  }
  CHECK(Eer(affine, labels).eer_percent == eer);
  CHECK(MinDcf(affine, labels, cfg).value == dcf);
  CHECK(Eer(expd, labels).eer_percent == eer);
  CHECK(MinDcf(expd, labels, cfg).value == dcf);
}

TEST_CASE("min_dcf never exceeds the all-reject bound") {
  Rng rng(17);
  for (int iter = 0; iter < 20; ++iter) {
    std::vector<double> scores;
    std::vector<bool> labels;
    RandomScores(&rng, 100, &scores, &labels, 0.0);
    CHECK(MinDcf(scores, labels, DcfConfig{}).value <= 0.05);
  }
}

TEST_CASE("eer is symmetric under label flip with score negation") {
  Rng rng(19);
  std::vector<double> scores;
  std::vector<bool> labels;
  RandomScores(&rng, 301, &scores, &labels);

  std::vector<double> negated(scores.size());
  std::vector<bool> flipped(labels.size());
  for (size_t i = 0; i < scores.size(); ++i) {
    negated[i] = -scores[i];
    flipped[i] = !labels[i];
  }
  CHECK(std::abs(Eer(scores, labels).eer_percent -
                 Eer(negated, flipped).eer_percent) < 1e-9);
}

TEST_CASE("report formatting uses four decimals") {
  std::vector<double> scores{0.9, 0.8, 0.2, 0.1};
  std::vector<bool> labels{true, true, false, false};
  Report report = Evaluate(scores, labels, DcfConfig{});
  CHECK(FormatReportLine(report) == "EER=0.0000% minDCF=0.0000");
  CHECK(report.n_target == 2);
  CHECK(report.n_nontarget == 2);
}
