// src/scoring.cpp

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

#include "svkit/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "svkit/dsp.hpp"
#include "svkit/rng.hpp"

namespace svkit::scoring {

std::vector<Waveform> SampleEvalSegments(const Waveform& wave, int n_segments,
                                         double seg_len_s) {
  if (n_segments < 1) throw std::invalid_argument("need >= 1 segment");
  if (wave.samples.empty()) throw std::invalid_argument("empty waveform");
  int64_t seg = std::llround(seg_len_s * wave.sample_rate);

  Waveform padded = wave.NumSamples() < seg
                        ? dsp::CropOrWrap(wave, seg, dsp::FixedOffset{0})
                        : wave;
  int64_t span = padded.NumSamples() - seg;

  std::vector<Waveform> segments;
  segments.reserve(n_segments);
  for (int i = 0; i < n_segments; ++i) {
    // inclusive linear spacing, rounded half-up to integer samples
    double pos = n_segments == 1
                     ? 0.0
                     : static_cast<double>(span) * i / (n_segments - 1);
    int64_t start = static_cast<int64_t>(std::floor(pos + 0.5));
    segments.push_back(
        dsp::CropOrWrap(padded, seg, dsp::FixedOffset{start}));
  }
  return segments;
}

double Cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("embedding dim mismatch");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na <= 0.0 || nb <= 0.0) {
    throw std::invalid_argument("cosine of a zero vector");
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double TrialScore(const std::vector<std::vector<double>>& enroll,
                  const std::vector<std::vector<double>>& test) {
  if (enroll.empty() || test.empty()) {
    throw std::invalid_argument("empty segment list");
  }
  double acc = 0.0;
  for (const auto& e : enroll) {
    for (const auto& t : test) {
      acc += Cosine(e, t);
    }
  }
  return acc / (static_cast<double>(enroll.size()) * test.size());
}

NormStats TopCohortStats(const std::vector<double>& emb,
                         const std::vector<std::vector<double>>& cohort,
                         int top_x) {
  if (top_x < 1 || top_x > static_cast<int>(cohort.size())) {
    throw std::invalid_argument("top_x must be in [1, cohort size]");
  }
  std::vector<double> scores(cohort.size());
  for (size_t i = 0; i < cohort.size(); ++i) {
    scores[i] = Cosine(emb, cohort[i]);
  }
  // X largest; ties broken by cohort index for determinism
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&scores](size_t a, size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });

  double mean = 0.0;
  for (int i = 0; i < top_x; ++i) mean += scores[order[i]];
  mean /= top_x;
  double var = 0.0;
  for (int i = 0; i < top_x; ++i) {
    double d = scores[order[i]] - mean;
    var += d * d;
  }
  var /= top_x;  // population variance

  NormStats stats;
  stats.mean = mean;
  stats.sigma = std::sqrt(var);
  if (stats.sigma < kSigmaEpsilon) {
    throw DegenerateDataError("cohort score spread is zero");
  }
  return stats;
}

double AsNorm(double raw_score, const std::vector<double>& enroll_emb,
              const std::vector<double>& test_emb,
              const std::vector<std::vector<double>>& cohort, int top_x) {
  NormStats e = TopCohortStats(enroll_emb, cohort, top_x);
  NormStats t = TopCohortStats(test_emb, cohort, top_x);
  return 0.5 * ((raw_score - e.mean) / e.sigma +
                (raw_score - t.mean) / t.sigma);
}

std::vector<double> AsNormScores(
    const io::TrialList& trials, const std::vector<double>& raw_scores,
    const std::unordered_map<std::string, std::vector<double>>& utt_embeddings,
    const std::vector<std::vector<double>>& cohort, int top_x) {
  if (raw_scores.size() != trials.trials.size()) {
    throw std::invalid_argument("scores/trials size mismatch");
  }
  // cohort statistics per distinct utterance, computed once
  std::unordered_map<std::string, NormStats> stats;
  auto stats_for = [&](const std::string& id) -> const NormStats& {
    auto it = stats.find(id);
    if (it != stats.end()) return it->second;
    auto emb = utt_embeddings.find(id);
    if (emb == utt_embeddings.end()) {
      throw std::runtime_error("no embedding for utterance " + id);
    }
    try {
      return stats.emplace(id, TopCohortStats(emb->second, cohort, top_x))
          .first->second;
    } catch (const DegenerateDataError& e) {
      throw DegenerateDataError(std::string(e.what()) + " (utterance " + id +
                                ")");
    }
  };

  std::vector<double> out(raw_scores.size());
  for (size_t i = 0; i < trials.trials.size(); ++i) {
    const NormStats& e = stats_for(trials.trials[i].enroll);
    const NormStats& t = stats_for(trials.trials[i].test);
    out[i] = 0.5 * ((raw_scores[i] - e.mean) / e.sigma +
                    (raw_scores[i] - t.mean) / t.sigma);
  }
  return out;
}

GridResult GridSearchNorm(
    const io::TrialList& trials, const std::vector<double>& raw_scores,
    const std::unordered_map<std::string, std::vector<double>>& utt_embeddings,
    const std::vector<std::vector<double>>& dev_pool,
    const std::vector<int>& ns, const std::vector<int>& xs,
    const CohortConfig& cfg, const metrics::DcfConfig& dcf_cfg) {
  if (!trials.labeled) {
    throw std::invalid_argument("grid search needs labeled trials");
  }
  if (cfg.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  int max_n = 0;
  for (int n : ns) max_n = std::max(max_n, n);
  if (static_cast<int>(dev_pool.size()) < max_n) {
    throw std::invalid_argument("dev pool smaller than the largest N");
  }

  std::vector<bool> labels;
  labels.reserve(trials.trials.size());
  for (const io::Trial& t : trials.trials) labels.push_back(t.label == 1);

  GridResult result;
  for (int n : ns) {
    for (int x : xs) {
      if (x > n) {
        result.notes.push_back("skipped N=" + std::to_string(n) +
                               " X=" + std::to_string(x) + ": X > N");
        continue;
      }
      std::vector<double> eers, dcfs;
      eers.reserve(cfg.repeats);
      dcfs.reserve(cfg.repeats);
      for (int r = 0; r < cfg.repeats; ++r) {
        uint64_t seed = SeedHash()
                            .Mix(cfg.seed)
                            .Mix("cohort")
                            .Mix(static_cast<uint64_t>(n))
                            .Mix(static_cast<uint64_t>(x))
                            .Mix(static_cast<uint64_t>(r))
                            .value();
        Rng rng(seed);
        std::vector<int64_t> picked =
            rng.SampleWithoutReplacement(static_cast<int64_t>(dev_pool.size()),
                                         n);
        std::vector<std::vector<double>> cohort;
        cohort.reserve(n);
        for (int64_t idx : picked) cohort.push_back(dev_pool[idx]);

        std::vector<double> normed =
            AsNormScores(trials, raw_scores, utt_embeddings, cohort, x);
        eers.push_back(metrics::Eer(normed, labels).eer_percent);
        dcfs.push_back(metrics::MinDcf(normed, labels, dcf_cfg).value);
      }
      auto mean_std = [](const std::vector<double>& v) {
        double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
        double var = 0.0;
        for (double s : v) var += (s - mean) * (s - mean);
        // sample std over the repeats
        double std_ = v.size() > 1 ? std::sqrt(var / (v.size() - 1)) : 0.0;
        return std::pair<double, double>(mean, std_);
      };
      GridCell cell;
      cell.n = n;
      cell.x = x;
      std::tie(cell.eer_mean, cell.eer_std) = mean_std(eers);
      std::tie(cell.dcf_mean, cell.dcf_std) = mean_std(dcfs);
      result.cells.push_back(cell);
    }
  }
  if (result.cells.empty()) {
    throw std::invalid_argument("no feasible (N, X) cells");
  }

  // argmin of mean DCF; ties prefer the cheaper cohort: smaller N, then X
  int best = 0;
  for (int i = 1; i < static_cast<int>(result.cells.size()); ++i) {
    const GridCell& a = result.cells[i];
    const GridCell& b = result.cells[best];
    if (a.dcf_mean < b.dcf_mean ||
        (a.dcf_mean == b.dcf_mean &&
         (a.n < b.n || (a.n == b.n && a.x < b.x)))) {
      best = i;
    }
  }
  result.best_index = best;
  return result;
}

std::string FormatGridCsv(const GridResult& result) {
  std::string out = "N,X,eer_mean,eer_std,dcf_mean,dcf_std\n";
  for (const GridCell& cell : result.cells) {
    out += std::to_string(cell.n);
    out += ',';
    out += std::to_string(cell.x);
    out += ',';
    out += io::FormatDouble(cell.eer_mean, 6);
    out += ',';
    out += io::FormatDouble(cell.eer_std, 6);
    out += ',';
    out += io::FormatDouble(cell.dcf_mean, 6);
    out += ',';
    out += io::FormatDouble(cell.dcf_std, 6);
    out += '\n';
  }
  return out;
}

}  // namespace svkit::scoring
