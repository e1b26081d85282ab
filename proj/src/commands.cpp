// src/commands.cpp

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

#include "svkit/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "svkit/augment.hpp"
#include "svkit/fusion.hpp"
#include "svkit/io.hpp"
#include "svkit/metrics.hpp"
#include "svkit/rng.hpp"
#include "svkit/scoring.hpp"
#include "svkit/synthetic.hpp"
#include "svkit/wav_io.hpp"

namespace svkit::cli {

namespace fs = std::filesystem;

namespace {

void ParallelFor(size_t n, int jobs, const std::function<void(size_t)>& fn) {
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (jobs == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&]() {
      size_t i;
      while ((i = next.fetch_add(1)) < n) fn(i);
    });
  }
  for (std::thread& t : workers) t.join();
}

std::string SafeFileName(const std::string& id) {
  std::string out = id;
  for (char& c : out) {
    if (c == '/' || c == '\\') c = '_';
  }
  return out;
}

// Either a plain "<utt_id> <wav_path>" list or a full augmentation
// manifest (>= 4 tab-separated fields).
std::vector<io::ManifestRecord> ReadAnyManifest(const std::string& path) {
  std::string bytes = io::ReadFileBytes(path);
  std::istringstream in(bytes);
  std::string first;
  while (std::getline(in, first)) {
    if (!first.empty()) break;
  }
  if (std::count(first.begin(), first.end(), '\t') >= 3) {
    return io::ReadManifest(path);
  }
  std::vector<io::ManifestRecord> records;
  for (auto& [id, wav] : io::ReadUtteranceList(path)) {
    io::ManifestRecord rec;
    rec.utt_id = id;
    rec.source_path = wav;
    rec.transform = "none";
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<double> ToDouble(const std::vector<float>& v) {
  return std::vector<double>(v.begin(), v.end());
}

// Utterance-level records are the ids without a '#' segment suffix.
std::unordered_map<std::string, std::vector<double>> UtteranceVectors(
    const io::EmbeddingStore& store) {
  std::unordered_map<std::string, std::vector<double>> out;
  for (const auto& [id, values] : store.records()) {
    if (id.find('#') == std::string::npos) {
      out.emplace(id, ToDouble(values));
    }
  }
  return out;
}

std::vector<std::vector<double>> CohortPool(const io::EmbeddingStore& store) {
  std::vector<std::vector<double>> pool;
  for (const auto& [id, values] : store.records()) {
    if (id.find('#') == std::string::npos) {
      pool.push_back(ToDouble(values));
    }
  }
  return pool;
}

std::vector<bool> TrialLabels(const io::TrialList& trials) {
  if (!trials.labeled) {
    throw std::runtime_error("labeled trial list required");
  }
  std::vector<bool> labels;
  labels.reserve(trials.trials.size());
  for (const io::Trial& t : trials.trials) labels.push_back(t.label == 1);
  return labels;
}

std::vector<int> ParseIntList(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) throw std::runtime_error("empty value in list");
    out.push_back(std::stoi(tok));
  }
  if (out.empty()) throw std::runtime_error("empty list");
  return out;
}

int Guarded(const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const DegenerateDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerateData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace

ExperimentConfig ParseExperimentConfig(const io::KvConfig& kv) {
  ExperimentConfig cfg;

  std::string preset = kv.GetString("feature.preset", "fbank40");
  if (preset == "fbank40") {
    cfg.feature = dsp::FeatureConfig::Fbank40();
  } else if (preset == "fbank64") {
    cfg.feature = dsp::FeatureConfig::Fbank64();
  } else {
    throw std::runtime_error("unknown feature.preset: " + preset);
  }
  cfg.feature.n_mels =
      static_cast<int>(kv.GetInt("feature.n_mels", cfg.feature.n_mels));
  std::string window = kv.GetString(
      "feature.window",
      cfg.feature.window == dsp::WindowKind::kHann ? "hann" : "hamming");
  if (window == "hann") {
    cfg.feature.window = dsp::WindowKind::kHann;
  } else if (window == "hamming") {
    cfg.feature.window = dsp::WindowKind::kHamming;
  } else {
    throw std::runtime_error("unknown feature.window: " + window);
  }
  cfg.feature.win_len_ms =
      kv.GetDouble("feature.win_ms", cfg.feature.win_len_ms);
  cfg.feature.hop_ms = kv.GetDouble("feature.hop_ms", cfg.feature.hop_ms);
  cfg.feature.nfft = static_cast<int>(kv.GetInt("feature.nfft", cfg.feature.nfft));
  cfg.feature.preemphasis =
      kv.GetDouble("feature.preemphasis", cfg.feature.preemphasis);
  cfg.feature.fmin_hz = kv.GetDouble("feature.fmin_hz", cfg.feature.fmin_hz);
  cfg.feature.fmax_hz = kv.GetDouble("feature.fmax_hz", cfg.feature.fmax_hz);
  cfg.feature.Validate(16000);

  cfg.network.feat_dim = cfg.feature.n_mels;
  cfg.network.embed_dim =
      static_cast<int>(kv.GetInt("network.embed_dim", cfg.network.embed_dim));
  std::string pooling = kv.GetString("network.pooling", "sp");
  if (pooling == "sp") {
    cfg.network.pooling = nnet::Pooling::kStats;
  } else if (pooling == "asp") {
    cfg.network.pooling = nnet::Pooling::kAttentiveStats;
  } else {
    throw std::runtime_error("unknown network.pooling: " + pooling);
  }
  cfg.network.aggregate_stages = static_cast<int>(
      kv.GetInt("network.stages", cfg.network.aggregate_stages));
  cfg.network.asp_hidden =
      static_cast<int>(kv.GetInt("network.asp_hidden", cfg.network.asp_hidden));
  cfg.network.Validate();

  std::string kind = kv.GetString("loss.kind", "s_aam");
  if (kind == "s") {
    cfg.loss.kind = loss::LossKind::kSoftmax;
  } else if (kind == "aam") {
    cfg.loss.kind = loss::LossKind::kAamSoftmax;
  } else if (kind == "ap") {
    cfg.loss.kind = loss::LossKind::kAngularProto;
  } else if (kind == "ap_s") {
    cfg.loss.kind = loss::LossKind::kApPlusSoftmax;
  } else if (kind == "s_aam") {
    cfg.loss.kind = loss::LossKind::kSoftmaxThenAam;
  } else {
    throw std::runtime_error("unknown loss.kind: " + kind);
  }
  cfg.loss.margin = kv.GetDouble("loss.margin", cfg.loss.margin);
  cfg.loss.scale = kv.GetDouble("loss.scale", cfg.loss.scale);
  cfg.loss.switch_epoch =
      static_cast<int>(kv.GetInt("loss.switch_epoch", cfg.loss.switch_epoch));
  cfg.loss.ap_affine.w = kv.GetDouble("loss.ap_w", cfg.loss.ap_affine.w);
  cfg.loss.ap_affine.b = kv.GetDouble("loss.ap_b", cfg.loss.ap_affine.b);

  cfg.n_segments =
      static_cast<int>(kv.GetInt("scoring.segments", cfg.n_segments));
  cfg.segment_seconds =
      kv.GetDouble("scoring.segment_seconds", cfg.segment_seconds);
  cfg.master_seed = kv.GetUint("master_seed", cfg.master_seed);
  return cfg;
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  if (path.empty()) return ParseExperimentConfig(io::KvConfig::Parse(""));
  return ParseExperimentConfig(io::KvConfig::Load(path));
}

int CmdFeatures(const FeaturesArgs& args) {
  int failures = 0;
  int code = Guarded([&]() {
    ExperimentConfig cfg = LoadExperimentConfig(args.config);
    std::vector<io::ManifestRecord> records = ReadAnyManifest(args.manifest);
    fs::create_directories(args.out_dir);

    std::mutex mu;
    std::vector<std::string> errors;
    ParallelFor(records.size(), args.jobs, [&](size_t i) {
      const io::ManifestRecord& rec = records[i];
      try {
        Waveform wave = ReadWav(rec.source_path);
        FeatureMatrix feat = dsp::ExtractFbank(wave, cfg.feature);
        if (rec.transform == "specmask") {
          augment::MaskSpec spec;
          spec.max_time_mask_frames = std::stoi(rec.Param("max_time", "0"));
          spec.max_freq_mask_bins = std::stoi(rec.Param("max_freq", "0"));
          spec.n_masks = std::stoi(rec.Param("n_masks", "1"));
          Rng rng(rec.seed);
          feat = augment::SpecMask(feat, spec, &rng);
        }
        io::WriteMatrix(
            (fs::path(args.out_dir) / (SafeFileName(rec.utt_id) + ".fm"))
                .string(),
            feat);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(mu);
        errors.push_back(rec.utt_id + ": " + e.what());
      }
    });
    std::sort(errors.begin(), errors.end());
    for (const std::string& err : errors) {
      std::cerr << "features: " << err << "\n";
    }
    failures = static_cast<int>(errors.size());
    std::cout << "features: wrote " << records.size() - errors.size() << "/"
              << records.size() << " feature files to " << args.out_dir
              << "\n";
  });
  if (code != kExitOk) return code;
  return failures == 0 ? kExitOk : kExitInputError;
}

int CmdAugment(const AugmentArgs& args) {
  return Guarded([&]() {
    std::vector<augment::UtteranceRecord> utts;
    for (auto& [id, wav] : io::ReadUtteranceList(args.manifest)) {
      utts.push_back(augment::UtteranceRecord{id, wav});
    }
    augment::MaskSpec mask;
    mask.max_time_mask_frames = args.mask_time;
    mask.max_freq_mask_bins = args.mask_freq;
    mask.n_masks = args.n_masks;
    std::vector<io::ManifestRecord> manifest =
        augment::BuildOfflineManifest(utts, args.seed, mask);
    io::WriteManifest(args.out_manifest, manifest);
    std::cout << "augment: " << manifest.size() << " records for "
              << utts.size() << " utterances\n";
  });
}

int CmdRender(const RenderArgs& args) {
  return Guarded([&]() {
    std::vector<io::ManifestRecord> records = io::ReadManifest(args.manifest);

    // corpus listing: "<category> <wav_path>" per line
    std::unordered_map<std::string, std::vector<Waveform>> pools;
    {
      std::istringstream in(io::ReadFileBytes(args.corpus_listing));
      std::string line;
      while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string category, path;
        if (!(fields >> category >> path)) continue;
        pools[category].push_back(ReadWav(path));
      }
    }
    auto pool_for = [&pools](const std::string& category)
        -> const std::vector<Waveform>& {
      auto it = pools.find(category);
      if (it == pools.end() || it->second.empty()) {
        throw std::runtime_error("corpus has no material for category '" +
                                 category + "'");
      }
      return it->second;
    };

    fs::create_directories(args.out_dir);
    std::vector<io::ManifestRecord> rendered = records;
    size_t n_written = 0;
    for (size_t i = 0; i < records.size(); ++i) {
      const io::ManifestRecord& rec = records[i];
      if (rec.transform == "none" || rec.transform == "specmask") {
        continue;  // nothing to render; features handles specmask
      }
      Waveform wave = ReadWav(rec.source_path);
      Rng rng(rec.seed);
      Waveform out;
      if (rec.transform == "music" || rec.transform == "noise" ||
          rec.transform == "speech") {
        const std::vector<Waveform>& pool = pool_for(rec.transform);
        int n_sources = std::stoi(rec.Param("n", "1"));
        std::vector<Waveform> sources;
        for (int k = 0; k < n_sources; ++k) {
          const Waveform& file =
              pool[rng.UniformInt(0, static_cast<int64_t>(pool.size()) - 1)];
          std::vector<Waveform> segments = augment::SegmentCorpus(file);
          if (segments.empty()) {
            throw std::runtime_error("corpus recording shorter than 5 s for " +
                                     rec.transform);
          }
          sources.push_back(std::move(segments[rng.UniformInt(
              0, static_cast<int64_t>(segments.size()) - 1)]));
        }
        double snr = std::stod(rec.Param("snr", "10"));
        out = augment::MixAtSnr(wave, sources, snr, &rng);
      } else if (rec.transform.rfind("rir_", 0) == 0) {
        const std::vector<Waveform>& pool = pool_for(rec.transform);
        const Waveform& rir =
            pool[rng.UniformInt(0, static_cast<int64_t>(pool.size()) - 1)];
        out = augment::ApplyRir(wave, rir);
      } else {
        throw std::runtime_error("unknown transform: " + rec.transform);
      }
      std::string out_path =
          (fs::path(args.out_dir) / (SafeFileName(rec.utt_id) + ".wav"))
              .string();
      WriteWav(out_path, out);
      rendered[i].source_path = out_path;
      rendered[i].transform = "none";  // already applied
      ++n_written;
    }
    if (!args.out_manifest.empty()) {
      io::WriteManifest(args.out_manifest, rendered);
    }
    std::cout << "render: materialized " << n_written << " of "
              << records.size() << " records\n";
  });
}

int CmdEmbed(const EmbedArgs& args) {
  return Guarded([&]() {
    ExperimentConfig cfg = LoadExperimentConfig(args.config);
    if (args.seed != 0) cfg.master_seed = args.seed;
    auto utterances = io::ReadUtteranceList(args.manifest);
    nnet::Network net = nnet::Network::Build(
        cfg.network, DeriveSeed(cfg.master_seed, "network"));

    struct UttEmbeddings {
      std::vector<std::vector<float>> segments;
      std::vector<float> mean;
    };
    std::vector<UttEmbeddings> results(utterances.size());
    std::mutex mu;
    std::vector<std::string> errors;
    ParallelFor(utterances.size(), args.jobs, [&](size_t i) {
      try {
        Waveform wave = ReadWav(utterances[i].second);
        std::vector<Waveform> segments = scoring::SampleEvalSegments(
            wave, cfg.n_segments, cfg.segment_seconds);
        UttEmbeddings& out = results[i];
        std::vector<double> mean(cfg.network.embed_dim, 0.0);
        for (const Waveform& segment : segments) {
          FeatureMatrix feat = dsp::InstanceNormalize(
              dsp::ExtractFbank(segment, cfg.feature));
          std::vector<float> emb = net.Embed(feat);
          for (int d = 0; d < cfg.network.embed_dim; ++d) mean[d] += emb[d];
          out.segments.push_back(std::move(emb));
        }
        double norm = 0.0;
        for (double& v : mean) {
          v /= segments.size();
          norm += v * v;
        }
        norm = std::sqrt(norm);
        out.mean.resize(cfg.network.embed_dim);
        for (int d = 0; d < cfg.network.embed_dim; ++d) {
          out.mean[d] =
              static_cast<float>(norm > 0.0 ? mean[d] / norm : mean[d]);
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(mu);
        errors.push_back(utterances[i].first + ": " + e.what());
      }
    });
    if (!errors.empty()) {
      std::sort(errors.begin(), errors.end());
      std::string msg = "embedding failed for " +
                        std::to_string(errors.size()) + " utterance(s):";
      for (const std::string& err : errors) msg += "\n  " + err;
      throw std::runtime_error(msg);
    }

    io::EmbeddingStore store(cfg.network.embed_dim);
    for (size_t i = 0; i < utterances.size(); ++i) {
      const std::string& id = utterances[i].first;
      for (size_t k = 0; k < results[i].segments.size(); ++k) {
        store.Add(id + "#" + std::to_string(k),
                  std::move(results[i].segments[k]));
      }
      store.Add(id, std::move(results[i].mean));
    }
    store.Save(args.out_store);
    std::cout << "embed: " << store.size() << " records (dim "
              << store.dim() << ") -> " << args.out_store << "\n";
  });
}

int CmdScore(const ScoreArgs& args) {
  return Guarded([&]() {
    io::TrialList trials = io::ReadTrials(args.trials);
    io::EmbeddingStore store = io::EmbeddingStore::Load(args.store);

    // segment embeddings <id>#k when present, utterance vector otherwise
    std::unordered_map<std::string, std::vector<std::vector<double>>> cache;
    auto segments_for = [&](const std::string& id)
        -> const std::vector<std::vector<double>>& {
      auto it = cache.find(id);
      if (it != cache.end()) return it->second;
      std::vector<std::vector<double>> segs;
      for (int k = 0;; ++k) {
        const std::vector<float>* v = store.Find(id + "#" + std::to_string(k));
        if (!v) break;
        segs.push_back(ToDouble(*v));
      }
      if (segs.empty()) {
        const std::vector<float>* v = store.Find(id);
        if (!v) throw std::runtime_error("no embeddings for utterance " + id);
        segs.push_back(ToDouble(*v));
      }
      return cache.emplace(id, std::move(segs)).first->second;
    };

    std::vector<io::ScoreEntry> entries;
    entries.reserve(trials.trials.size());
    for (const io::Trial& t : trials.trials) {
      io::ScoreEntry e;
      e.enroll = t.enroll;
      e.test = t.test;
      e.score = scoring::TrialScore(segments_for(t.enroll),
                                    segments_for(t.test));
      entries.push_back(std::move(e));
    }
    io::WriteScores(args.out, entries);
    std::cout << "score: " << entries.size() << " trials -> " << args.out
              << "\n";
  });
}

int CmdNorm(const NormArgs& args) {
  return Guarded([&]() {
    io::TrialList trials = io::ReadTrials(args.trials);
    std::vector<double> raw =
        io::AlignScores(trials, io::ReadScores(args.scores));
    io::EmbeddingStore store = io::EmbeddingStore::Load(args.store);
    io::EmbeddingStore cohort_store =
        io::EmbeddingStore::Load(args.cohort_store);
    auto utt_embeddings = UtteranceVectors(store);
    std::vector<std::vector<double>> pool = CohortPool(cohort_store);

    if (!args.grid.empty()) {
      size_t slash = args.grid.find('/');
      if (slash == std::string::npos) {
        throw std::runtime_error("--grid expects N1,N2,../X1,X2,..");
      }
      scoring::CohortConfig cfg;
      cfg.repeats = args.repeats;
      cfg.seed = args.seed;
      scoring::GridResult result = scoring::GridSearchNorm(
          trials, raw, utt_embeddings, pool,
          ParseIntList(args.grid.substr(0, slash)),
          ParseIntList(args.grid.substr(slash + 1)), cfg,
          metrics::DcfConfig{});
      io::WriteFileAtomic(args.out, scoring::FormatGridCsv(result));
      for (const std::string& note : result.notes) {
        std::cerr << "norm: " << note << "\n";
      }
      const scoring::GridCell& best = result.cells[result.best_index];
      std::cout << "norm: grid -> " << args.out << "; selected N=" << best.n
                << " X=" << best.x << " (mean DCF "
                << io::FormatDouble(best.dcf_mean, 6) << ")\n";
      return;
    }

    int n = args.cohort_n > 0 ? args.cohort_n : static_cast<int>(pool.size());
    int x = args.top_x > 0 ? args.top_x : n;
    if (n > static_cast<int>(pool.size())) {
      throw std::runtime_error("cohort N exceeds the dev pool size");
    }
    std::vector<std::vector<double>> cohort;
    if (n == static_cast<int>(pool.size())) {
      cohort = std::move(pool);
    } else {
      Rng rng(DeriveSeed(args.seed, "cohort"));
      for (int64_t idx : rng.SampleWithoutReplacement(
               static_cast<int64_t>(pool.size()), n)) {
        cohort.push_back(pool[idx]);
      }
    }
    std::vector<double> normed =
        scoring::AsNormScores(trials, raw, utt_embeddings, cohort, x);
    std::vector<io::ScoreEntry> entries;
    entries.reserve(normed.size());
    for (size_t i = 0; i < normed.size(); ++i) {
      entries.push_back(io::ScoreEntry{trials.trials[i].enroll,
                                       trials.trials[i].test, normed[i]});
    }
    io::WriteScores(args.out, entries);
    std::cout << "norm: N=" << n << " X=" << x << " -> " << args.out << "\n";
  });
}

int CmdFuse(const FuseArgs& args) {
  return Guarded([&]() {
    io::KvConfig kv = io::KvConfig::Load(args.config);

    std::vector<int> indices;
    for (const auto& [key, value] : kv.values()) {
      if (key.rfind("system.", 0) == 0 &&
          key.size() > 7 + 7 &&
          key.compare(key.size() - 7, 7, ".scores") == 0) {
        indices.push_back(std::stoi(key.substr(7)));
      }
    }
    std::sort(indices.begin(), indices.end());
    if (indices.empty()) {
      throw std::runtime_error("fusion config lists no system.<i>.scores");
    }

    std::vector<std::vector<io::ScoreEntry>> files;
    std::vector<double> fixed_weights;
    bool all_weights = true;
    for (int i : indices) {
      std::string prefix = "system." + std::to_string(i);
      files.push_back(io::ReadScores(kv.GetString(prefix + ".scores")));
      if (kv.Has(prefix + ".weight")) {
        fixed_weights.push_back(kv.GetDouble(prefix + ".weight", 0.0));
      } else {
        all_weights = false;
      }
    }

    // reference trial order: the labeled list when given, else the first
    // system's file order
    io::TrialList trials;
    if (!args.trials.empty()) {
      trials = io::ReadTrials(args.trials);
    } else {
      for (const io::ScoreEntry& e : files[0]) {
        trials.trials.push_back(io::Trial{e.enroll, e.test, -1});
      }
    }
    std::vector<std::vector<double>> systems;
    systems.reserve(files.size());
    for (const auto& entries : files) {
      systems.push_back(io::AlignScores(trials, entries));
    }

    std::vector<double> weights;
    if (args.search) {
      fusion::SearchResult result = fusion::SearchWeights(
          systems, TrialLabels(trials), args.granularity,
          fusion::Objective::kDcf, metrics::DcfConfig{});
      weights = result.weights;
      if (!args.trace_out.empty()) {
        io::WriteFileAtomic(args.trace_out, fusion::FormatTraceCsv(result));
      }
      std::cout << "fuse: searched weights";
      for (double w : weights) std::cout << " " << io::FormatDouble(w, 2);
      std::cout << " (DCF " << io::FormatDouble(result.dcf, 6) << ", EER "
                << io::FormatDouble(result.eer_percent, 4) << "%)\n";
    } else {
      if (!all_weights || fixed_weights.size() != systems.size()) {
        throw std::runtime_error(
            "fixed fusion requires system.<i>.weight for every system "
            "(or pass --search)");
      }
      weights = fixed_weights;
    }

    std::vector<double> fused = fusion::Fuse(systems, weights);
    std::vector<io::ScoreEntry> entries;
    entries.reserve(fused.size());
    for (size_t i = 0; i < fused.size(); ++i) {
      entries.push_back(io::ScoreEntry{trials.trials[i].enroll,
                                       trials.trials[i].test, fused[i]});
    }
    io::WriteScores(args.out, entries);
    std::cout << "fuse: " << systems.size() << " systems -> " << args.out
              << "\n";
  });
}

int CmdEval(const EvalArgs& args) {
  return Guarded([&]() {
    io::TrialList trials = io::ReadTrials(args.trials);
    std::vector<double> scores =
        io::AlignScores(trials, io::ReadScores(args.scores));
    metrics::Report report =
        metrics::Evaluate(scores, TrialLabels(trials), metrics::DcfConfig{});
    std::cout << metrics::FormatReportLine(report) << " (targets "
              << report.n_target << ", nontargets " << report.n_nontarget
              << ")\n";
    if (!args.out_json.empty()) {
      io::WriteFileAtomic(args.out_json, metrics::FormatReportJson(report));
    }
  });
}

int CmdSynth(const SynthArgs& args) {
  return Guarded([&]() {
    synthetic::Spec spec;
    spec.n_speakers = args.speakers;
    spec.utterances_per_speaker = args.utts;
    spec.dim = args.dim;
    spec.within_speaker_spread = args.within;
    spec.between_speaker_spread = args.between;
    spec.seed = args.seed;
    synthetic::Data data = synthetic::Generate(spec);
    data.store.Save(args.out_store);
    io::WriteTrials(args.out_trials, data.trials);
    std::cout << "synth: " << data.store.size() << " embeddings, "
              << data.trials.trials.size() << " trials\n";
  });
}

}  // namespace svkit::cli
