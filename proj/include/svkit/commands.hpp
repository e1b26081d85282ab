// include/svkit/commands.hpp

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

#ifndef SVKIT_COMMANDS_HPP_
#define SVKIT_COMMANDS_HPP_

#include <cstdint>
#include <string>

#include "svkit/dsp.hpp"
#include "svkit/io.hpp"
#include "svkit/loss.hpp"
#include "svkit/nnet.hpp"

namespace svkit::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitDegenerateData = 2;

// Experiment configuration aggregated from a flat key=value file
// (feature.*, network.*, loss.*, scoring.*, master_seed). Every field has
// a default, so an empty config is valid.
struct ExperimentConfig {
  dsp::FeatureConfig feature = dsp::FeatureConfig::Fbank40();
  nnet::NetworkConfig network;
  loss::LossConfig loss;
  int n_segments = 10;
  double segment_seconds = 4.0;
  uint64_t master_seed = 0;
};

ExperimentConfig LoadExperimentConfig(const std::string& path);
ExperimentConfig ParseExperimentConfig(const io::KvConfig& kv);

struct FeaturesArgs {
  std::string manifest;  // 2-column utterance list or augmentation manifest
  std::string config;    // optional
  std::string out_dir;
  int jobs = 1;
};
int CmdFeatures(const FeaturesArgs& args);

struct AugmentArgs {
  std::string manifest;  // 2-column utterance list
  std::string out_manifest;
  uint64_t seed = 0;
  int mask_time = 20;
  int mask_freq = 8;
  int n_masks = 1;
};
int CmdAugment(const AugmentArgs& args);

struct RenderArgs {
  std::string manifest;        // augmentation manifest
  std::string corpus_listing;  // "<category> <wav_path>" lines
  std::string out_dir;
  std::string out_manifest;  // rewritten with rendered paths
};
int CmdRender(const RenderArgs& args);

struct EmbedArgs {
  std::string manifest;  // 2-column utterance list of WAVs
  std::string config;
  std::string out_store;
  uint64_t seed = 0;  // overrides config master_seed when nonzero
  int jobs = 1;
};
int CmdEmbed(const EmbedArgs& args);

struct ScoreArgs {
  std::string trials;
  std::string store;
  std::string out;
};
int CmdScore(const ScoreArgs& args);

struct NormArgs {
  std::string trials;
  std::string scores;
  std::string store;         // enroll/test utterance vectors
  std::string cohort_store;  // dev pool
  std::string grid;          // "N1,N2/X1,X2" -> grid CSV mode
  std::string out;
  int cohort_n = -1;  // plain mode; -1 = whole pool
  int top_x = -1;     // plain mode; -1 = all of cohort
  int repeats = 10;
  uint64_t seed = 0;
};
int CmdNorm(const NormArgs& args);

struct FuseArgs {
  std::string config;  // system.<i>.scores / system.<i>.weight
  std::string out;
  std::string trials;     // labeled; required for --search
  std::string trace_out;  // optional search trace CSV
  bool search = false;
  double granularity = 0.01;
};
int CmdFuse(const FuseArgs& args);

struct EvalArgs {
  std::string trials;
  std::string scores;
  std::string out_json;  // optional
};
int CmdEval(const EvalArgs& args);

struct SynthArgs {
  int speakers = 20;
  int utts = 10;
  int dim = 32;
  double within = 0.3;
  double between = 1.0;
  uint64_t seed = 0;
  std::string out_store;
  std::string out_trials;
};
int CmdSynth(const SynthArgs& args);

}  // namespace svkit::cli

#endif  // SVKIT_COMMANDS_HPP_
