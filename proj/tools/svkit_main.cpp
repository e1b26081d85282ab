// tools/svkit_main.cpp

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

#include <CLI11.hpp>

#include "svkit/commands.hpp"

int main(int argc, char** argv) {
  using namespace svkit::cli;

  CLI::App app{"speaker-verification evaluation toolkit"};
  app.require_subcommand(1);

  FeaturesArgs features;
  CLI::App* cmd = app.add_subcommand(
      "features", "extract log mel-filterbank features from WAV files");
  cmd->add_option("--manifest", features.manifest,
                  "utterance list or augmentation manifest")
      ->required();
  cmd->add_option("--config", features.config, "experiment config file");
  cmd->add_option("--out", features.out_dir, "output directory")->required();
  cmd->add_option("--jobs", features.jobs, "parallel workers");
  cmd->callback([&]() { std::exit(CmdFeatures(features)); });

  AugmentArgs augment;
  cmd = app.add_subcommand("augment",
                           "build the 5x offline augmentation manifest");
  cmd->add_option("--manifest", augment.manifest, "utterance list")
      ->required();
  cmd->add_option("--out", augment.out_manifest, "output manifest")
      ->required();
  cmd->add_option("--seed", augment.seed, "master seed");
  cmd->add_option("--mask-time", augment.mask_time,
                  "max time-mask width (frames)");
  cmd->add_option("--mask-freq", augment.mask_freq,
                  "max frequency-mask width (bins)");
  cmd->add_option("--n-masks", augment.n_masks, "masks per axis");
  cmd->callback([&]() { std::exit(CmdAugment(augment)); });

  RenderArgs render;
  cmd = app.add_subcommand("render",
                           "materialize audio for an augmentation manifest");
  cmd->add_option("--manifest", render.manifest, "augmentation manifest")
      ->required();
  cmd->add_option("--corpus", render.corpus_listing,
                  "'<category> <wav>' listing (speech/music/noise/rir_*)")
      ->required();
  cmd->add_option("--out", render.out_dir, "output directory")->required();
  cmd->add_option("--out-manifest", render.out_manifest,
                  "manifest rewritten with rendered paths");
  cmd->callback([&]() { std::exit(CmdRender(render)); });

  EmbedArgs embed;
  cmd = app.add_subcommand(
      "embed", "extract 10-segment + mean embeddings per utterance");
  cmd->add_option("--manifest", embed.manifest, "utterance list")->required();
  cmd->add_option("--config", embed.config, "experiment config file");
  cmd->add_option("--out", embed.out_store, "output embedding store")
      ->required();
  cmd->add_option("--seed", embed.seed,
                  "master seed override (0 keeps the config value)");
  cmd->add_option("--jobs", embed.jobs, "parallel workers");
  cmd->callback([&]() { std::exit(CmdEmbed(embed)); });

  ScoreArgs score;
  cmd = app.add_subcommand("score", "10x10 mean-cosine trial scoring");
  cmd->add_option("--trials", score.trials, "trial list")->required();
  cmd->add_option("--store", score.store, "embedding store")->required();
  cmd->add_option("--out", score.out, "output score file")->required();
  cmd->callback([&]() { std::exit(CmdScore(score)); });

  NormArgs norm;
  cmd = app.add_subcommand(
      "norm", "adaptive symmetric score normalization / cohort grid search");
  cmd->add_option("--trials", norm.trials, "trial list")->required();
  cmd->add_option("--scores", norm.scores, "raw score file")->required();
  cmd->add_option("--store", norm.store, "embedding store for the trials")
      ->required();
  cmd->add_option("--cohort-store", norm.cohort_store,
                  "embedding store of the cohort dev pool")
      ->required();
  cmd->add_option("--grid", norm.grid,
                  "grid mode: N1,N2,../X1,X2,.. -> CSV output");
  cmd->add_option("--out", norm.out, "output (score file, or CSV with --grid)")
      ->required();
  cmd->add_option("--n", norm.cohort_n, "cohort size (plain mode)");
  cmd->add_option("--x", norm.top_x, "top-X count (plain mode)");
  cmd->add_option("--repeats", norm.repeats, "cohort draws per grid cell");
  cmd->add_option("--seed", norm.seed, "master seed");
  cmd->callback([&]() { std::exit(CmdNorm(norm)); });

  FuseArgs fuse;
  cmd = app.add_subcommand("fuse", "min-max scaled weighted score fusion");
  cmd->add_option("--config", fuse.config,
                  "fusion config (system.<i>.scores / .weight)")
      ->required();
  cmd->add_option("--out", fuse.out, "output score file")->required();
  cmd->add_option("--trials", fuse.trials, "labeled trials (for --search)");
  cmd->add_flag("--search", fuse.search, "search weights by DCF");
  cmd->add_option("--granularity", fuse.granularity,
                  "refinement step for --search");
  cmd->add_option("--trace", fuse.trace_out, "search trace CSV");
  cmd->callback([&]() { std::exit(CmdFuse(fuse)); });

  EvalArgs eval;
  cmd = app.add_subcommand("eval", "EER / minDCF report");
  cmd->add_option("--trials", eval.trials, "labeled trial list")->required();
  cmd->add_option("--scores", eval.scores, "score file")->required();
  cmd->add_option("--out", eval.out_json, "JSON report path");
  cmd->callback([&]() { std::exit(CmdEval(eval)); });

  SynthArgs synth;
  cmd = app.add_subcommand("synth",
                           "generate a synthetic embedding store + trials");
  cmd->add_option("--speakers", synth.speakers, "number of speakers");
  cmd->add_option("--utts", synth.utts, "utterances per speaker");
  cmd->add_option("--dim", synth.dim, "embedding dimension");
  cmd->add_option("--within", synth.within, "within-speaker spread");
  cmd->add_option("--between", synth.between, "between-speaker spread");
  cmd->add_option("--seed", synth.seed, "master seed");
  cmd->add_option("--out-store", synth.out_store, "output embedding store")
      ->required();
  cmd->add_option("--out-trials", synth.out_trials, "output trial list")
      ->required();
  cmd->callback([&]() { std::exit(CmdSynth(synth)); });

  CLI11_PARSE(app, argc, argv);
  return kExitOk;
}
