// include/svkit/nnet.hpp

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

#ifndef SVKIT_NNET_HPP_
#define SVKIT_NNET_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "svkit/types.hpp"

namespace svkit::nnet {

// Forward-pass embedding network: a half-channel ResNet-34 trunk with
// statistics / attentive-statistics pooling, and an optional
// multiple-embedding aggregator over the last two or three residual stages.
//
// Stage strides are 2x2 on (freq, time), so with input 1 x D x L the
// activations are
//   Conv1, Res1: 32 x D x L
//   Res2:        64 x D/2 x ceil(L/2)
//   Res3:       128 x D/4 x ceil(L/4)
//   Res4:       256 x D/8 x ceil(L/8)
// and every pooled+flattened stage vector has width 2*C*F = 64*D.

// Dense (channels, freq, time) tensor; data[(c*F + f)*L + l].
struct Tensor3 {
  int channels = 0;
  int freq = 0;
  int time = 0;
  std::vector<float> data;

  Tensor3() = default;
  Tensor3(int c, int f, int l)
      : channels(c),
        freq(f),
        time(l),
        data(static_cast<size_t>(c) * f * l, 0.0f) {}

  float& At(int c, int f, int l) {
    return data[(static_cast<size_t>(c) * freq + f) * time + l];
  }
  float At(int c, int f, int l) const {
    return data[(static_cast<size_t>(c) * freq + f) * time + l];
  }
  size_t size() const { return data.size(); }
};

enum class Pooling { kStats, kAttentiveStats };

struct NetworkConfig {
  int feat_dim = 40;    // D, divisible by 8
  int embed_dim = 256;  // M
  Pooling pooling = Pooling::kStats;
  int aggregate_stages = 1;  // K: 1 trunk-only, 2 = {Res4,Res3}, 3 = +Res2
  int asp_hidden = 128;

  // Half of standard ResNet-34 channels; canonical [3,4,6,3] block layout.
  static constexpr std::array<int, 4> kChannels{32, 64, 128, 256};
  static constexpr std::array<int, 4> kBlocksPerStage{3, 4, 6, 3};

  void Validate() const;
};

struct AspParams {
  int hidden = 0;
  std::vector<float> w1;      // hidden
  std::vector<float> b1;      // hidden
  std::vector<float> w2;      // hidden
  std::vector<float> b2{0.0f};  // scalar, kept as a 1-element parameter
};

// Mean and population std over time per (channel, freq) cell; mean part
// first, std part second. Output length 2*C*F.
std::vector<double> StatsPool(const Tensor3& x);

// Scalar attention per time step: the (C,F)-mean at each step feeds a
// 1 -> hidden -> 1 tanh bottleneck, softmax over time, then weighted mean
// and weighted std per cell. attention_out, when given, receives the
// softmax weights.
std::vector<double> AttentiveStatsPool(const Tensor3& x, const AspParams& asp,
                                       std::vector<double>* attention_out =
                                           nullptr);

// out[d] = sum_k softmax_over_k(w_k[d]) * emb_k[d].
std::vector<double> AggregateEmbeddings(
    const std::vector<std::vector<double>>& embeddings,
    const std::vector<std::vector<double>>& stage_weights);

struct Param {
  std::string name;
  std::vector<int> shape;
  std::vector<float>* values = nullptr;
};

class Network {
 public:
  // Deterministic construction: He-uniform fan-in weights drawn from the
  // seed in declaration order, norm affine = (1, 0), biases = 0,
  // aggregator weights = 0.
  static Network Build(const NetworkConfig& cfg, uint64_t seed);

  const NetworkConfig& config() const { return cfg_; }

  // Activations after Conv1 and each residual stage, in order.
  // feat is frames x D; requires frames >= 8.
  std::vector<Tensor3> TrunkForward(const FeatureMatrix& feat) const;

  // Full forward: trunk, per-stage pooling head(s), linear projection(s),
  // aggregation. Returns the M-dimensional embedding.
  std::vector<float> Embed(const FeatureMatrix& feat) const;

  int64_t NumParams() const;

  // Parameter table in serialization order. Pointers stay valid while the
  // network is alive; mutation is for tests (e.g. forcing uniform
  // attention).
  std::vector<Param> Params();
  std::vector<const float*> ParamData() const;
  std::vector<float>* FindParam(const std::string& name);

  // Flat binary container: magic, config fields, then named blobs
  // (u32 name_len, name, u32 rank, u32 dims, f32 payload). Round-trips
  // bit-exactly.
  std::string Serialize() const;
  void Save(const std::string& path) const;
  static Network Deserialize(const std::string& bytes);
  static Network Load(const std::string& path);

 private:
  struct Conv {
    int in_ch = 0, out_ch = 0, ksize = 3, stride = 1;
    std::vector<float> weight;  // out_ch x in_ch x k x k
  };
  struct Norm {
    std::vector<float> gamma, beta;
  };
  struct Block {
    Conv conv1;
    Norm norm1;
    Conv conv2;
    Norm norm2;
    bool has_proj = false;
    Conv proj;
    Norm proj_norm;
  };
  struct Stage {
    std::vector<Block> blocks;
  };
  struct Linear {
    int in = 0, out = 0;
    std::vector<float> weight;  // out x in
    std::vector<float> bias;    // out
  };
  struct Head {
    AspParams asp;  // unused for kStats
    Linear linear;
  };

  Network() = default;

  Tensor3 RunBlock(const Block& block, const Tensor3& x) const;
  std::vector<double> RunHead(const Head& head, const Tensor3& x) const;
  void CollectParams(std::vector<Param>* out);

  NetworkConfig cfg_;
  Conv conv1_;
  Norm norm1_;
  std::array<Stage, 4> stages_;
  std::vector<Head> heads_;                       // K heads: Res4, Res3, Res2
  std::vector<std::vector<float>> agg_weights_;  // K x M
};

}  // namespace svkit::nnet

#endif  // SVKIT_NNET_HPP_
