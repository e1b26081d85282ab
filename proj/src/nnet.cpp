// src/nnet.cpp

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

#include "svkit/nnet.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstring>
#include <numeric>

#include "svkit/io.hpp"
#include "svkit/rng.hpp"

namespace svkit::nnet {

namespace {

using RowMajorF =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr float kNormEps = 1e-5f;
constexpr char kNetMagic[4] = {'S', 'V', 'N', 'W'};
constexpr uint32_t kNetVersion = 1;

// 3x3 convs use padding 1, 1x1 projections padding 0; both give
// out = ceil(in / stride).
int ConvOutDim(int in, int ksize, int stride) {
  int pad = ksize == 3 ? 1 : 0;
  return (in + 2 * pad - ksize) / stride + 1;
}

void HeUniform(std::vector<float>* w, int fan_in, Rng* rng) {
  double limit = std::sqrt(6.0 / fan_in);
  for (float& v : *w) {
    v = static_cast<float>(rng->Uniform(-limit, limit));
  }
}

}  // namespace

void NetworkConfig::Validate() const {
  if (feat_dim <= 0 || feat_dim % 8 != 0) {
    throw std::invalid_argument("feat_dim must be positive and divisible by 8");
  }
  if (embed_dim <= 0) {
    throw std::invalid_argument("embed_dim must be positive");
  }
  if (aggregate_stages < 1 || aggregate_stages > 3) {
    throw std::invalid_argument("aggregate_stages must be 1, 2 or 3");
  }
  if (asp_hidden <= 0) {
    throw std::invalid_argument("asp_hidden must be positive");
  }
}

// ---- pooling ----

std::vector<double> StatsPool(const Tensor3& x) {
  if (x.time < 1) throw std::invalid_argument("empty time axis");
  size_t cells = static_cast<size_t>(x.channels) * x.freq;
  std::vector<double> out(2 * cells);
  for (size_t cf = 0; cf < cells; ++cf) {
    const float* row = x.data.data() + cf * x.time;
    double mean = 0.0;
    for (int t = 0; t < x.time; ++t) mean += row[t];
    mean /= x.time;
    double var = 0.0;
    for (int t = 0; t < x.time; ++t) {
      double d = row[t] - mean;
      var += d * d;
    }
    var /= x.time;
    out[cf] = mean;
    out[cells + cf] = std::sqrt(std::max(var, 0.0));
  }
  return out;
}

std::vector<double> AttentiveStatsPool(const Tensor3& x, const AspParams& asp,
                                       std::vector<double>* attention_out) {
  if (x.time < 1) throw std::invalid_argument("empty time axis");
  if (static_cast<int>(asp.w1.size()) != asp.hidden ||
      static_cast<int>(asp.b1.size()) != asp.hidden ||
      static_cast<int>(asp.w2.size()) != asp.hidden || asp.b2.size() != 1) {
    throw std::invalid_argument("inconsistent attention parameters");
  }
  size_t cells = static_cast<size_t>(x.channels) * x.freq;

  // scalar per step: mean over (C, F), then a 1 -> hidden -> 1 bottleneck
  std::vector<double> context(x.time, 0.0);
  for (size_t cf = 0; cf < cells; ++cf) {
    const float* row = x.data.data() + cf * x.time;
    for (int t = 0; t < x.time; ++t) context[t] += row[t];
  }
  for (double& v : context) v /= static_cast<double>(cells);

  std::vector<double> energy(x.time);
  for (int t = 0; t < x.time; ++t) {
    double e = asp.b2[0];
    for (int h = 0; h < asp.hidden; ++h) {
      e += asp.w2[h] * std::tanh(asp.w1[h] * context[t] + asp.b1[h]);
    }
    energy[t] = e;
  }
  double emax = *std::max_element(energy.begin(), energy.end());
  double esum = 0.0;
  std::vector<double> attn(x.time);
  for (int t = 0; t < x.time; ++t) {
    attn[t] = std::exp(energy[t] - emax);
    esum += attn[t];
  }
  for (double& a : attn) a /= esum;
  if (attention_out) *attention_out = attn;

  std::vector<double> out(2 * cells);
  for (size_t cf = 0; cf < cells; ++cf) {
    const float* row = x.data.data() + cf * x.time;
    double mean = 0.0, sq = 0.0;
    for (int t = 0; t < x.time; ++t) {
      mean += attn[t] * row[t];
      sq += attn[t] * row[t] * row[t];
    }
    out[cf] = mean;
    out[cells + cf] = std::sqrt(std::max(sq - mean * mean, 0.0));
  }
  return out;
}

std::vector<double> AggregateEmbeddings(
    const std::vector<std::vector<double>>& embeddings,
    const std::vector<std::vector<double>>& stage_weights) {
  if (embeddings.empty()) throw std::invalid_argument("no embeddings");
  if (stage_weights.size() != embeddings.size()) {
    throw std::invalid_argument("one weight vector per stage required");
  }
  size_t dim = embeddings[0].size();
  for (const auto& e : embeddings) {
    if (e.size() != dim) throw std::invalid_argument("mismatched lengths");
  }
  for (const auto& w : stage_weights) {
    if (w.size() != dim) throw std::invalid_argument("mismatched lengths");
  }
  size_t k = embeddings.size();
  std::vector<double> out(dim, 0.0);
  std::vector<double> soft(k);
  for (size_t d = 0; d < dim; ++d) {
    double wmax = stage_weights[0][d];
    for (size_t i = 1; i < k; ++i) wmax = std::max(wmax, stage_weights[i][d]);
    double sum = 0.0;
    for (size_t i = 0; i < k; ++i) {
      soft[i] = std::exp(stage_weights[i][d] - wmax);
      sum += soft[i];
    }
    for (size_t i = 0; i < k; ++i) {
      out[d] += soft[i] / sum * embeddings[i][d];
    }
  }
  return out;
}

// ---- layer forward ----

namespace {

Tensor3 ConvForward(int in_ch, int out_ch, int ksize, int stride,
                    const std::vector<float>& weight, const Tensor3& x) {
  int fo = ConvOutDim(x.freq, ksize, stride);
  int lo = ConvOutDim(x.time, ksize, stride);
  int pad = ksize == 3 ? 1 : 0;
  int patch = in_ch * ksize * ksize;
  int positions = fo * lo;

  // im2col, one row per (ci, df, dl) weight coordinate
  RowMajorF col(patch, positions);
  col.setZero();
  for (int ci = 0; ci < in_ch; ++ci) {
    for (int df = 0; df < ksize; ++df) {
      for (int dl = 0; dl < ksize; ++dl) {
        int k = (ci * ksize + df) * ksize + dl;
        float* dst = col.data() + static_cast<size_t>(k) * positions;
        for (int f = 0; f < fo; ++f) {
          int fi = f * stride + df - pad;
          if (fi < 0 || fi >= x.freq) continue;
          const float* src =
              x.data.data() + (static_cast<size_t>(ci) * x.freq + fi) * x.time;
          float* row = dst + static_cast<size_t>(f) * lo;
          for (int l = 0; l < lo; ++l) {
            int li = l * stride + dl - pad;
            if (li < 0 || li >= x.time) continue;
            row[l] = src[li];
          }
        }
      }
    }
  }

  Tensor3 out(out_ch, fo, lo);
  Eigen::Map<const RowMajorF> w(weight.data(), out_ch, patch);
  Eigen::Map<RowMajorF> y(out.data.data(), out_ch, positions);
  y.noalias() = w * col;
  return out;
}

// Per-channel normalization over (freq, time) with learnable affine;
// statistics come from the sample itself (inference-mode, batch-free).
void NormInPlace(const std::vector<float>& gamma,
                 const std::vector<float>& beta, Tensor3* x) {
  size_t plane = static_cast<size_t>(x->freq) * x->time;
  for (int c = 0; c < x->channels; ++c) {
    float* data = x->data.data() + c * plane;
    double mean = 0.0;
    for (size_t i = 0; i < plane; ++i) mean += data[i];
    mean /= static_cast<double>(plane);
    double var = 0.0;
    for (size_t i = 0; i < plane; ++i) {
      double d = data[i] - mean;
      var += d * d;
    }
    var /= static_cast<double>(plane);
    float inv = static_cast<float>(1.0 / std::sqrt(var + kNormEps));
    float g = gamma[c], b = beta[c], m = static_cast<float>(mean);
    for (size_t i = 0; i < plane; ++i) {
      data[i] = g * ((data[i] - m) * inv) + b;
    }
  }
}

void ReluInPlace(Tensor3* x) {
  for (float& v : x->data) v = v > 0.0f ? v : 0.0f;
}

}  // namespace

Tensor3 Network::RunBlock(const Block& block, const Tensor3& x) const {
  Tensor3 y = ConvForward(block.conv1.in_ch, block.conv1.out_ch,
                          block.conv1.ksize, block.conv1.stride,
                          block.conv1.weight, x);
  NormInPlace(block.norm1.gamma, block.norm1.beta, &y);
  ReluInPlace(&y);
  Tensor3 z = ConvForward(block.conv2.in_ch, block.conv2.out_ch,
                          block.conv2.ksize, block.conv2.stride,
                          block.conv2.weight, y);
  NormInPlace(block.norm2.gamma, block.norm2.beta, &z);

  if (block.has_proj) {
    Tensor3 shortcut = ConvForward(block.proj.in_ch, block.proj.out_ch,
                                   block.proj.ksize, block.proj.stride,
                                   block.proj.weight, x);
    NormInPlace(block.proj_norm.gamma, block.proj_norm.beta, &shortcut);
    for (size_t i = 0; i < z.data.size(); ++i) z.data[i] += shortcut.data[i];
  } else {
    for (size_t i = 0; i < z.data.size(); ++i) z.data[i] += x.data[i];
  }
  ReluInPlace(&z);
  return z;
}

std::vector<Tensor3> Network::TrunkForward(const FeatureMatrix& feat) const {
  if (feat.cols != cfg_.feat_dim) {
    throw std::invalid_argument("feature dim does not match the network");
  }
  if (feat.rows < 8) {
    throw std::invalid_argument(
        "need at least 8 frames for three stride-2 stages");
  }
  int D = cfg_.feat_dim;
  int L = static_cast<int>(feat.rows);
  Tensor3 x(1, D, L);
  for (int l = 0; l < L; ++l) {
    for (int d = 0; d < D; ++d) {
      x.At(0, d, l) = static_cast<float>(feat.At(l, d));
    }
  }

  std::vector<Tensor3> acts;
  acts.reserve(5);
  Tensor3 y = ConvForward(conv1_.in_ch, conv1_.out_ch, conv1_.ksize,
                          conv1_.stride, conv1_.weight, x);
  NormInPlace(norm1_.gamma, norm1_.beta, &y);
  ReluInPlace(&y);
  acts.push_back(y);
  for (const Stage& stage : stages_) {
    for (const Block& block : stage.blocks) {
      y = RunBlock(block, y);
    }
    acts.push_back(y);
  }
  return acts;
}

std::vector<double> Network::RunHead(const Head& head, const Tensor3& x) const {
  std::vector<double> pooled =
      cfg_.pooling == Pooling::kStats ? StatsPool(x)
                                      : AttentiveStatsPool(x, head.asp);
  if (static_cast<int>(pooled.size()) != head.linear.in) {
    throw std::logic_error("pooled width does not match the projection");
  }
  std::vector<double> out(head.linear.out);
  for (int o = 0; o < head.linear.out; ++o) {
    const float* row =
        head.linear.weight.data() + static_cast<size_t>(o) * head.linear.in;
    double acc = head.linear.bias[o];
    for (int i = 0; i < head.linear.in; ++i) acc += row[i] * pooled[i];
    out[o] = acc;
  }
  return out;
}

std::vector<float> Network::Embed(const FeatureMatrix& feat) const {
  std::vector<Tensor3> acts = TrunkForward(feat);
  int k = cfg_.aggregate_stages;
  std::vector<std::vector<double>> stage_embs(k);
  for (int i = 0; i < k; ++i) {
    // head 0 pools Res4, head 1 Res3, head 2 Res2
    stage_embs[i] = RunHead(heads_[i], acts[4 - i]);
  }
  std::vector<double> result;
  if (k == 1) {
    result = std::move(stage_embs[0]);
  } else {
    std::vector<std::vector<double>> weights(k);
    for (int i = 0; i < k; ++i) {
      weights[i].assign(agg_weights_[i].begin(), agg_weights_[i].end());
    }
    result = AggregateEmbeddings(stage_embs, weights);
  }
  std::vector<float> out(result.size());
  for (size_t i = 0; i < result.size(); ++i) {
    out[i] = static_cast<float>(result[i]);
  }
  return out;
}

// ---- construction ----

Network Network::Build(const NetworkConfig& cfg, uint64_t seed) {
  cfg.Validate();
  Network net;
  net.cfg_ = cfg;
  Rng rng(seed);

  auto make_conv = [&rng](int in_ch, int out_ch, int ksize, int stride) {
    Conv conv;
    conv.in_ch = in_ch;
    conv.out_ch = out_ch;
    conv.ksize = ksize;
    conv.stride = stride;
    conv.weight.resize(static_cast<size_t>(out_ch) * in_ch * ksize * ksize);
    HeUniform(&conv.weight, in_ch * ksize * ksize, &rng);
    return conv;
  };
  auto make_norm = [](int channels) {
    Norm norm;
    norm.gamma.assign(channels, 1.0f);
    norm.beta.assign(channels, 0.0f);
    return norm;
  };

  // stem: 3x3x32, stride removed (1x1)
  net.conv1_ = make_conv(1, NetworkConfig::kChannels[0], 3, 1);
  net.norm1_ = make_norm(NetworkConfig::kChannels[0]);

  int in_ch = NetworkConfig::kChannels[0];
  for (int s = 0; s < 4; ++s) {
    int out_ch = NetworkConfig::kChannels[s];
    int entry_stride = s == 0 ? 1 : 2;
    Stage& stage = net.stages_[s];
    for (int b = 0; b < NetworkConfig::kBlocksPerStage[s]; ++b) {
      Block block;
      int stride = b == 0 ? entry_stride : 1;
      int block_in = b == 0 ? in_ch : out_ch;
      block.conv1 = make_conv(block_in, out_ch, 3, stride);
      block.norm1 = make_norm(out_ch);
      block.conv2 = make_conv(out_ch, out_ch, 3, 1);
      block.norm2 = make_norm(out_ch);
      block.has_proj = (stride != 1 || block_in != out_ch);
      if (block.has_proj) {
        block.proj = make_conv(block_in, out_ch, 1, stride);
        block.proj_norm = make_norm(out_ch);
      }
      stage.blocks.push_back(std::move(block));
    }
    in_ch = out_ch;
  }

  int flat_width = 64 * cfg.feat_dim;  // 2*C*F at every stage
  net.heads_.resize(cfg.aggregate_stages);
  for (int k = 0; k < cfg.aggregate_stages; ++k) {
    Head& head = net.heads_[k];
    if (cfg.pooling == Pooling::kAttentiveStats) {
      head.asp.hidden = cfg.asp_hidden;
      head.asp.w1.resize(cfg.asp_hidden);
      HeUniform(&head.asp.w1, 1, &rng);
      head.asp.b1.assign(cfg.asp_hidden, 0.0f);
      head.asp.w2.resize(cfg.asp_hidden);
      HeUniform(&head.asp.w2, cfg.asp_hidden, &rng);
      head.asp.b2.assign(1, 0.0f);
    }
    head.linear.in = flat_width;
    head.linear.out = cfg.embed_dim;
    head.linear.weight.resize(static_cast<size_t>(flat_width) *
                              cfg.embed_dim);
    HeUniform(&head.linear.weight, flat_width, &rng);
    head.linear.bias.assign(cfg.embed_dim, 0.0f);
  }
  if (cfg.aggregate_stages > 1) {
    net.agg_weights_.assign(cfg.aggregate_stages,
                            std::vector<float>(cfg.embed_dim, 0.0f));
  }
  return net;
}

// ---- parameter table / serialization ----

void Network::CollectParams(std::vector<Param>* out) {
  auto add = [out](const std::string& name, std::vector<int> shape,
                   std::vector<float>* values) {
    size_t expected = 1;
    for (int d : shape) expected *= static_cast<size_t>(d);
    if (expected != values->size()) {
      throw std::logic_error("parameter shape mismatch for " + name);
    }
    out->push_back(Param{name, std::move(shape), values});
  };
  auto add_conv = [&add](const std::string& prefix, Conv& conv) {
    add(prefix + ".weight", {conv.out_ch, conv.in_ch, conv.ksize, conv.ksize},
        &conv.weight);
  };
  auto add_norm = [&add](const std::string& prefix, Norm& norm) {
    add(prefix + ".gamma", {static_cast<int>(norm.gamma.size())}, &norm.gamma);
    add(prefix + ".beta", {static_cast<int>(norm.beta.size())}, &norm.beta);
  };

  add_conv("conv1", conv1_);
  add_norm("conv1.norm", norm1_);
  for (int s = 0; s < 4; ++s) {
    for (size_t b = 0; b < stages_[s].blocks.size(); ++b) {
      std::string prefix =
          "res" + std::to_string(s + 1) + ".block" + std::to_string(b);
      Block& block = stages_[s].blocks[b];
      add_conv(prefix + ".conv1", block.conv1);
      add_norm(prefix + ".norm1", block.norm1);
      add_conv(prefix + ".conv2", block.conv2);
      add_norm(prefix + ".norm2", block.norm2);
      if (block.has_proj) {
        add_conv(prefix + ".proj", block.proj);
        add_norm(prefix + ".proj.norm", block.proj_norm);
      }
    }
  }
  for (size_t k = 0; k < heads_.size(); ++k) {
    std::string prefix = "head" + std::to_string(k);
    Head& head = heads_[k];
    if (cfg_.pooling == Pooling::kAttentiveStats) {
      add(prefix + ".attn.w1", {head.asp.hidden}, &head.asp.w1);
      add(prefix + ".attn.b1", {head.asp.hidden}, &head.asp.b1);
      add(prefix + ".attn.w2", {head.asp.hidden}, &head.asp.w2);
      add(prefix + ".attn.b2", {1}, &head.asp.b2);
    }
    add(prefix + ".linear.weight", {head.linear.out, head.linear.in},
        &head.linear.weight);
    add(prefix + ".linear.bias", {head.linear.out}, &head.linear.bias);
  }
  for (size_t k = 0; k < agg_weights_.size(); ++k) {
    add("agg.weight" + std::to_string(k), {cfg_.embed_dim}, &agg_weights_[k]);
  }
}

std::vector<Param> Network::Params() {
  std::vector<Param> out;
  CollectParams(&out);
  return out;
}

std::vector<const float*> Network::ParamData() const {
  std::vector<Param> params;
  const_cast<Network*>(this)->CollectParams(&params);
  std::vector<const float*> out;
  out.reserve(params.size());
  for (const Param& p : params) out.push_back(p.values->data());
  return out;
}

std::vector<float>* Network::FindParam(const std::string& name) {
  for (Param& p : Params()) {
    if (p.name == name) return p.values;
  }
  return nullptr;
}

int64_t Network::NumParams() const {
  std::vector<Param> params;
  const_cast<Network*>(this)->CollectParams(&params);
  int64_t total = 0;
  for (const Param& p : params) {
    total += static_cast<int64_t>(p.values->size());
  }
  return total;
}

std::string Network::Serialize() const {
  std::vector<Param> params;
  const_cast<Network*>(this)->CollectParams(&params);

  std::string out;
  auto put_u32 = [&out](uint32_t v) {
    out.append(reinterpret_cast<const char*>(&v), 4);
  };
  out.append(kNetMagic, 4);
  put_u32(kNetVersion);
  put_u32(static_cast<uint32_t>(cfg_.feat_dim));
  put_u32(static_cast<uint32_t>(cfg_.embed_dim));
  put_u32(cfg_.pooling == Pooling::kStats ? 0 : 1);
  put_u32(static_cast<uint32_t>(cfg_.aggregate_stages));
  put_u32(static_cast<uint32_t>(cfg_.asp_hidden));
  put_u32(static_cast<uint32_t>(params.size()));
  for (const Param& p : params) {
    put_u32(static_cast<uint32_t>(p.name.size()));
    out.append(p.name);
    put_u32(static_cast<uint32_t>(p.shape.size()));
    for (int d : p.shape) put_u32(static_cast<uint32_t>(d));
    out.append(reinterpret_cast<const char*>(p.values->data()),
               p.values->size() * 4);
  }
  return out;
}

void Network::Save(const std::string& path) const {
  io::WriteFileAtomic(path, Serialize());
}

Network Network::Deserialize(const std::string& bytes) {
  size_t pos = 0;
  auto need = [&](size_t n) {
    if (pos + n > bytes.size()) {
      throw std::runtime_error("truncated network container");
    }
  };
  auto get_u32 = [&]() {
    need(4);
    uint32_t v;
    std::memcpy(&v, bytes.data() + pos, 4);
    pos += 4;
    return v;
  };

  need(4);
  if (std::memcmp(bytes.data(), kNetMagic, 4) != 0) {
    throw std::runtime_error("not a network container");
  }
  pos = 4;
  if (get_u32() != kNetVersion) {
    throw std::runtime_error("unsupported network version");
  }
  NetworkConfig cfg;
  cfg.feat_dim = static_cast<int>(get_u32());
  cfg.embed_dim = static_cast<int>(get_u32());
  cfg.pooling = get_u32() == 0 ? Pooling::kStats : Pooling::kAttentiveStats;
  cfg.aggregate_stages = static_cast<int>(get_u32());
  cfg.asp_hidden = static_cast<int>(get_u32());

  Network net = Build(cfg, 0);
  std::vector<Param> params = net.Params();
  uint32_t count = get_u32();
  if (count != params.size()) {
    throw std::runtime_error("network container parameter count mismatch");
  }
  for (Param& p : params) {
    uint32_t name_len = get_u32();
    need(name_len);
    std::string name(bytes, pos, name_len);
    pos += name_len;
    if (name != p.name) {
      throw std::runtime_error("unexpected parameter '" + name +
                               "', wanted '" + p.name + "'");
    }
    uint32_t rank = get_u32();
    if (rank != p.shape.size()) {
      throw std::runtime_error("parameter rank mismatch for " + name);
    }
    for (size_t d = 0; d < rank; ++d) {
      if (get_u32() != static_cast<uint32_t>(p.shape[d])) {
        throw std::runtime_error("parameter shape mismatch for " + name);
      }
    }
    need(p.values->size() * 4);
    std::memcpy(p.values->data(), bytes.data() + pos, p.values->size() * 4);
    pos += p.values->size() * 4;
  }
  if (pos != bytes.size()) {
    throw std::runtime_error("trailing bytes in network container");
  }
  return net;
}

Network Network::Load(const std::string& path) {
  return Deserialize(io::ReadFileBytes(path));
}

}  // namespace svkit::nnet
