// include/svkit/loss.hpp

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

#ifndef SVKIT_LOSS_HPP_
#define SVKIT_LOSS_HPP_

#include <vector>

namespace svkit::loss {

// Training objectives as differentiable scalar functions of the given
// embeddings and classifier parameters. Everything is 64-bit; analytic
// gradients are validated against central finite differences in the tests.

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // rows

// Learnable affine on cosine similarities for the angular prototypical
// objective: similarity = w * cos + b, w > 0.
struct Affine {
  double w = 10.0;
  double b = -5.0;
};

struct LossResult {
  double value = 0.0;
  Mat grad_embeddings;  // one row per input embedding
  Mat grad_weights;     // one row per classifier class (empty when unused)
  double grad_affine_w = 0.0;
  double grad_affine_b = 0.0;
};

// Plain softmax cross-entropy over logits W * e (raw dot products).
LossResult SoftmaxLoss(const Mat& embeddings, const std::vector<int>& labels,
                       const Mat& weights);

// Additive angular margin softmax: cosines between the L2-normalized
// embedding and L2-normalized class rows; the target logit becomes
// s * cos(theta_y + m), others s * cos(theta_j). Numerically:
// cos(theta+m) = cos*cos(m) - sqrt(1-cos^2)*sin(m), with the easy-margin
// fallback cos - m*sin(m) when cos <= cos(pi - m).
LossResult AamSoftmaxLoss(const Mat& embeddings, const std::vector<int>& labels,
                          const Mat& weights, double margin, double scale);

// Angular prototypical objective. Embeddings arrive interleaved as
// [query_0, proto_0, query_1, proto_1, ...], one query/prototype pair per
// speaker. S[j][k] = w * cos(query_j, proto_k) + b, cross-entropy against
// the diagonal.
LossResult AngularPrototypicalLoss(const Mat& embeddings,
                                   const Affine& affine);

// AP + S: the same 2-per-speaker batch feeds both terms; values and
// gradients are elementwise sums.
LossResult ApPlusSoftmaxLoss(const Mat& embeddings,
                             const std::vector<int>& labels,
                             const Mat& weights, const Affine& affine);

enum class LossKind {
  kSoftmax,
  kAamSoftmax,
  kAngularProto,
  kApPlusSoftmax,
  kSoftmaxThenAam,
};

struct LossConfig {
  LossKind kind = LossKind::kSoftmaxThenAam;
  double margin = 0.2;
  double scale = 30.0;
  int ap_group_size = 2;
  Affine ap_affine;
  int switch_epoch = 3;  // kSoftmaxThenAam only
};

// kSoftmaxThenAam: softmax for epoch < switch_epoch, AAM from then on.
// Every other kind is constant over epochs.
LossKind ActiveLoss(const LossConfig& cfg, int epoch);

}  // namespace svkit::loss

#endif  // SVKIT_LOSS_HPP_
