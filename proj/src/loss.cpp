// src/loss.cpp

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

#include "svkit/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace svkit::loss {

namespace {

double Dot(const Vec& a, const Vec& b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double Norm(const Vec& v) { return std::sqrt(Dot(v, v)); }

// -log softmax(z)[y] and the gradient p - onehot(y), computed stably.
double CrossEntropyRow(const Vec& logits, int y, Vec* grad) {
  double zmax = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  grad->resize(logits.size());
  for (size_t j = 0; j < logits.size(); ++j) {
    (*grad)[j] = std::exp(logits[j] - zmax);
    sum += (*grad)[j];
  }
  for (double& g : *grad) g /= sum;
  double loss = std::log(sum) + zmax - logits[y];
  (*grad)[y] -= 1.0;
  return loss;
}

void CheckBatch(const Mat& embeddings, const std::vector<int>& labels,
                const Mat& weights) {
  if (embeddings.empty()) throw std::invalid_argument("empty batch");
  if (labels.size() != embeddings.size()) {
    throw std::invalid_argument("labels/batch size mismatch");
  }
  if (weights.empty()) throw std::invalid_argument("no classifier rows");
  size_t dim = weights[0].size();
  for (const Vec& row : weights) {
    if (row.size() != dim) {
      throw std::invalid_argument("ragged classifier matrix");
    }
  }
  for (const Vec& e : embeddings) {
    if (e.size() != dim) {
      throw std::invalid_argument("embedding/classifier dim mismatch");
    }
  }
  for (int y : labels) {
    if (y < 0 || y >= static_cast<int>(weights.size())) {
      throw std::invalid_argument("label out of range: " + std::to_string(y));
    }
  }
}

}  // namespace

LossResult SoftmaxLoss(const Mat& embeddings, const std::vector<int>& labels,
                       const Mat& weights) {
  CheckBatch(embeddings, labels, weights);
  size_t batch = embeddings.size();
  size_t classes = weights.size();
  size_t dim = weights[0].size();

  LossResult res;
  res.grad_embeddings.assign(batch, Vec(dim, 0.0));
  res.grad_weights.assign(classes, Vec(dim, 0.0));

  Vec logits(classes), g;
  for (size_t i = 0; i < batch; ++i) {
    for (size_t j = 0; j < classes; ++j) {
      logits[j] = Dot(weights[j], embeddings[i]);
    }
    res.value += CrossEntropyRow(logits, labels[i], &g);
    for (size_t j = 0; j < classes; ++j) {
      double gj = g[j] / static_cast<double>(batch);
      for (size_t d = 0; d < dim; ++d) {
        res.grad_embeddings[i][d] += gj * weights[j][d];
        res.grad_weights[j][d] += gj * embeddings[i][d];
      }
    }
  }
  res.value /= static_cast<double>(batch);
  return res;
}

LossResult AamSoftmaxLoss(const Mat& embeddings,
                          const std::vector<int>& labels, const Mat& weights,
                          double margin, double scale) {
  CheckBatch(embeddings, labels, weights);
  if (margin < 0.0) throw std::invalid_argument("margin must be >= 0");
  if (scale <= 0.0) throw std::invalid_argument("scale must be positive");

  size_t batch = embeddings.size();
  size_t classes = weights.size();
  size_t dim = weights[0].size();
  double cos_m = std::cos(margin);
  double sin_m = std::sin(margin);
  double fallback_edge = std::cos(M_PI - margin);

  std::vector<double> emb_norm(batch), w_norm(classes);
  Mat emb_hat(batch), w_hat(classes);
  for (size_t i = 0; i < batch; ++i) {
    emb_norm[i] = Norm(embeddings[i]);
    if (emb_norm[i] < 1e-12) {
      throw std::invalid_argument("zero-norm embedding");
    }
    emb_hat[i] = embeddings[i];
    for (double& v : emb_hat[i]) v /= emb_norm[i];
  }
  for (size_t j = 0; j < classes; ++j) {
    w_norm[j] = Norm(weights[j]);
    if (w_norm[j] < 1e-12) {
      throw std::invalid_argument("zero-norm classifier row");
    }
    w_hat[j] = weights[j];
    for (double& v : w_hat[j]) v /= w_norm[j];
  }

  LossResult res;
  res.grad_embeddings.assign(batch, Vec(dim, 0.0));
  res.grad_weights.assign(classes, Vec(dim, 0.0));

  Vec cosines(classes), logits(classes), g;
  for (size_t i = 0; i < batch; ++i) {
    int y = labels[i];
    for (size_t j = 0; j < classes; ++j) {
      cosines[j] = std::clamp(Dot(w_hat[j], emb_hat[i]), -1.0, 1.0);
      logits[j] = scale * cosines[j];
    }
    // cos(theta + m) on the target logit, easy-margin fallback past pi - m
    double c = cosines[y];
    double dphi;
    if (c > fallback_edge) {
      double s = std::sqrt(std::max(1.0 - c * c, 0.0));
      logits[y] = scale * (c * cos_m - s * sin_m);
      dphi = cos_m + sin_m * c / std::max(s, 1e-300);
    } else {
      logits[y] = scale * (c - margin * sin_m);
      dphi = 1.0;
    }
    res.value += CrossEntropyRow(logits, y, &g);
    for (size_t j = 0; j < classes; ++j) {
      double dcos = g[j] * scale / static_cast<double>(batch);
      if (static_cast<int>(j) == y) dcos *= dphi;
      // cos_ij = w_hat_j . e_hat_i; differentiate through both norms
      for (size_t d = 0; d < dim; ++d) {
        res.grad_embeddings[i][d] +=
            dcos * (w_hat[j][d] - cosines[j] * emb_hat[i][d]) / emb_norm[i];
        res.grad_weights[j][d] +=
            dcos * (emb_hat[i][d] - cosines[j] * w_hat[j][d]) / w_norm[j];
      }
    }
  }
  res.value /= static_cast<double>(batch);
  return res;
}

LossResult AngularPrototypicalLoss(const Mat& embeddings,
                                   const Affine& affine) {
  if (embeddings.size() < 2 || embeddings.size() % 2 != 0) {
    throw std::invalid_argument(
        "angular prototypical batch must be query/prototype pairs");
  }
  size_t n = embeddings.size() / 2;
  size_t dim = embeddings[0].size();
  for (const Vec& e : embeddings) {
    if (e.size() != dim) throw std::invalid_argument("ragged batch");
  }

  std::vector<double> q_norm(n), p_norm(n);
  Mat q_hat(n), p_hat(n);
  for (size_t i = 0; i < n; ++i) {
    const Vec& q = embeddings[2 * i];
    const Vec& p = embeddings[2 * i + 1];
    q_norm[i] = Norm(q);
    p_norm[i] = Norm(p);
    if (q_norm[i] < 1e-12 || p_norm[i] < 1e-12) {
      throw std::invalid_argument("zero-norm embedding");
    }
    q_hat[i] = q;
    for (double& v : q_hat[i]) v /= q_norm[i];
    p_hat[i] = p;
    for (double& v : p_hat[i]) v /= p_norm[i];
  }

  Mat cosines(n, Vec(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      cosines[i][j] = std::clamp(Dot(q_hat[i], p_hat[j]), -1.0, 1.0);
    }
  }

  LossResult res;
  res.grad_embeddings.assign(2 * n, Vec(dim, 0.0));

  Vec logits(n), g;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      logits[j] = affine.w * cosines[i][j] + affine.b;
    }
    res.value += CrossEntropyRow(logits, static_cast<int>(i), &g);
    for (size_t j = 0; j < n; ++j) {
      double gj = g[j] / static_cast<double>(n);
      res.grad_affine_w += gj * cosines[i][j];
      res.grad_affine_b += gj;
      double dcos = gj * affine.w;
      for (size_t d = 0; d < dim; ++d) {
        res.grad_embeddings[2 * i][d] +=
            dcos * (p_hat[j][d] - cosines[i][j] * q_hat[i][d]) / q_norm[i];
        res.grad_embeddings[2 * j + 1][d] +=
            dcos * (q_hat[i][d] - cosines[i][j] * p_hat[j][d]) / p_norm[j];
      }
    }
  }
  res.value /= static_cast<double>(n);
  return res;
}

LossResult ApPlusSoftmaxLoss(const Mat& embeddings,
                             const std::vector<int>& labels,
                             const Mat& weights, const Affine& affine) {
  LossResult softmax = SoftmaxLoss(embeddings, labels, weights);
  LossResult ap = AngularPrototypicalLoss(embeddings, affine);

  LossResult res;
  res.value = softmax.value + ap.value;
  res.grad_embeddings = std::move(softmax.grad_embeddings);
  for (size_t i = 0; i < res.grad_embeddings.size(); ++i) {
    for (size_t d = 0; d < res.grad_embeddings[i].size(); ++d) {
      res.grad_embeddings[i][d] += ap.grad_embeddings[i][d];
    }
  }
  res.grad_weights = std::move(softmax.grad_weights);
  res.grad_affine_w = ap.grad_affine_w;
  res.grad_affine_b = ap.grad_affine_b;
  return res;
}

LossKind ActiveLoss(const LossConfig& cfg, int epoch) {
  if (epoch < 0) throw std::invalid_argument("epoch must be >= 0");
  if (cfg.kind == LossKind::kSoftmaxThenAam) {
    return epoch < cfg.switch_epoch ? LossKind::kSoftmax
                                    : LossKind::kAamSoftmax;
  }
  return cfg.kind;
}

}  // namespace svkit::loss
