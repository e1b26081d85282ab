// include/svkit/io.hpp

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

#ifndef SVKIT_IO_HPP_
#define SVKIT_IO_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "svkit/types.hpp"

namespace svkit::io {

// All file writers below build the full byte string first and then write it
// atomically (temp file + rename), so concurrent pipelines over disjoint
// outputs never observe partial files.
void WriteFileAtomic(const std::string& path, const std::string& bytes);
std::string ReadFileBytes(const std::string& path);

// ---- binary matrix container (feature files) ----
// magic "SVMX", u32 version, u32 rows, u32 cols, row-major f32 payload.
void WriteMatrix(const std::string& path, const FeatureMatrix& m);
FeatureMatrix ReadMatrix(const std::string& path);
std::string SerializeMatrix(const FeatureMatrix& m);

// ---- embedding store ----
// magic "SVES", u32 version, u32 dim, u64 count, then per record:
// u32 name_len, name bytes, dim little-endian f32s. Ids are unique.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(int dim);

  void Add(const std::string& id, std::vector<float> values);
  bool Has(const std::string& id) const;
  const std::vector<float>& Get(const std::string& id) const;
  const std::vector<float>* Find(const std::string& id) const;

  int dim() const { return dim_; }
  size_t size() const { return records_.size(); }
  const std::vector<std::pair<std::string, std::vector<float>>>& records()
      const {
    return records_;
  }

  std::string Serialize() const;
  void Save(const std::string& path) const;
  static EmbeddingStore Load(const std::string& path);
  static EmbeddingStore Deserialize(const std::string& bytes);

 private:
  int dim_;
  std::vector<std::pair<std::string, std::vector<float>>> records_;
  std::unordered_map<std::string, size_t> index_;
};

// ---- trial lists ----
// One trial per line: "<label 0|1> <enroll_id> <test_id>", or
// "<enroll_id> <test_id>" for blind lists. Whitespace separated.
struct Trial {
  std::string enroll;
  std::string test;
  int label = -1;  // 1 target, 0 nontarget, -1 unlabeled
};

struct TrialList {
  std::vector<Trial> trials;
  bool labeled = false;
};

TrialList ReadTrials(const std::string& path);
TrialList ParseTrials(const std::string& text);
std::string FormatTrials(const TrialList& list);
void WriteTrials(const std::string& path, const TrialList& list);

// ---- score files ----
// "<enroll_id> <test_id> <score>" per line, scores printed with six
// decimals, locale-independent.
struct ScoreEntry {
  std::string enroll;
  std::string test;
  double score = 0.0;
};

std::vector<ScoreEntry> ReadScores(const std::string& path);
std::string FormatScores(const std::vector<ScoreEntry>& entries);
void WriteScores(const std::string& path,
                 const std::vector<ScoreEntry>& entries);

// Returns scores aligned with the trial list order; throws on coverage
// mismatch (missing or extra pairs).
std::vector<double> AlignScores(const TrialList& trials,
                                const std::vector<ScoreEntry>& entries);

// ---- flat key=value config with section prefixes ----
// Lines "section.key=value"; '#' starts a comment.
class KvConfig {
 public:
  static KvConfig Parse(const std::string& text);
  static KvConfig Load(const std::string& path);

  bool Has(const std::string& key) const;
  std::string GetString(const std::string& key) const;
  std::string GetString(const std::string& key, const std::string& dflt) const;
  int64_t GetInt(const std::string& key, int64_t dflt) const;
  uint64_t GetUint(const std::string& key, uint64_t dflt) const;
  double GetDouble(const std::string& key, double dflt) const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

// ---- augmentation manifests ----
// Tab separated: utterance_id, source_path, transform, seed (decimal u64),
// then key=value params, one per remaining column.
struct ManifestRecord {
  std::string utt_id;
  std::string source_path;
  std::string transform;  // none|music|noise|speech|rir_*|specmask
  uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> params;

  std::string Param(const std::string& key, const std::string& dflt) const;
};

std::vector<ManifestRecord> ReadManifest(const std::string& path);
std::string FormatManifest(const std::vector<ManifestRecord>& records);
void WriteManifest(const std::string& path,
                   const std::vector<ManifestRecord>& records);

// Two-column utterance list: "<utt_id> <wav_path>" per line.
std::vector<std::pair<std::string, std::string>> ReadUtteranceList(
    const std::string& path);

// Locale-independent fixed-point formatting used by every text writer.
std::string FormatDouble(double v, int decimals);

}  // namespace svkit::io

#endif  // SVKIT_IO_HPP_
