// src/io.cpp

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

#include "svkit/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

static_assert(std::endian::native == std::endian::little,
              "binary containers assume a little-endian host");

namespace svkit::io {

namespace {

constexpr char kMatrixMagic[4] = {'S', 'V', 'M', 'X'};
constexpr char kStoreMagic[4] = {'S', 'V', 'E', 'S'};
constexpr uint32_t kFormatVersion = 1;

void AppendU32(std::string* out, uint32_t v) {
  out->append(reinterpret_cast<const char*>(&v), 4);
}

void AppendU64(std::string* out, uint64_t v) {
  out->append(reinterpret_cast<const char*>(&v), 8);
}

class ByteReader {
 public:
  explicit ByteReader(const std::string& bytes) : bytes_(bytes) {}

  void Raw(void* dst, size_t n) {
    if (pos_ + n > bytes_.size()) {
      throw std::runtime_error("truncated binary container");
    }
    std::memcpy(dst, bytes_.data() + pos_, n);
    pos_ += n;
  }
  uint32_t U32() {
    uint32_t v;
    Raw(&v, 4);
    return v;
  }
  uint64_t U64() {
    uint64_t v;
    Raw(&v, 8);
    return v;
  }
  std::string Str(size_t n) {
    std::string s(n, '\0');
    Raw(s.data(), n);
    return s;
  }
  bool AtEnd() const { return pos_ == bytes_.size(); }

 private:
  const std::string& bytes_;
  size_t pos_ = 0;
};

std::vector<std::string> SplitWhitespace(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream iss(line);
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> SplitChar(const std::string& line, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

double ParseDouble(const std::string& s, const std::string& what) {
  size_t consumed = 0;
  double v;
  try {
    v = std::stod(s, &consumed);
  } catch (const std::exception&) {
    throw std::runtime_error("invalid " + what + ": '" + s + "'");
  }
  if (consumed != s.size()) {
    throw std::runtime_error("invalid " + what + ": '" + s + "'");
  }
  return v;
}

uint64_t ParseU64(const std::string& s, const std::string& what) {
  size_t consumed = 0;
  uint64_t v;
  try {
    v = std::stoull(s, &consumed);
  } catch (const std::exception&) {
    throw std::runtime_error("invalid " + what + ": '" + s + "'");
  }
  if (consumed != s.size()) {
    throw std::runtime_error("invalid " + what + ": '" + s + "'");
  }
  return v;
}

}  // namespace

void WriteFileAtomic(const std::string& path, const std::string& bytes) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path());
  }
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open for writing: " + tmp.string());
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

std::string ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string FormatDouble(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

// ---- matrix container ----

std::string SerializeMatrix(const FeatureMatrix& m) {
  std::string out;
  out.append(kMatrixMagic, 4);
  AppendU32(&out, kFormatVersion);
  AppendU32(&out, static_cast<uint32_t>(m.rows));
  AppendU32(&out, static_cast<uint32_t>(m.cols));
  out.reserve(out.size() + m.values.size() * 4);
  for (double v : m.values) {
    float f = static_cast<float>(v);
    out.append(reinterpret_cast<const char*>(&f), 4);
  }
  return out;
}

void WriteMatrix(const std::string& path, const FeatureMatrix& m) {
  WriteFileAtomic(path, SerializeMatrix(m));
}

FeatureMatrix ReadMatrix(const std::string& path) {
  std::string bytes = ReadFileBytes(path);
  ByteReader r(bytes);
  char magic[4];
  r.Raw(magic, 4);
  if (std::memcmp(magic, kMatrixMagic, 4) != 0) {
    throw std::runtime_error("not a matrix file: " + path);
  }
  uint32_t version = r.U32();
  if (version != kFormatVersion) {
    throw std::runtime_error("unsupported matrix version in " + path);
  }
  uint32_t rows = r.U32();
  uint32_t cols = r.U32();
  FeatureMatrix m(rows, cols);
  for (size_t i = 0; i < m.values.size(); ++i) {
    float f;
    r.Raw(&f, 4);
    m.values[i] = f;
  }
  return m;
}

// ---- embedding store ----

EmbeddingStore::EmbeddingStore(int dim) : dim_(dim) {
  if (dim <= 0) {
    throw std::invalid_argument("embedding dim must be positive");
  }
}

void EmbeddingStore::Add(const std::string& id, std::vector<float> values) {
  if (static_cast<int>(values.size()) != dim_) {
    throw std::invalid_argument("embedding '" + id + "' has length " +
                                std::to_string(values.size()) + ", expected " +
                                std::to_string(dim_));
  }
  if (index_.count(id)) {
    throw std::invalid_argument("duplicate embedding id: " + id);
  }
  index_[id] = records_.size();
  records_.emplace_back(id, std::move(values));
}

bool EmbeddingStore::Has(const std::string& id) const {
  return index_.count(id) != 0;
}

const std::vector<float>* EmbeddingStore::Find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &records_[it->second].second;
}

const std::vector<float>& EmbeddingStore::Get(const std::string& id) const {
  const std::vector<float>* v = Find(id);
  if (!v) {
    throw std::runtime_error("embedding id not in store: " + id);
  }
  return *v;
}

std::string EmbeddingStore::Serialize() const {
  std::string out;
  out.append(kStoreMagic, 4);
  AppendU32(&out, kFormatVersion);
  AppendU32(&out, static_cast<uint32_t>(dim_));
  AppendU64(&out, records_.size());
  for (const auto& [id, values] : records_) {
    AppendU32(&out, static_cast<uint32_t>(id.size()));
    out.append(id);
    out.append(reinterpret_cast<const char*>(values.data()),
               values.size() * 4);
  }
  return out;
}

void EmbeddingStore::Save(const std::string& path) const {
  WriteFileAtomic(path, Serialize());
}

EmbeddingStore EmbeddingStore::Deserialize(const std::string& bytes) {
  ByteReader r(bytes);
  char magic[4];
  r.Raw(magic, 4);
  if (std::memcmp(magic, kStoreMagic, 4) != 0) {
    throw std::runtime_error("not an embedding store");
  }
  uint32_t version = r.U32();
  if (version != kFormatVersion) {
    throw std::runtime_error("unsupported embedding store version");
  }
  uint32_t dim = r.U32();
  uint64_t count = r.U64();
  EmbeddingStore store(static_cast<int>(dim));
  for (uint64_t i = 0; i < count; ++i) {
    uint32_t name_len = r.U32();
    std::string id = r.Str(name_len);
    std::vector<float> values(dim);
    r.Raw(values.data(), static_cast<size_t>(dim) * 4);
    store.Add(id, std::move(values));
  }
  return store;
}

EmbeddingStore EmbeddingStore::Load(const std::string& path) {
  return Deserialize(ReadFileBytes(path));
}

// ---- trial lists ----

TrialList ParseTrials(const std::string& text) {
  TrialList list;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int n_fields = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    if (n_fields == 0) {
      n_fields = static_cast<int>(fields.size());
      if (n_fields != 2 && n_fields != 3) {
        throw std::runtime_error("trial line " + std::to_string(lineno) +
                                 ": expected 2 or 3 fields");
      }
      list.labeled = (n_fields == 3);
    } else if (static_cast<int>(fields.size()) != n_fields) {
      throw std::runtime_error("trial line " + std::to_string(lineno) +
                               ": inconsistent field count");
    }
    Trial t;
    if (list.labeled) {
      if (fields[0] != "0" && fields[0] != "1") {
        throw std::runtime_error("trial line " + std::to_string(lineno) +
                                 ": label must be 0 or 1");
      }
      t.label = fields[0] == "1" ? 1 : 0;
      t.enroll = fields[1];
      t.test = fields[2];
    } else {
      t.enroll = fields[0];
      t.test = fields[1];
    }
    if (t.enroll.empty() || t.test.empty()) {
      throw std::runtime_error("trial line " + std::to_string(lineno) +
                               ": empty id");
    }
    list.trials.push_back(std::move(t));
  }
  return list;
}

TrialList ReadTrials(const std::string& path) {
  return ParseTrials(ReadFileBytes(path));
}

std::string FormatTrials(const TrialList& list) {
  std::string out;
  for (const Trial& t : list.trials) {
    if (list.labeled) {
      out += t.label == 1 ? "1 " : "0 ";
    }
    out += t.enroll;
    out += ' ';
    out += t.test;
    out += '\n';
  }
  return out;
}

void WriteTrials(const std::string& path, const TrialList& list) {
  WriteFileAtomic(path, FormatTrials(list));
}

// ---- score files ----

std::vector<ScoreEntry> ReadScores(const std::string& path) {
  std::vector<ScoreEntry> out;
  std::istringstream in(ReadFileBytes(path));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    if (fields.size() != 3) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected '<enroll> <test> <score>'");
    }
    ScoreEntry e;
    e.enroll = fields[0];
    e.test = fields[1];
    e.score = ParseDouble(fields[2], "score");
    out.push_back(std::move(e));
  }
  return out;
}

std::string FormatScores(const std::vector<ScoreEntry>& entries) {
  std::string out;
  for (const ScoreEntry& e : entries) {
    out += e.enroll;
    out += ' ';
    out += e.test;
    out += ' ';
    out += FormatDouble(e.score, 6);
    out += '\n';
  }
  return out;
}

void WriteScores(const std::string& path,
                 const std::vector<ScoreEntry>& entries) {
  WriteFileAtomic(path, FormatScores(entries));
}

std::vector<double> AlignScores(const TrialList& trials,
                                const std::vector<ScoreEntry>& entries) {
  if (entries.size() != trials.trials.size()) {
    throw std::runtime_error(
        "score/trial coverage mismatch: " + std::to_string(entries.size()) +
        " scores for " + std::to_string(trials.trials.size()) + " trials");
  }
  std::unordered_map<std::string, double> by_pair;
  by_pair.reserve(entries.size());
  for (const ScoreEntry& e : entries) {
    std::string key = e.enroll + '\t' + e.test;
    if (!by_pair.emplace(key, e.score).second) {
      throw std::runtime_error("duplicate score for pair " + e.enroll + " " +
                               e.test);
    }
  }
  std::vector<double> out;
  out.reserve(trials.trials.size());
  for (const Trial& t : trials.trials) {
    auto it = by_pair.find(t.enroll + '\t' + t.test);
    if (it == by_pair.end()) {
      throw std::runtime_error("missing score for trial " + t.enroll + " " +
                               t.test);
    }
    out.push_back(it->second);
  }
  return out;
}

// ---- key=value config ----

KvConfig KvConfig::Parse(const std::string& text) {
  KvConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    size_t end = line.find_last_not_of(" \t\r");
    line = line.substr(begin, end - begin + 1);
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key=value");
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    auto strip = [](std::string& s) {
      size_t b = s.find_first_not_of(" \t");
      size_t e = s.find_last_not_of(" \t");
      s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
    };
    strip(key);
    strip(value);
    if (key.empty()) {
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": empty key");
    }
    cfg.values_[key] = value;
  }
  return cfg;
}

KvConfig KvConfig::Load(const std::string& path) {
  return Parse(ReadFileBytes(path));
}

bool KvConfig::Has(const std::string& key) const {
  return values_.count(key) != 0;
}

std::string KvConfig::GetString(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw std::runtime_error("missing config key: " + key);
  }
  return it->second;
}

std::string KvConfig::GetString(const std::string& key,
                                const std::string& dflt) const {
  auto it = values_.find(key);
  return it == values_.end() ? dflt : it->second;
}

int64_t KvConfig::GetInt(const std::string& key, int64_t dflt) const {
  auto it = values_.find(key);
  if (it == values_.end()) return dflt;
  return static_cast<int64_t>(ParseU64(it->second, "integer for " + key));
}

uint64_t KvConfig::GetUint(const std::string& key, uint64_t dflt) const {
  auto it = values_.find(key);
  if (it == values_.end()) return dflt;
  return ParseU64(it->second, "integer for " + key);
}

double KvConfig::GetDouble(const std::string& key, double dflt) const {
  auto it = values_.find(key);
  if (it == values_.end()) return dflt;
  return ParseDouble(it->second, "number for " + key);
}

// ---- manifests ----

std::string ManifestRecord::Param(const std::string& key,
                                  const std::string& dflt) const {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  return dflt;
}

std::vector<ManifestRecord> ReadManifest(const std::string& path) {
  std::vector<ManifestRecord> out;
  std::istringstream in(ReadFileBytes(path));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = SplitChar(line, '\t');
    if (fields.size() < 4) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected at least 4 tab-separated fields");
    }
    ManifestRecord rec;
    rec.utt_id = fields[0];
    rec.source_path = fields[1];
    rec.transform = fields[2];
    rec.seed = ParseU64(fields[3], "manifest seed");
    for (size_t i = 4; i < fields.size(); ++i) {
      size_t eq = fields[i].find('=');
      if (eq == std::string::npos) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": bad param '" + fields[i] + "'");
      }
      rec.params.emplace_back(fields[i].substr(0, eq), fields[i].substr(eq + 1));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::string FormatManifest(const std::vector<ManifestRecord>& records) {
  std::string out;
  for (const ManifestRecord& rec : records) {
    out += rec.utt_id;
    out += '\t';
    out += rec.source_path;
    out += '\t';
    out += rec.transform;
    out += '\t';
    out += std::to_string(rec.seed);
    for (const auto& [k, v] : rec.params) {
      out += '\t';
      out += k;
      out += '=';
      out += v;
    }
    out += '\n';
  }
  return out;
}

void WriteManifest(const std::string& path,
                   const std::vector<ManifestRecord>& records) {
  WriteFileAtomic(path, FormatManifest(records));
}

std::vector<std::pair<std::string, std::string>> ReadUtteranceList(
    const std::string& path) {
  std::vector<std::pair<std::string, std::string>> out;
  std::unordered_set<std::string> seen;
  std::istringstream in(ReadFileBytes(path));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    if (fields.size() != 2) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected '<utt_id> <wav_path>'");
    }
    if (!seen.insert(fields[0]).second) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": duplicate utterance id " + fields[0]);
    }
    out.emplace_back(fields[0], fields[1]);
  }
  return out;
}

}  // namespace svkit::io
