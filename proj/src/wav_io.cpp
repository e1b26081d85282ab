// src/wav_io.cpp

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

#include "svkit/wav_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "svkit/io.hpp"

namespace svkit {

namespace {

uint32_t ReadU32(const std::string& b, size_t pos) {
  uint32_t v;
  std::memcpy(&v, b.data() + pos, 4);
  return v;
}

uint16_t ReadU16(const std::string& b, size_t pos) {
  uint16_t v;
  std::memcpy(&v, b.data() + pos, 2);
  return v;
}

void AppendU32(std::string* out, uint32_t v) {
  out->append(reinterpret_cast<const char*>(&v), 4);
}

void AppendU16(std::string* out, uint16_t v) {
  out->append(reinterpret_cast<const char*>(&v), 2);
}

}  // namespace

Waveform ReadWav(const std::string& path) {
  std::string bytes = io::ReadFileBytes(path);
  if (bytes.size() < 12 || bytes.compare(0, 4, "RIFF") != 0 ||
      bytes.compare(8, 4, "WAVE") != 0) {
    throw std::runtime_error("not a RIFF/WAVE file: " + path);
  }

  int channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  uint16_t format = 0;
  size_t data_pos = 0, data_len = 0;

  // Walk chunks; anything other than fmt/data is skipped.
  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    std::string id = bytes.substr(pos, 4);
    uint32_t len = ReadU32(bytes, pos + 4);
    size_t body = pos + 8;
    if (body + len > bytes.size()) {
      throw std::runtime_error("truncated WAV chunk in " + path);
    }
    if (id == "fmt ") {
      if (len < 16) throw std::runtime_error("short fmt chunk in " + path);
      format = ReadU16(bytes, body);
      channels = ReadU16(bytes, body + 2);
      sample_rate = ReadU32(bytes, body + 4);
      bits = ReadU16(bytes, body + 14);
    } else if (id == "data") {
      data_pos = body;
      data_len = len;
    }
    pos = body + len + (len & 1);  // chunks are word-aligned
  }

  if (format != 1) {
    throw std::runtime_error("unsupported WAV format (PCM only): " + path);
  }
  if (channels != 1) {
    throw std::runtime_error("mono WAV required: " + path);
  }
  if (bits != 16) {
    throw std::runtime_error("16-bit PCM required: " + path);
  }
  if (data_pos == 0 || data_len == 0) {
    throw std::runtime_error("no audio data in " + path);
  }

  size_t n = data_len / 2;
  Waveform wave;
  wave.sample_rate = static_cast<int>(sample_rate);
  wave.samples.resize(n);
  for (size_t i = 0; i < n; ++i) {
    int16_t s;
    std::memcpy(&s, bytes.data() + data_pos + 2 * i, 2);
    wave.samples[i] = s / 32768.0;
  }
  return wave;
}

void WriteWav(const std::string& path, const Waveform& wave) {
  if (wave.samples.empty()) {
    throw std::invalid_argument("empty waveform");
  }
  uint32_t n = static_cast<uint32_t>(wave.samples.size());
  uint32_t data_len = n * 2;
  uint32_t byte_rate = static_cast<uint32_t>(wave.sample_rate) * 2;

  std::string out;
  out.reserve(44 + data_len);
  out.append("RIFF");
  AppendU32(&out, 36 + data_len);
  out.append("WAVE");
  out.append("fmt ");
  AppendU32(&out, 16);
  AppendU16(&out, 1);  // PCM
  AppendU16(&out, 1);  // mono
  AppendU32(&out, static_cast<uint32_t>(wave.sample_rate));
  AppendU32(&out, byte_rate);
  AppendU16(&out, 2);   // block align
  AppendU16(&out, 16);  // bits
  out.append("data");
  AppendU32(&out, data_len);
  for (double v : wave.samples) {
    double scaled = std::llround(v * 32768.0);
    int16_t s = static_cast<int16_t>(std::clamp(scaled, -32768.0, 32767.0));
    out.append(reinterpret_cast<const char*>(&s), 2);
  }
  io::WriteFileAtomic(path, out);
}

}  // namespace svkit
