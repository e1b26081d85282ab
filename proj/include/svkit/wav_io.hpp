// include/svkit/wav_io.hpp

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

#ifndef SVKIT_WAV_IO_HPP_
#define SVKIT_WAV_IO_HPP_

#include <string>

#include "svkit/types.hpp"

namespace svkit {

// Reads a mono 16-bit PCM RIFF WAV file. Samples are normalized to
// [-1, 1] by dividing by 32768. Anything but mono/16-bit PCM is rejected.
Waveform ReadWav(const std::string& path);

// Writes mono 16-bit PCM; samples are clipped to [-1, 1) before
// quantization. The file is written atomically (temp + rename).
void WriteWav(const std::string& path, const Waveform& wave);

}  // namespace svkit

#endif  // SVKIT_WAV_IO_HPP_
