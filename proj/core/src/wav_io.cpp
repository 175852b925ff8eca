// Copyright 2026 The sxrkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sxrkit/wav_io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "sxrkit/error.hpp"

namespace sxrkit {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t le16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t le32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

void put32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<unsigned char>((v >> (8 * k)) & 0xFF));
}

void put_tag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

SampleFormat parse_sample_format(std::string_view name) {
  if (name == "s16") return SampleFormat::kPcm16;
  if (name == "f32") return SampleFormat::kFloat32;
  if (name == "f64") return SampleFormat::kFloat64;
  throw UsageError("unknown sample format '" + std::string(name) + "' (expected s16, f32 or f64)");
}

Waveform read_wav(const std::filesystem::path& path) {
  const std::string name = path.string();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(name + ": cannot open");
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw DataError(name + ": not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t size = le32(chunk + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) {
      // Truncated data chunks are common in streamed files; clamp them.
      if (std::memcmp(chunk, "data", 4) != 0) throw DataError(name + ": malformed chunk size");
    }
    const std::size_t avail = std::min<std::size_t>(size, bytes.size() - body);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (avail < 16) throw DataError(name + ": fmt chunk too short");
      const unsigned char* f = bytes.data() + body;
      format = le16(f);
      channels = le16(f + 2);
      rate = le32(f + 4);
      bits = le16(f + 14);
      if (format == kFormatExtensible) {
        if (avail < 26) throw DataError(name + ": extensible fmt chunk too short");
        format = le16(f + 24);  // first two bytes of the sub-format GUID
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = avail;
    }
    pos = body + size + (size & 1u);
  }
  if (!have_fmt) throw DataError(name + ": missing fmt chunk");
  if (data == nullptr) throw DataError(name + ": missing data chunk");
  if (channels != 1) {
    throw DataError(name + ": expected a mono file, found " + std::to_string(channels) +
                    " channels");
  }
  if (rate == 0 || rate > 0x7FFFFFFFu) throw DataError(name + ": invalid sample rate");

  std::vector<double> samples;
  if (format == kFormatPcm && bits == 16) {
    samples.resize(data_size / 2);
    for (std::size_t t = 0; t < samples.size(); ++t) {
      const auto v = static_cast<std::int16_t>(le16(data + 2 * t));
      samples[t] = static_cast<double>(v) / 32768.0;
    }
  } else if (format == kFormatFloat && bits == 32) {
    samples.resize(data_size / 4);
    for (std::size_t t = 0; t < samples.size(); ++t) {
      const std::uint32_t u = le32(data + 4 * t);
      float v;
      std::memcpy(&v, &u, sizeof v);
      samples[t] = static_cast<double>(v);
    }
  } else if (format == kFormatFloat && bits == 64) {
    samples.resize(data_size / 8);
    for (std::size_t t = 0; t < samples.size(); ++t) {
      const std::uint64_t u = static_cast<std::uint64_t>(le32(data + 8 * t)) |
                              (static_cast<std::uint64_t>(le32(data + 8 * t + 4)) << 32);
      double v;
      std::memcpy(&v, &u, sizeof v);
      samples[t] = v;
    }
  } else {
    throw DataError(name + ": unsupported encoding (format tag " + std::to_string(format) +
                    ", " + std::to_string(bits) +
                    " bits); expected 16-bit PCM or 32/64-bit float");
  }
  return Waveform::checked(std::move(samples), static_cast<int>(rate), name);
}

void write_wav(const std::filesystem::path& path, const Waveform& wave, SampleFormat format) {
  const std::uint16_t bits = format == SampleFormat::kPcm16 ? 16
                             : format == SampleFormat::kFloat32 ? 32
                                                                : 64;
  const std::uint16_t tag = format == SampleFormat::kPcm16 ? kFormatPcm : kFormatFloat;
  const std::size_t bytes_per_sample = bits / 8;
  const std::size_t data_size = wave.size() * bytes_per_sample;
  if (data_size > 0xFFFFFFFFull - 64) throw DataError(path.string() + ": signal too long for WAV");

  std::vector<unsigned char> out;
  out.reserve(44 + data_size + 1);
  put_tag(out, "RIFF");
  put32(out, static_cast<std::uint32_t>(36 + data_size + (data_size & 1u)));
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put32(out, 16);
  put16(out, tag);
  put16(out, 1);
  put32(out, static_cast<std::uint32_t>(wave.sample_rate()));
  put32(out, static_cast<std::uint32_t>(wave.sample_rate() * bytes_per_sample));
  put16(out, static_cast<std::uint16_t>(bytes_per_sample));
  put16(out, bits);
  put_tag(out, "data");
  put32(out, static_cast<std::uint32_t>(data_size));
  for (double x : wave.samples()) {
    switch (format) {
      case SampleFormat::kPcm16: {
        const double scaled = std::round(std::clamp(x, -1.0, 1.0) * 32768.0);
        const auto v = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
        put16(out, static_cast<std::uint16_t>(v));
        break;
      }
      case SampleFormat::kFloat32: {
        const auto v = static_cast<float>(x);
        std::uint32_t u;
        std::memcpy(&u, &v, sizeof u);
        put32(out, u);
        break;
      }
      case SampleFormat::kFloat64: {
        std::uint64_t u;
        std::memcpy(&u, &x, sizeof u);
        put32(out, static_cast<std::uint32_t>(u & 0xFFFFFFFFu));
        put32(out, static_cast<std::uint32_t>(u >> 32));
        break;
      }
    }
  }
  if (data_size & 1u) out.push_back(0);

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw DataError(path.string() + ": cannot open for writing");
  file.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!file) throw DataError(path.string() + ": write failed");
}

}  // namespace sxrkit
