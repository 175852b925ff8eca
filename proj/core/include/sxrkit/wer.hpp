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
#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sxrkit {

/// Ordered word sequence; may be empty.
struct Transcript {
  std::vector<std::string> tokens;

  /// Splits on ASCII whitespace.
  static Transcript parse(std::string_view text);
  std::string str() const;
  bool empty() const noexcept { return tokens.empty(); }
  std::size_t size() const noexcept { return tokens.size(); }

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

/// Unit-cost Levenshtein alignment counts.
struct EditCounts {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t ref_length = 0;

  std::size_t errors() const noexcept { return substitutions + deletions + insertions; }
  /// errors / ref_length; throws when ref_length == 0.
  double rate() const;

  EditCounts& operator+=(const EditCounts& other) noexcept;
};

/// Minimum edit alignment of hyp against ref. Among equal-cost alignments the
/// backtrace prefers match/substitution, then deletion, then insertion.
EditCounts align(const Transcript& ref, const Transcript& hyp);

/// Minimum number of edits turning ref into hyp.
std::size_t edit_distance(const Transcript& ref, const Transcript& hyp);

/// Word error rate; may exceed 1. Empty ref is an error.
double wer(const Transcript& ref, const Transcript& hyp);

/// Kaldi-style text file: "<utt-id> word word ..." per line. Blank lines are
/// skipped; duplicate ids are an error.
std::map<std::string, Transcript> read_transcripts(const std::filesystem::path& path);

}  // namespace sxrkit
