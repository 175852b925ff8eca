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

#include "sxrkit/wer.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sxrkit/error.hpp"

namespace sxrkit {

Transcript Transcript::parse(std::string_view text) {
  Transcript t;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) t.tokens.push_back(tok);
  return t;
}

std::string Transcript::str() const {
  std::string out;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (k > 0) out += ' ';
    out += tokens[k];
  }
  return out;
}

double EditCounts::rate() const {
  if (ref_length == 0) throw DataError("WER undefined for an empty reference");
  return static_cast<double>(errors()) / static_cast<double>(ref_length);
}

EditCounts& EditCounts::operator+=(const EditCounts& other) noexcept {
  substitutions += other.substitutions;
  deletions += other.deletions;
  insertions += other.insertions;
  ref_length += other.ref_length;
  return *this;
}

EditCounts align(const Transcript& ref, const Transcript& hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  // cost[i][j]: edits between ref[0, i) and hyp[0, j).
  std::vector<std::size_t> cost((n + 1) * (m + 1));
  auto at = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
  for (std::size_t i = 0; i <= n; ++i) cost[at(i, 0)] = i;
  for (std::size_t j = 0; j <= m; ++j) cost[at(0, j)] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t sub =
          cost[at(i - 1, j - 1)] + (ref.tokens[i - 1] == hyp.tokens[j - 1] ? 0 : 1);
      const std::size_t del = cost[at(i - 1, j)] + 1;
      const std::size_t ins = cost[at(i, j - 1)] + 1;
      cost[at(i, j)] = std::min({sub, del, ins});
    }
  }

  EditCounts counts;
  counts.ref_length = n;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref.tokens[i - 1] == hyp.tokens[j - 1];
      if (cost[at(i, j)] == cost[at(i - 1, j - 1)] + (same ? 0 : 1)) {
        if (!same) ++counts.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && cost[at(i, j)] == cost[at(i - 1, j)] + 1) {
      ++counts.deletions;
      --i;
    } else {
      ++counts.insertions;
      --j;
    }
  }
  return counts;
}

std::size_t edit_distance(const Transcript& ref, const Transcript& hyp) {
  return align(ref, hyp).errors();
}

double wer(const Transcript& ref, const Transcript& hyp) {
  if (ref.empty()) throw DataError("WER undefined for an empty reference");
  return align(ref, hyp).rate();
}

std::map<std::string, Transcript> read_transcripts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open transcript file " + path.string());
  std::map<std::string, Transcript> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string id;
    if (!(fields >> id)) continue;
    std::string rest;
    std::getline(fields, rest);
    if (!out.emplace(id, Transcript::parse(rest)).second) {
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": duplicate utterance id '" + id + "'");
    }
  }
  return out;
}

}  // namespace sxrkit
