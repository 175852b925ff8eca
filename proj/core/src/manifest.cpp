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

#include "sxrkit/manifest.hpp"

#include <fstream>
#include <json.hpp>

#include "sxrkit/error.hpp"
#include "sxrkit/wav_io.hpp"

namespace sxrkit {

using nlohmann::json;

namespace {

json db_json(const Decibel& d) {
  if (d.finite()) return d.value();
  return d.to_string();
}

Decibel db_from_json(const json& j) {
  if (j.is_number()) return Decibel(j.get<double>());
  if (j.is_string()) return Decibel::parse(j.get<std::string>());
  throw DataError("dB field must be a number or a sentinel token");
}

json report_json(const SxrReport& r) {
  return json{{"sdr", db_json(r.sdr)},
              {"sir", db_json(r.sir)},
              {"snr", db_json(r.snr)},
              {"sar", db_json(r.sar)},
              {"L", r.num_delays},
              {"scenario", r.single_talker ? "single-talker" : "multi-talker"}};
}

SxrReport report_from_json(const json& j) {
  SxrReport r;
  r.sdr = db_from_json(j.at("sdr"));
  r.sir = db_from_json(j.at("sir"));
  r.snr = db_from_json(j.at("snr"));
  r.sar = db_from_json(j.at("sar"));
  r.num_delays = j.value("L", std::size_t{0});
  r.single_talker = j.value("scenario", std::string()) == "single-talker";
  return r;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

template <typename Fn>
void for_each_json_line(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(json::parse(line));
    } catch (const json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

}  // namespace

std::vector<DatasetRecord> read_dataset_manifest(const std::filesystem::path& path) {
  const std::filesystem::path base = path.parent_path();
  std::vector<DatasetRecord> out;
  for_each_json_line(path, [&](const json& j) {
    DatasetRecord r;
    r.id = j.at("id").get<std::string>();
    r.source = resolve(base, j.at("source").get<std::string>());
    r.noise = resolve(base, j.at("noise").get<std::string>());
    r.observed = resolve(base, j.at("observed").get<std::string>());
    if (j.contains("interference") && !j["interference"].is_null()) {
      r.interference = resolve(base, j["interference"].get<std::string>());
    }
    if (j.contains("enhanced") && !j["enhanced"].is_null()) {
      r.enhanced = resolve(base, j["enhanced"].get<std::string>());
    }
    if (j.contains("transcript") && !j["transcript"].is_null()) {
      r.transcript = j["transcript"].get<std::string>();
    }
    out.push_back(std::move(r));
  });
  return out;
}

void write_dataset_manifest(const std::filesystem::path& path,
                            std::span<const DatasetRecord> records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  for (const DatasetRecord& r : records) {
    json j{{"schema", kDatasetSchema},
           {"id", r.id},
           {"source", r.source.string()},
           {"interference", r.interference ? json(r.interference->string()) : json(nullptr)},
           {"noise", r.noise.string()},
           {"observed", r.observed.string()}};
    if (r.enhanced) j["enhanced"] = r.enhanced->string();
    if (r.transcript) j["transcript"] = *r.transcript;
    out << j.dump() << '\n';
  }
}

ReferenceSet load_references(const DatasetRecord& record) {
  std::optional<Waveform> interference;
  if (record.interference) interference = read_wav(*record.interference);
  return validate_set(ReferenceSet{read_wav(record.source), std::move(interference),
                                   read_wav(record.noise), read_wav(record.observed)});
}

std::string sxr_report_json(const SxrReport& report) { return report_json(report).dump(); }

SxrReport parse_sxr_report_json(const std::string& text) {
  try {
    return report_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
}

void write_dsa_manifest(const std::filesystem::path& path, const DsaManifest& manifest) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  for (const DsaEntry& e : manifest.entries) {
    json j{{"schema", kDsaSchema},
           {"utterance", e.utterance},
           {"w_interf", e.weights.interf},
           {"w_noise", e.weights.noise},
           {"w_artif", e.weights.artif},
           {"path", e.locator},
           {"interf_collapsed", e.interf_collapsed}};
    if (e.metrics) j["metrics"] = report_json(*e.metrics);
    if (e.hypothesis) j["hypothesis"] = e.hypothesis->str();
    if (e.edits) {
      j["edits"] = {{"sub", e.edits->substitutions},
                    {"del", e.edits->deletions},
                    {"ins", e.edits->insertions},
                    {"ref_len", e.edits->ref_length}};
      if (const auto w = e.wer()) j["wer"] = *w;
    }
    if (e.error) j["error"] = *e.error;
    out << j.dump() << '\n';
  }
  for (const DsaFailure& f : manifest.failures) {
    out << json{{"schema", kDsaFailureSchema}, {"utterance", f.utterance}, {"reason", f.reason}}
               .dump()
        << '\n';
  }
}

DsaManifest read_dsa_manifest(const std::filesystem::path& path) {
  DsaManifest m;
  for_each_json_line(path, [&](const json& j) {
    const std::string schema = j.value("schema", std::string(kDsaSchema));
    if (schema == kDsaFailureSchema) {
      m.failures.push_back({j.at("utterance").get<std::string>(), j.value("reason", "")});
      return;
    }
    if (schema != kDsaSchema) throw DataError("unexpected record schema '" + schema + "'");
    DsaEntry e;
    e.utterance = j.at("utterance").get<std::string>();
    e.weights = {j.at("w_interf").get<double>(), j.at("w_noise").get<double>(),
                 j.at("w_artif").get<double>()};
    e.locator = j.at("path").get<std::string>();
    e.interf_collapsed = j.value("interf_collapsed", false);
    if (j.contains("metrics")) e.metrics = report_from_json(j["metrics"]);
    if (j.contains("hypothesis")) e.hypothesis = Transcript::parse(j["hypothesis"].get<std::string>());
    if (j.contains("edits")) {
      const json& ed = j["edits"];
      e.edits = EditCounts{ed.at("sub").get<std::size_t>(), ed.at("del").get<std::size_t>(),
                           ed.at("ins").get<std::size_t>(), ed.at("ref_len").get<std::size_t>()};
    }
    if (j.contains("error")) e.error = j["error"].get<std::string>();
    m.entries.push_back(std::move(e));
  });
  return m;
}

}  // namespace sxrkit
