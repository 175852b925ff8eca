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

#include <spdlog/spdlog.h>

#include "common.hpp"
#include "sxrkit/error.hpp"
#include "sxrkit/wer.hpp"

namespace sxrkit::cli {

namespace {

struct WerCommand {
  std::string ref_file, hyp_file, ref_text, hyp_text;
  OutputOptions out;

  void add(CLI::App* cmd) {
    cmd->add_option("--ref", ref_file, "Reference transcripts, one '<id> <words>' per line");
    cmd->add_option("--hyp", hyp_file, "Hypothesis transcripts in the same format");
    cmd->add_option("--ref-text", ref_text, "Single reference string");
    cmd->add_option("--hyp-text", hyp_text, "Single hypothesis string");
    out.add_to(cmd);
  }

  void run(const GlobalOptions&) const {
    std::map<std::string, Transcript> refs, hyps;
    if (!ref_file.empty() || !hyp_file.empty()) {
      if (ref_file.empty() || hyp_file.empty()) throw UsageError("--ref and --hyp go together");
      if (!ref_text.empty() || !hyp_text.empty()) {
        throw UsageError("give transcript files or inline text, not both");
      }
      refs = read_transcripts(ref_file);
      hyps = read_transcripts(hyp_file);
    } else if (!ref_text.empty()) {
      refs["utt"] = Transcript::parse(ref_text);
      hyps["utt"] = Transcript::parse(hyp_text);
    } else {
      throw UsageError("wer needs --ref/--hyp files or --ref-text");
    }

    TableWriter table(out.path, out.table_format(), "sxrkit.wer/1",
                      {"utterance", "sub", "del", "ins", "ref_len", "wer"});
    EditCounts corpus;
    std::size_t missing = 0;
    for (const auto& [id, ref] : refs) {
      const auto it = hyps.find(id);
      if (it == hyps.end()) {
        // No output for an utterance scores as all deletions.
        spdlog::warn("{}: no hypothesis, scored as empty", id);
        ++missing;
      }
      const EditCounts e = align(ref, it == hyps.end() ? Transcript{} : it->second);
      corpus += e;
      Row row{{"utterance", id},       {"sub", e.substitutions}, {"del", e.deletions},
              {"ins", e.insertions},   {"ref_len", e.ref_length}};
      row["wer"] = e.ref_length > 0 ? Row(e.rate()) : Row(nullptr);
      table.write(row);
    }
    for (const auto& [id, hyp] : hyps) {
      if (!refs.contains(id)) spdlog::warn("{}: hypothesis without reference, ignored", id);
    }
    if (corpus.ref_length == 0) throw DataError("references contain no words; WER is undefined");
    out.emit_summary(Row{{"schema", "sxrkit.wer-summary/1"},
                         {"utterances", refs.size()},
                         {"missing_hypotheses", missing},
                         {"sub", corpus.substitutions},
                         {"del", corpus.deletions},
                         {"ins", corpus.insertions},
                         {"ref_len", corpus.ref_length},
                         {"wer", corpus.rate()}});
  }
};

}  // namespace

void register_wer(CLI::App& app, Dispatch& d) {
  auto* cmd = app.add_subcommand("wer", "Word error rate with corpus-level pooling");
  auto c = std::make_shared<WerCommand>();
  c->add(cmd);
  cmd->callback([c, &d] { d.action = [c, &d] { c->run(d.global); }; });
}

}  // namespace sxrkit::cli
