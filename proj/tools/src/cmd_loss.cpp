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

#include <spdlog/fmt/fmt.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include "common.hpp"
#include "sxrkit/absdr.hpp"
#include "sxrkit/error.hpp"
#include "sxrkit/synth.hpp"
#include "sxrkit/wav_io.hpp"

namespace sxrkit::cli {

namespace fs = std::filesystem;

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : "; ") + p;
  return s;
}

Row::value_type loss_value(double v) {
  if (std::isfinite(v)) return v;
  return Decibel(v).to_string();
}

LossConfig scenario_config(const ReferenceSet& refs) {
  return refs.single_talker() ? LossConfig::single_talker() : LossConfig::multi_talker();
}

struct LossCommand {
  InputOptions in;
  OutputOptions out;
  std::string loss = "absdr";
  std::vector<double> alphas;
  std::optional<std::size_t> num_delays;
  std::optional<double> floor;
  std::string grad_dir;

  void add(CLI::App* cmd) {
    in.add_to(cmd, true);
    out.add_to(cmd);
    cmd->add_option("--loss", loss, "absdr, sdr (alpha = 1) or snr")
        ->check(CLI::IsMember({"absdr", "sdr", "snr"}));
    cmd->add_option("--alpha", alphas, "Artifact weights (default: the standard grid)")
        ->delimiter(',');
    cmd->add_option("-L,--delays", num_delays,
                    "Delayed copies (default: 2 single-talker, 1 multi-talker)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--floor", floor, "Denominator floor (default 1e-12 ||s||^2; 0 disables)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--grad-dir", grad_dir, "Write loss gradients as f64 WAVs here");
  }

  void run(const GlobalOptions& g) const {
    if (loss == "snr" && !grad_dir.empty()) {
      throw UsageError("--grad-dir is only available for absdr and sdr losses");
    }
    if (loss != "absdr" && !alphas.empty()) throw UsageError("--alpha applies to absdr only");
    if (loss == "snr" && num_delays) throw UsageError("-L does not apply to the snr loss");
    const std::vector<double> alpha_list =
        loss == "sdr" ? std::vector<double>{1.0}
                      : (alphas.empty() ? default_alpha_grid() : alphas);
    const std::vector<DatasetRecord> records = in.records();
    if (!grad_dir.empty()) fs::create_directories(grad_dir);

    std::vector<std::vector<Row>> rows(records.size());
    const auto errors = run_isolated(records.size(), g.workers, [&](std::size_t k) {
      const Utterance u = load_utterance(records[k], true);
      const std::string& id = records[k].id;
      if (loss == "snr") {
        const LossResult r = snr_loss(*u.enhanced, u.refs, floor);
        rows[k].push_back(Row{{"utterance", id}, {"loss", loss}, {"value", loss_value(r.value)},
                              {"diagnostics", join(r.diagnostics)}});
        return;
      }
      for (double alpha : alpha_list) {
        LossConfig cfg = scenario_config(u.refs);
        cfg.alpha = alpha;
        if (num_delays) cfg.num_delays = *num_delays;
        cfg.denom_floor = floor;
        const AbsdrObjective obj(u.refs, cfg);
        Row row{{"utterance", id}, {"loss", loss}, {"alpha", alpha}, {"L", cfg.num_delays},
                {"floor", obj.denom_floor()}};
        std::vector<std::string> diag;
        if (grad_dir.empty()) {
          const LossResult r = obj.loss(*u.enhanced);
          row["value"] = loss_value(r.value);
          diag = r.diagnostics;
        } else {
          const GradientResult gr = obj.gradient(*u.enhanced);
          const std::string name = id + "_grad_a" + format_weight(alpha, 2) + ".wav";
          write_wav(fs::path(grad_dir) / name,
                    Waveform::checked(gr.gradient, u.refs.sample_rate(), "gradient"),
                    SampleFormat::kFloat64);
          row["value"] = loss_value(gr.loss);
          row["gradient"] = name;
          diag = gr.diagnostics;
        }
        row["diagnostics"] = join(diag);
        rows[k].push_back(std::move(row));
      }
    });

    TableWriter table(out.path, out.table_format(), "sxrkit.loss/1",
                      {"utterance", "loss", "alpha", "L", "floor", "value", "gradient",
                       "diagnostics"});
    for (std::size_t k = 0; k < records.size(); ++k) {
      for (const Row& r : rows[k]) {
        const auto diag = r["diagnostics"].get<std::string>();
        if (!diag.empty()) spdlog::warn("{}: {}", records[k].id, diag);
        table.write(r);
      }
    }
    rethrow_failures(errors, records);
  }
};

struct GradCheckCommand {
  InputOptions in;
  OutputOptions out;
  std::size_t count = 4;
  std::size_t length = 256;
  std::uint64_t seed = 1;
  std::vector<double> alphas = {1.0, 1.5, 2.0, 3.0};
  std::vector<std::size_t> delays = {1, 2};
  double tolerance = 1e-5;
  double step = 1e-5;

  void add(CLI::App* cmd) {
    in.add_to(cmd, true);
    out.add_to(cmd);
    cmd->add_option("--count", count, "Synthetic instances when no input is given");
    cmd->add_option("--length", length, "Synthetic instance length");
    cmd->add_option("--seed", seed, "Synthetic instance seed");
    cmd->add_option("--alpha", alphas, "Artifact weights to check")->delimiter(',');
    cmd->add_option("-L,--delays", delays, "Delay counts to check")->delimiter(',');
    cmd->add_option("--tolerance", tolerance, "Largest accepted relative error")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--step", step, "Finite-difference step relative to the signal RMS")
        ->check(CLI::PositiveNumber);
  }

  std::vector<Utterance> instances() const {
    std::vector<Utterance> out;
    if (!in.manifest.empty() || !in.source.empty()) {
      for (const auto& r : in.records()) out.push_back(load_utterance(r, true));
      return out;
    }
    if (length < 8) throw UsageError("--length must be at least 8");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (std::size_t k = 0; k < count; ++k) {
      // Alternate single- and multi-talker sets.
      std::optional<double> sir;
      if (k % 2 == 1) sir = 5.0;
      ReferenceSet refs = synth_mixture(length, 16000, 5.0, sir, rng());
      std::vector<double> x(length);
      const double scale = 0.1 * refs.source.rms();
      for (std::size_t t = 0; t < length; ++t) {
        x[t] = 0.8 * refs.source[t] + 0.3 * (refs.observed[t] - refs.source[t]) +
               scale * gauss(rng);
      }
      DatasetRecord rec;
      rec.id = "synthetic" + std::to_string(k);
      out.push_back(Utterance{rec, refs, Waveform(x, 16000)});
    }
    return out;
  }

  void run(const GlobalOptions& g) const {
    const std::vector<Utterance> insts = instances();
    struct Case {
      std::size_t inst;
      double alpha;
      std::size_t L;
    };
    std::vector<Case> cases;
    for (std::size_t i = 0; i < insts.size(); ++i) {
      for (double a : alphas) {
        for (std::size_t L : delays) cases.push_back({i, a, L});
      }
    }
    std::vector<GradientCheck> results(cases.size());
    std::vector<DatasetRecord> case_records;
    for (const Case& c : cases) case_records.push_back(insts[c.inst].record);
    const auto errors = run_isolated(cases.size(), g.workers, [&](std::size_t k) {
      const Case& c = cases[k];
      const AbsdrObjective obj(insts[c.inst].refs, LossConfig{c.alpha, c.L, std::nullopt});
      results[k] = finite_difference_check(obj, *insts[c.inst].enhanced, step);
    });

    TableWriter table(out.path, out.table_format(), "sxrkit.grad-check/1",
                      {"utterance", "alpha", "L", "max_relative_error", "step", "pass"});
    double worst = 0.0;
    for (std::size_t k = 0; k < cases.size(); ++k) {
      if (errors[k]) continue;
      const double err = results[k].max_relative_error;
      worst = std::max(worst, err);
      table.write(Row{{"utterance", case_records[k].id},
                      {"alpha", cases[k].alpha},
                      {"L", cases[k].L},
                      {"max_relative_error", err},
                      {"step", results[k].step},
                      {"pass", err <= tolerance}});
    }
    rethrow_failures(errors, case_records);
    out.emit_summary(Row{{"schema", "sxrkit.grad-check-summary/1"},
                         {"cases", cases.size()},
                         {"max_relative_error", worst},
                         {"tolerance", tolerance},
                         {"pass", worst <= tolerance}});
    if (worst > tolerance) {
      throw Error(ErrorKind::kInternal,
                  fmt::format("gradient check failed: max relative error {:.3g} exceeds {:.3g}",
                              worst, tolerance));
    }
  }
};

}  // namespace

void register_loss(CLI::App& app, Dispatch& d) {
  auto* cmd = app.add_subcommand("loss", "Evaluate AB-SDR / SDR / SNR training losses");
  auto c = std::make_shared<LossCommand>();
  c->add(cmd);
  cmd->callback([c, &d] { d.action = [c, &d] { c->run(d.global); }; });
}

void register_grad_check(CLI::App& app, Dispatch& d) {
  auto* cmd = app.add_subcommand("grad-check", "Compare the analytic loss gradient to finite differences");
  auto c = std::make_shared<GradCheckCommand>();
  c->add(cmd);
  cmd->callback([c, &d] { d.action = [c, &d] { c->run(d.global); }; });
}

}  // namespace sxrkit::cli
