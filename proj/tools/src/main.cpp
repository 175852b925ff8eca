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

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <filesystem>
#include <iostream>

#include "common.hpp"
#include "sxrkit/error.hpp"

namespace {

int emit_error(const char* kind, int code, const std::string& message) {
  nlohmann::ordered_json rec{{"schema", "sxrkit.error/1"},
                             {"kind", kind},
                             {"exit_code", code},
                             {"message", message}};
  std::cerr << rec.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace sxrkit::cli;
  spdlog::set_default_logger(spdlog::stderr_color_mt("sxrkit"));
  spdlog::set_pattern("[%l] %v");

  CLI::App app{"sxrkit: SxR evaluation and data tools for speech enhancement"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "sxrkit 0.1.0");

  Dispatch d;
  bool workers_given = false;
  std::size_t workers = 0;
  app.add_option_function<std::size_t>(
         "-j,--workers",
         [&](const std::size_t& n) {
           workers = n;
           workers_given = true;
         },
         "Worker threads (default: SXRKIT_WORKERS or hardware concurrency)")
      ->check(CLI::PositiveNumber);
  app.add_option("--log-level", d.global.log_level, "Log verbosity")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  register_mix(app, d);
  register_enhance(app, d);
  register_decompose(app, d);
  register_metrics(app, d);
  register_dsa(app, d);
  register_oa_sweep(app, d);
  register_oa_apply(app, d);
  register_loss(app, d);
  register_grad_check(app, d);
  register_wer(app, d);
  register_report(app, d);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error("usage", 1, e.what());
  }

  try {
    spdlog::set_level(spdlog::level::from_str(d.global.log_level));
    d.global.workers = workers_given ? workers : env_worker_count();
    spdlog::debug("workers: {}", d.global.workers);
    d.action();
    return 0;
  } catch (const sxrkit::Error& e) {
    switch (e.kind()) {
      case sxrkit::ErrorKind::kUsage:
        return emit_error("usage", 1, e.what());
      case sxrkit::ErrorKind::kData:
        return emit_error("data", 2, e.what());
      case sxrkit::ErrorKind::kInternal:
        break;
    }
    return emit_error("internal", 3, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return emit_error("data", 2, e.what());
  } catch (const nlohmann::json::exception& e) {
    return emit_error("data", 2, e.what());
  } catch (const std::exception& e) {
    return emit_error("internal", 3, e.what());
  }
}
