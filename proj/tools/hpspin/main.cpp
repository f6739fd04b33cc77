// Copyright 2026 The hpspin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "hpspin/types.hpp"
#include "output.hpp"

#ifndef HPSPIN_VERSION
#define HPSPIN_VERSION "0.0.0"
#endif

namespace {

using hpspin::ErrorKind;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::kResourceLimit:
      return 3;
    case ErrorKind::kNumeric:
      return 4;
    default:
      return 2;
  }
}

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::kResourceLimit:
      return "resource-limit";
    case ErrorKind::kNumeric:
      return "numeric";
    case ErrorKind::kConfig:
      return "config";
    default:
      return "invalid-argument";
  }
}

int report(const std::string& kind, const std::string& command, const std::string& msg, int code) {
  nlohmann::ordered_json j = {{"error", kind}, {"command", command}, {"message", msg}, {"exit_code", code}};
  std::cerr << j.dump() << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace hpspin::cli;
  CLI::App app{"Holstein-Primakoff spin code experiments"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  RunOverrides ov;
  int threads = 0, band = 0;
  double tolerance = 0.0;
  for (const auto& c : commands()) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--band", band, "irrep band below the top irrep")->check(CLI::PositiveNumber);
    sub->add_option("--tolerance", tolerance, "trace tolerance")->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  const CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  if (sub->count("--threads")) ov.threads = threads;
  if (sub->count("--band")) ov.band = band;
  if (sub->count("--tolerance")) ov.tolerance = tolerance;

  const auto start = std::chrono::steady_clock::now();
  try {
    std::string raw;
    const nlohmann::json cfg = load_config(config_path, &raw);
    Fields fields(cfg, name);
    const CommonOptions common = read_common(fields, ov);
    OutputStage stage(out_dir);
    Context ctx{fields, common, stage};
    for (const auto& c : commands())
      if (name == c.name) c.run(ctx);
    nlohmann::ordered_json manifest = {
        {"schema_version", 1},
        {"tool", "hpspin"},
        {"version", HPSPIN_VERSION},
        {"command", name},
        {"config_file", config_path},
        {"config_sha256", sha256_hex(raw)},
        {"config_resolved", fields.resolved()},
        {"options", {{"threads", common.threads}, {"band", common.band}, {"tolerance", common.tolerance}}},
    };
    for (auto it = ctx.extra.begin(); it != ctx.extra.end(); ++it) manifest[it.key()] = it.value();
    manifest["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    stage.commit(manifest);
  } catch (const hpspin::Error& e) {
    return report(kind_name(e.kind()), name, e.what(), exit_code(e.kind()));
  } catch (const std::filesystem::filesystem_error& e) {
    return report("io", name, e.what(), 2);
  } catch (const std::bad_alloc&) {
    return report("resource-limit", name, "out of memory", 3);
  } catch (const std::exception& e) {
    return report("numeric", name, e.what(), 4);
  }
  return 0;
}
