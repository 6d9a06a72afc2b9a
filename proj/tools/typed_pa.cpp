// Copyright 2026 The typed-pa Authors
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

// typed-pa: command-line front end over the libtypedpa C interface.
//
//   typed-pa simulate   [flags]          run the configured seeds
//   typed-pa field      [--levels ...]   ODE level curves and periods
//   typed-pa theory     [--suite NAME]   identity checks as CSV on stdout
//   typed-pa experiment NAME [flags]     fig_dist | fig_circling | trajectories
//   typed-pa check      SUITE            JSON report; exit 1 on any failure

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "typedpa/typedpa.h"

namespace {

struct Flags {
  std::string config;
  std::optional<std::string> seed, seeds, n_max, alpha, model, start, out,
      workers, m, checkpoint_ratio, dense_windows;
};

int Report(tpa_status s) {
  if (s == TPA_OK) return 0;
  std::fprintf(stderr, "typed-pa: %s\n", tpa_last_error());
  return s == TPA_ERR_INVALID_ARGUMENT ? 2 : 3;
}

// Config file first, then any flag given on the command line.
tpa_status BuildConfig(const Flags& f, tpa_config* cfg) {
  if (!f.config.empty()) {
    if (auto s = tpa_config_load(cfg, f.config.c_str()); s != TPA_OK) return s;
  }
  const std::pair<const char*, const std::optional<std::string>*> keys[] = {
      {"master_seed", &f.seed},   {"seeds", &f.seeds},
      {"n_max", &f.n_max},        {"alpha", &f.alpha},
      {"model", &f.model},        {"start", &f.start},
      {"output_dir", &f.out},     {"workers", &f.workers},
      {"m", &f.m},                {"checkpoint_ratio", &f.checkpoint_ratio},
      {"dense_windows", &f.dense_windows}};
  for (const auto& [key, value] : keys) {
    if (!value->has_value()) continue;
    if (auto s = tpa_config_set(cfg, key, (*value)->c_str()); s != TPA_OK) {
      return s;
    }
  }
  return TPA_OK;
}

std::string OutputDir(const Flags& f) {
  if (f.out) return *f.out;
  if (const char* env = std::getenv("TYPED_PA_OUT"); env && *env) return env;
  return "out";
}

std::string RunSuite(const std::string& name, int format, size_t* failures,
                     tpa_status* status) {
  std::string text(1 << 16, '\0');
  size_t needed = 0;
  *status = tpa_check_suite(name.c_str(), 1, format, text.data(), text.size(),
                            &needed, failures);
  if (*status == TPA_ERR_BUFFER_TOO_SMALL) {
    text.resize(needed);
    *status = tpa_check_suite(name.c_str(), 1, format, text.data(),
                              text.size(), &needed, failures);
  }
  text.resize(needed ? needed - 1 : 0);
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Typed preferential attachment: simulation, ODE and oracles"};
  app.set_version_flag("--version", tpa_version());
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  app.add_option("--config", f.config, "key = value config file")
      ->type_name("PATH")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", f.seed, "master seed")
      ->type_name("INT");
  app.add_option("--seeds", f.seeds, "seed count or comma list")
      ->type_name("INT|LIST");
  app.add_option("--n-max", f.n_max, "vertices to add per run")
      ->type_name("INT");
  app.add_option("--alpha", f.alpha, "affine attachment offset (> -2)")
      ->type_name("REAL");
  app.add_option("--model", f.model,
                 "rps | linear | uniform_visible | table file")
      ->type_name("NAME|PATH");
  app.add_option("--start", f.start, "k3 | k6 | edge-list file")
      ->type_name("NAME|PATH");
  app.add_option("--out", f.out, "output directory (default $TYPED_PA_OUT or out)")
      ->type_name("DIR");
  app.add_option("--workers", f.workers, "concurrent runs")
      ->type_name("INT");
  app.add_option("--m", f.m, "neighbors per new vertex")
      ->type_name("INT");
  app.add_option("--checkpoint-ratio", f.checkpoint_ratio,
                 "geometric checkpoint spacing (> 1)")
      ->type_name("REAL");
  app.add_option("--dense-windows", f.dense_windows,
                 "per-step ranges, \"lo:hi;lo:hi\"")
      ->type_name("WINDOWS");

  auto* simulate = app.add_subcommand("simulate", "run every configured seed");

  auto* field = app.add_subcommand("field", "level curves of xyz");
  std::vector<double> levels = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::size_t resolution = 512;
  field->add_option("--levels", levels, "values of 27xyz in (0, 1)");
  field->add_option("--resolution", resolution, "rays per curve");

  auto* theory = app.add_subcommand("theory", "identity checks as CSV");
  std::vector<std::string> theory_suites = {"drift_identities", "affine"};
  theory->add_option("--suite", theory_suites, "suites to print");

  auto* experiment = app.add_subcommand("experiment", "named reproduction");
  std::string experiment_name;
  experiment->add_option("name", experiment_name)
      ->required()
      ->check(CLI::IsMember({"fig_dist", "fig_circling", "trajectories"}));

  auto* check = app.add_subcommand("check", "run a check suite");
  std::string suite_name;
  check->add_option("suite", suite_name)
      ->required()
      ->check(CLI::IsMember({"drift_identities", "lemma_max",
                             "field_conservation", "visible_type", "affine"}));

  CLI11_PARSE(app, argc, argv);

  tpa_config* cfg = nullptr;
  if (auto s = tpa_config_create(&cfg); s != TPA_OK) return Report(s);
  struct Cleanup {
    tpa_config* c;
    ~Cleanup() { tpa_config_destroy(c); }
  } cleanup{cfg};
  if (auto s = BuildConfig(f, cfg); s != TPA_OK) return Report(s);

  if (*simulate) {
    if (auto s = tpa_run_experiment(cfg); s != TPA_OK) return Report(s);
    std::printf("wrote %s\n", OutputDir(f).c_str());
    return 0;
  }
  if (*field) {
    const std::string dir =
        (std::filesystem::path(OutputDir(f)) / "field").string();
    if (auto s = tpa_field_report(levels.data(), levels.size(), resolution,
                                  dir.c_str());
        s != TPA_OK) {
      return Report(s);
    }
    std::printf("wrote %s\n", dir.c_str());
    return 0;
  }
  if (*theory) {
    bool header = true;
    std::size_t failures = 0;
    for (const auto& name : theory_suites) {
      size_t fails = 0;
      tpa_status s;
      std::string csv = RunSuite(name, 1, &fails, &s);
      if (s != TPA_OK) return Report(s);
      failures += fails;
      if (!header) csv.erase(0, csv.find('\n') + 1);
      header = false;
      std::fputs(csv.c_str(), stdout);
    }
    return failures == 0 ? 0 : 1;
  }
  if (*experiment) {
    if (auto s = tpa_run_named_experiment(experiment_name.c_str(), cfg);
        s != TPA_OK) {
      return Report(s);
    }
    std::printf("wrote %s\n",
                (std::filesystem::path(OutputDir(f)) / experiment_name)
                    .string()
                    .c_str());
    return 0;
  }
  if (*check) {
    size_t failures = 0;
    tpa_status s;
    const std::string json = RunSuite(suite_name, 0, &failures, &s);
    if (s != TPA_OK) return Report(s);
    const auto dir = std::filesystem::path(OutputDir(f));
    std::filesystem::create_directories(dir);
    const auto path = dir / ("check_" + suite_name + ".json");
    if (std::FILE* out = std::fopen(path.string().c_str(), "wb")) {
      std::fputs(json.c_str(), out);
      std::fclose(out);
    } else {
      std::fprintf(stderr, "typed-pa: cannot write %s\n", path.string().c_str());
      return 3;
    }
    std::printf("%s: %s (%zu failures), report %s\n", suite_name.c_str(),
                failures == 0 ? "pass" : "FAIL", failures,
                path.string().c_str());
    return failures == 0 ? 0 : 1;
  }
  return 0;
}
