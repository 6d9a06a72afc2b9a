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

#ifndef TYPEDPA_EXPERIMENT_HPP_
#define TYPEDPA_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "typedpa/config.hpp"
#include "typedpa/observables.hpp"

namespace typedpa {

struct SeedRun {
  std::uint64_t seed = 0;
  std::uint64_t stream_seed = 0;
  RunSummary summary;
  std::filesystem::path trajectory;  // relative to the experiment directory
};

struct ExperimentArtifacts {
  std::filesystem::path dir;
  std::vector<SeedRun> runs;  // in seed order
  std::filesystem::path summary_csv;
  std::filesystem::path manifest;
};

// Trajectory CSV: n,gamma,x,y,z,M,theta for three types; with N != 3 the
// share columns are share_0..share_{N-1}.
void WriteTrajectoryCsv(std::span<const TrajectoryRecord> records,
                        std::ostream& out);

// Summary CSV: seed,M_final,M_range,dtheta,circuits,M27_final.
void WriteSummaryCsv(std::span<const SeedRun> runs, std::ostream& out);

// Signed count of completed circuits in the dominant direction.
int CompletedCircuits(const RunSummary& summary);

// One trajectory file per seed, summary.csv, config.txt (canonical config)
// and manifest.json with SHA-256 of every file. Seeds run on cfg.workers
// threads; output does not depend on the worker count.
ExperimentArtifacts RunExperiment(const ExperimentConfig& cfg);

// Named reproductions: "fig_dist", "fig_circling", "trajectories".
std::vector<std::string> NamedExperiments();
ExperimentConfig NamedExperimentDefaults(std::string_view name);
// Writes under cfg.output_dir / name. Returns the directory.
std::filesystem::path RunNamedExperiment(std::string_view name,
                                         const ExperimentConfig& cfg);

// Level curves for each 27xyz level: contours.csv (level,ray_index,x,y,z)
// and field_summary.csv (M,M27,L_M,T,A,A_arclength).
void WriteFieldCsv(std::span<const double> levels27, std::size_t resolution,
                   std::ostream& contours, std::ostream& summary);

// Histogram of 27 * M_final on [0, 1] in `bins` equal bins.
std::vector<std::size_t> ProductHistogram(std::span<const SeedRun> runs,
                                          std::size_t bins);

// Recomputes every file hash listed in a manifest; true if all match.
bool VerifyManifest(const std::filesystem::path& manifest);

}  // namespace typedpa

#endif  // TYPEDPA_EXPERIMENT_HPP_
