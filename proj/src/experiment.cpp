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

#include "typedpa/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "typedpa/csv.hpp"
#include "typedpa/error.hpp"
#include "typedpa/simulation.hpp"

namespace typedpa {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::ofstream OpenOut(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) ThrowIo("cannot write " + path.string());
  return out;
}

void CloseOut(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) ThrowIo("failed writing " + path.string());
}

void WriteManifest(const fs::path& dir, const std::string& canonical,
                   const std::vector<SeedRun>& runs,
                   const std::vector<fs::path>& files) {
  json manifest;
  manifest["code_version"] = TYPEDPA_VERSION;
  manifest["config"] = canonical;
  manifest["config_hash"] = Sha256Hex(canonical);
  json run_list = json::array();
  for (const auto& r : runs) {
    run_list.push_back({{"seed", r.seed},
                        {"stream_seed", r.stream_seed},
                        {"trajectory", r.trajectory.generic_string()}});
  }
  manifest["runs"] = std::move(run_list);
  json file_list = json::array();
  for (const auto& f : files) {
    file_list.push_back({{"path", f.generic_string()},
                         {"sha256", Sha256File(dir / f)}});
  }
  manifest["files"] = std::move(file_list);
  const fs::path path = dir / "manifest.json";
  auto out = OpenOut(path);
  out << manifest.dump(2) << '\n';
  CloseOut(out, path);
}

}  // namespace

void WriteTrajectoryCsv(std::span<const TrajectoryRecord> records,
                        std::ostream& out) {
  const std::size_t k = records.empty() ? 3 : records.front().shares.size();
  out << "n,gamma,";
  if (k == 3) {
    out << "x,y,z";
  } else {
    for (std::size_t i = 0; i < k; ++i) out << (i ? "," : "") << "share_" << i;
  }
  out << ",M,theta\n";
  for (const auto& r : records) {
    out << r.n << ',' << FormatDouble(r.gamma);
    for (double s : r.shares) out << ',' << FormatDouble(s);
    out << ',' << FormatDouble(r.product) << ',' << FormatDouble(r.theta)
        << '\n';
  }
}

int CompletedCircuits(const RunSummary& summary) {
  int best = 0;
  for (const auto& c : summary.circuits) {
    if (std::abs(c.index) > std::abs(best)) best = c.index;
  }
  return best;
}

void WriteSummaryCsv(std::span<const SeedRun> runs, std::ostream& out) {
  out << "seed,M_final,M_range,dtheta,circuits,M27_final\n";
  for (const auto& r : runs) {
    out << r.seed << ',' << FormatDouble(r.summary.final_product) << ','
        << FormatDouble(r.summary.product_range) << ','
        << FormatDouble(r.summary.dtheta) << ',' << CompletedCircuits(r.summary)
        << ',' << FormatDouble(27.0 * r.summary.final_product) << '\n';
  }
}

ExperimentArtifacts RunExperiment(const ExperimentConfig& cfg) {
  const RunSpec spec = cfg.BuildRunSpec();
  const auto seeds = cfg.Seeds();
  ExperimentArtifacts art;
  art.dir = cfg.output_dir;
  fs::create_directories(art.dir);
  art.runs.resize(seeds.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= seeds.size()) return;
      try {
        Rng rng = Rng::ForStream(cfg.master_seed, seeds[i]);
        const RunResult result = SimulateRun(spec, rng);
        SeedRun& run = art.runs[i];
        run.seed = seeds[i];
        run.stream_seed = rng.seed();
        run.summary = result.summary;
        run.trajectory = "traj_seed" + std::to_string(seeds[i]) + ".csv";
        const fs::path path = art.dir / run.trajectory;
        auto out = OpenOut(path);
        WriteTrajectoryCsv(result.records, out);
        CloseOut(out, path);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = seeds.size();
      }
    }
  };
  const unsigned threads =
      std::max(1u, std::min<unsigned>(cfg.workers, seeds.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<fs::path> files;
  for (const auto& r : art.runs) files.push_back(r.trajectory);

  art.summary_csv = art.dir / "summary.csv";
  {
    auto out = OpenOut(art.summary_csv);
    WriteSummaryCsv(art.runs, out);
    CloseOut(out, art.summary_csv);
  }
  files.emplace_back("summary.csv");
  const std::string canonical = cfg.Canonical();
  {
    const fs::path path = art.dir / "config.txt";
    auto out = OpenOut(path);
    out << canonical;
    CloseOut(out, path);
  }
  files.emplace_back("config.txt");
  WriteManifest(art.dir, canonical, art.runs, files);
  art.manifest = art.dir / "manifest.json";
  return art;
}

std::vector<std::string> NamedExperiments() {
  return {"fig_dist", "fig_circling", "trajectories"};
}

ExperimentConfig NamedExperimentDefaults(std::string_view name) {
  ExperimentConfig cfg;
  if (name == "fig_dist") {
    cfg.n_max = 10000;
    cfg.seed_count = 200;
  } else if (name == "fig_circling") {
    cfg.n_max = 10000000;
    cfg.seed_count = 1;
  } else if (name == "trajectories") {
    cfg.seed_count = 1;
  } else {
    ThrowInvalid("unknown experiment '" + std::string(name) + "'");
  }
  return cfg;
}

std::vector<std::size_t> ProductHistogram(std::span<const SeedRun> runs,
                                          std::size_t bins) {
  std::vector<std::size_t> counts(bins, 0);
  for (const auto& r : runs) {
    const double v = 27.0 * r.summary.final_product;
    auto b = static_cast<std::size_t>(std::floor(v * bins));
    counts[std::min(b, bins - 1)]++;
  }
  return counts;
}

void WriteFieldCsv(std::span<const double> levels27, std::size_t resolution,
                   std::ostream& contours, std::ostream& summary) {
  contours << "level,ray_index,x,y,z\n";
  summary << "M,M27,L_M,T,A,A_arclength\n";
  for (double level27 : levels27) {
    const double level = level27 / 27.0;
    const LevelCurve c = ExtractLevelCurve(level, resolution);
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      // The closing point repeats ray 0.
      const std::size_t ray = i % resolution;
      contours << FormatDouble(level27) << ',' << ray << ','
               << FormatDouble(c.points[i][0]) << ','
               << FormatDouble(c.points[i][1]) << ','
               << FormatDouble(c.points[i][2]) << '\n';
    }
    summary << FormatDouble(level) << ',' << FormatDouble(level27) << ','
            << FormatDouble(c.arc_length) << ',' << FormatDouble(c.period)
            << ',' << FormatDouble(std::exp(c.period)) << ','
            << FormatDouble(std::exp(2.0 * c.arc_length * c.period)) << '\n';
  }
}

std::filesystem::path RunNamedExperiment(std::string_view name,
                                         const ExperimentConfig& cfg) {
  const fs::path dir = cfg.output_dir / std::string(name);
  fs::create_directories(dir);
  if (name == "fig_dist") {
    std::vector<SeedRun> k3_runs, k6_runs;
    for (const char* start : {"k3", "k6"}) {
      ExperimentConfig sub = cfg;
      sub.model = "rps";
      sub.m = 2;
      sub.start = start;
      sub.output_dir = dir / start;
      auto art = RunExperiment(sub);
      (std::string_view(start) == "k3" ? k3_runs : k6_runs) = art.runs;
    }
    constexpr std::size_t kBins = 20;
    const auto h3 = ProductHistogram(k3_runs, kBins);
    const auto h6 = ProductHistogram(k6_runs, kBins);
    const fs::path path = dir / "hist.csv";
    auto out = OpenOut(path);
    out << "bin_lo,bin_hi,k3,k6\n";
    for (std::size_t b = 0; b < kBins; ++b) {
      out << FormatDouble(static_cast<double>(b) / kBins) << ','
          << FormatDouble(static_cast<double>(b + 1) / kBins) << ',' << h3[b]
          << ',' << h6[b] << '\n';
    }
    CloseOut(out, path);
    return dir;
  }
  if (name == "fig_circling") {
    ExperimentConfig sub = cfg;
    sub.output_dir = dir;
    const auto art = RunExperiment(sub);
    // Evolution series for the first seed: shares and 27M against n.
    std::ifstream traj(dir / art.runs.front().trajectory);
    const fs::path path = dir / "evolution.csv";
    auto out = OpenOut(path);
    out << "n,x,y,z,M27\n";
    std::string line;
    std::getline(traj, line);  // header
    while (std::getline(traj, line)) {
      std::istringstream row(line);
      std::string n, gamma, x, y, z, m, theta;
      std::getline(row, n, ',');
      std::getline(row, gamma, ',');
      std::getline(row, x, ',');
      std::getline(row, y, ',');
      std::getline(row, z, ',');
      std::getline(row, m, ',');
      out << n << ',' << x << ',' << y << ',' << z << ','
          << FormatDouble(27.0 * std::stod(m)) << '\n';
    }
    CloseOut(out, path);
    return dir;
  }
  if (name == "trajectories") {
    std::vector<double> levels;
    for (int i = 1; i <= 9; ++i) levels.push_back(i / 10.0);
    const fs::path contours_path = dir / "contours.csv";
    const fs::path summary_path = dir / "field_summary.csv";
    auto contours = OpenOut(contours_path);
    auto summary = OpenOut(summary_path);
    WriteFieldCsv(levels, 512, contours, summary);
    CloseOut(contours, contours_path);
    CloseOut(summary, summary_path);
    return dir;
  }
  ThrowInvalid("unknown experiment '" + std::string(name) + "'");
}

bool VerifyManifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) ThrowIo("cannot open manifest " + manifest.string());
  const json j = json::parse(in);
  const fs::path dir = manifest.parent_path();
  for (const auto& f : j.at("files")) {
    const fs::path p = dir / f.at("path").get<std::string>();
    if (!fs::exists(p) || Sha256File(p) != f.at("sha256").get<std::string>()) {
      return false;
    }
  }
  return true;
}

}  // namespace typedpa
