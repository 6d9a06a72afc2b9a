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

#include "typedpa/typedpa.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "typedpa/check_suite.hpp"
#include "typedpa/config.hpp"
#include "typedpa/error.hpp"
#include "typedpa/experiment.hpp"
#include "typedpa/graph_state.hpp"
#include "typedpa/rng.hpp"
#include "typedpa/simulation.hpp"
#include "typedpa/theory.hpp"
#include "typedpa/type_rule.hpp"
#include "typedpa/vector_field.hpp"

struct tpa_rng {
  typedpa::Rng rng;
};

struct tpa_rule {
  typedpa::TypeRule rule;
};

struct tpa_graph {
  typedpa::GraphState state;
};

// Settings are kept as an ordered list so that named experiments can apply
// their own defaults first and the caller's keys on top.
struct tpa_config {
  typedpa::ConfigEntries entries;

  typedpa::ExperimentConfig Build(typedpa::ExperimentConfig base = {}) const {
    typedpa::ApplyConfigEntries(base, entries);
    return base;
  }
};

namespace {

thread_local std::string last_error;

tpa_status Fail(tpa_status status, const char* what) {
  last_error = what;
  return status;
}

template <typename F>
tpa_status Guard(F&& body) {
  try {
    last_error.clear();
    body();
    return TPA_OK;
  } catch (const typedpa::Error& e) {
    switch (e.code()) {
      case typedpa::ErrorCode::kInvalidArgument:
        return Fail(TPA_ERR_INVALID_ARGUMENT, e.what());
      case typedpa::ErrorCode::kIo:
        return Fail(TPA_ERR_IO, e.what());
      case typedpa::ErrorCode::kDomain:
        return Fail(TPA_ERR_DOMAIN, e.what());
      default:
        return Fail(TPA_ERR_INTERNAL, e.what());
    }
  } catch (const std::bad_alloc&) {
    return Fail(TPA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(TPA_ERR_INTERNAL, e.what());
  }
}

void Require(bool ok, const char* what) {
  if (!ok) typedpa::ThrowInvalid(what);
}

tpa_status CopyOut(const std::string& s, char* buf, std::size_t capacity,
                   std::size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (buf == nullptr) return TPA_OK;
  if (capacity < s.size() + 1) {
    return Fail(TPA_ERR_BUFFER_TOO_SMALL, "output buffer too small");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return TPA_OK;
}

typedpa::Vec3 Vec(const double p[3]) { return {p[0], p[1], p[2]}; }

}  // namespace

extern "C" {

const char* tpa_version(void) { return TYPEDPA_VERSION; }

const char* tpa_last_error(void) { return last_error.c_str(); }

tpa_status tpa_rng_create(uint64_t master_seed, uint64_t run, tpa_rng** out) {
  return Guard([&] {
    Require(out, "null output handle");
    *out = new tpa_rng{typedpa::Rng::ForStream(master_seed, run)};
  });
}

void tpa_rng_destroy(tpa_rng* rng) { delete rng; }

tpa_status tpa_rng_next(tpa_rng* rng, uint64_t* out) {
  return Guard([&] {
    Require(rng && out, "null argument");
    *out = rng->rng();
  });
}

tpa_status tpa_rng_uniform(tpa_rng* rng, double* out) {
  return Guard([&] {
    Require(rng && out, "null argument");
    *out = rng->rng.Uniform();
  });
}

tpa_status tpa_rule_create(const char* kind, size_t num_types, uint32_t m,
                           tpa_rule** out) {
  return Guard([&] {
    Require(kind && out, "null argument");
    *out = new tpa_rule{typedpa::TypeRule::Builtin(kind, num_types, m)};
  });
}

tpa_status tpa_rule_load_table(const char* path, tpa_rule** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    *out = new tpa_rule{typedpa::TypeRule::LoadTable(path)};
  });
}

void tpa_rule_destroy(tpa_rule* rule) { delete rule; }

size_t tpa_rule_num_types(const tpa_rule* rule) {
  return rule ? rule->rule.num_types() : 0;
}

uint32_t tpa_rule_m(const tpa_rule* rule) { return rule ? rule->rule.m() : 0; }

tpa_status tpa_rule_assign_distribution(const tpa_rule* rule,
                                        const uint32_t* u, size_t len,
                                        double* out) {
  return Guard([&] {
    Require(rule && u && out, "null argument");
    const auto p = rule->rule.AssignDistribution(std::span(u, len));
    std::copy(p.begin(), p.end(), out);
  });
}

tpa_status tpa_rule_sample_type(const tpa_rule* rule, const uint32_t* u,
                                size_t len, tpa_rng* rng, uint32_t* out) {
  return Guard([&] {
    Require(rule && u && rng && out, "null argument");
    *out = rule->rule.SampleType(std::span(u, len), rng->rng);
  });
}

tpa_status tpa_graph_create(const char* start, double alpha,
                            tpa_graph** out) {
  return Guard([&] {
    Require(start && out, "null argument");
    *out = new tpa_graph{
        typedpa::GraphState(typedpa::ResolveStartGraph(start), alpha)};
  });
}

void tpa_graph_destroy(tpa_graph* graph) { delete graph; }

size_t tpa_graph_num_types(const tpa_graph* graph) {
  return graph ? graph->state.num_types() : 0;
}

uint64_t tpa_graph_num_vertices(const tpa_graph* graph) {
  return graph ? graph->state.num_vertices() : 0;
}

uint64_t tpa_graph_num_edges(const tpa_graph* graph) {
  return graph ? graph->state.num_edges() : 0;
}

double tpa_graph_gamma(const tpa_graph* graph) {
  return graph ? graph->state.gamma() : 0.0;
}

tpa_status tpa_graph_add_vertex(tpa_graph* graph, const tpa_rule* rule,
                                tpa_rng* rng, uint32_t* new_type,
                                uint32_t* neighbor_counts) {
  return Guard([&] {
    Require(graph && rule && rng, "null argument");
    const auto step = graph->state.AddVertex(rule->rule, rng->rng);
    if (new_type) *new_type = step.new_type;
    if (neighbor_counts) {
      std::copy(step.neighbor_counts.begin(), step.neighbor_counts.end(),
                neighbor_counts);
    }
  });
}

tpa_status tpa_graph_shares(const tpa_graph* graph, double* out, size_t len) {
  return Guard([&] {
    Require(graph && out, "null argument");
    Require(len == graph->state.num_types(), "length must equal num_types");
    graph->state.SharesInto(std::span(out, len));
  });
}

tpa_status tpa_graph_type_edge_ends(const tpa_graph* graph, uint64_t* out,
                                    size_t len) {
  return Guard([&] {
    Require(graph && out, "null argument");
    Require(len == graph->state.num_types(), "length must equal num_types");
    const auto ends = graph->state.type_edge_ends();
    std::copy(ends.begin(), ends.end(), out);
  });
}

tpa_status tpa_graph_check_invariants(const tpa_graph* graph) {
  return Guard([&] {
    Require(graph, "null argument");
    graph->state.CheckInvariants();
  });
}

tpa_status tpa_field_eval(const double p[3], double out[3]) {
  return Guard([&] {
    Require(p && out, "null argument");
    const auto f = typedpa::FieldEval(Vec(p));
    std::copy(f.begin(), f.end(), out);
  });
}

tpa_status tpa_field_rk4_step(const double p[3], double dt, double out[3]) {
  return Guard([&] {
    Require(p && out, "null argument");
    const auto q = typedpa::Rk4Step(Vec(p), dt);
    std::copy(q.begin(), q.end(), out);
  });
}

tpa_status tpa_field_center_eigs(double re[2], double im[2]) {
  return Guard([&] {
    Require(re && im, "null argument");
    const auto e = typedpa::JacobianEigsCenter();
    for (int i = 0; i < 2; ++i) {
      re[i] = e[i].real();
      im[i] = e[i].imag();
    }
  });
}

tpa_status tpa_field_level_curve(double level, size_t resolution,
                                 double* arc_length, double* period,
                                 double* points) {
  return Guard([&] {
    const auto c = typedpa::ExtractLevelCurve(level, resolution);
    if (arc_length) *arc_length = c.arc_length;
    if (period) *period = c.period;
    if (points) {
      for (const auto& p : c.points) points = std::copy(p.begin(), p.end(), points);
    }
  });
}

tpa_status tpa_field_circuit_ratio(double level, double* out) {
  return Guard([&] {
    Require(out, "null argument");
    *out = typedpa::CircuitRatio(level);
  });
}

tpa_status tpa_expected_m_next(double m_now, double gamma, double* out) {
  return Guard([&] {
    Require(out, "null argument");
    *out = typedpa::ExpectedMNext(m_now, gamma);
  });
}

tpa_status tpa_expected_m_next_affine(double m_now, double gamma, double alpha,
                                      double* out) {
  return Guard([&] {
    Require(out, "null argument");
    *out = typedpa::ExpectedMNextAffine(m_now, gamma, alpha);
  });
}

tpa_status tpa_expected_product_enum(const double* shares, size_t len,
                                     double gamma, const tpa_rule* rule,
                                     double alpha, double* out) {
  return Guard([&] {
    Require(shares && rule && out, "null argument");
    *out = typedpa::ExpectedProductByEnumeration(std::span(shares, len), gamma,
                                                 rule->rule, alpha);
  });
}

tpa_status tpa_drift_f(double y, uint32_t num_types, uint32_t m, double* out) {
  return Guard([&] {
    Require(out, "null argument");
    *out = typedpa::DriftF(y, num_types, m);
  });
}

tpa_status tpa_p_nmk(const double* p, size_t n, uint32_t m, uint32_t k,
                     double* out) {
  return Guard([&] {
    Require(p && out, "null argument");
    *out = typedpa::PNmk(std::span(p, n), m, k);
  });
}

tpa_status tpa_verify_uniform_max(uint32_t n, uint32_t m, uint32_t k,
                                  double grid_step, int* outcome,
                                  double* margin) {
  return Guard([&] {
    const auto r = typedpa::VerifyUniformMax(n, m, k, grid_step);
    if (outcome) *outcome = static_cast<int>(r.outcome);
    if (margin) *margin = r.margin;
  });
}

tpa_status tpa_config_create(tpa_config** out) {
  return Guard([&] {
    Require(out, "null output handle");
    *out = new tpa_config;
  });
}

void tpa_config_destroy(tpa_config* cfg) { delete cfg; }

tpa_status tpa_config_set(tpa_config* cfg, const char* key,
                          const char* value) {
  return Guard([&] {
    Require(cfg && key && value, "null argument");
    // Reject bad keys and malformed values now rather than at run time.
    typedpa::ExperimentConfig probe;
    probe.Set(key, value);
    cfg->entries.emplace_back(key, value);
  });
}

tpa_status tpa_config_load(tpa_config* cfg, const char* path) {
  return Guard([&] {
    Require(cfg && path, "null argument");
    auto entries = typedpa::ReadConfigFile(path);
    typedpa::ExperimentConfig probe;
    typedpa::ApplyConfigEntries(probe, entries);
    cfg->entries.insert(cfg->entries.end(), entries.begin(), entries.end());
  });
}

tpa_status tpa_config_validate(const tpa_config* cfg) {
  return Guard([&] {
    Require(cfg, "null argument");
    cfg->Build().Validate();
  });
}

tpa_status tpa_config_canonical(const tpa_config* cfg, char* buf,
                                size_t capacity, size_t* needed) {
  std::string text;
  const tpa_status s = Guard([&] {
    Require(cfg, "null argument");
    text = cfg->Build().Canonical();
  });
  return s == TPA_OK ? CopyOut(text, buf, capacity, needed) : s;
}

tpa_status tpa_simulate(const tpa_config* cfg, uint64_t seed,
                        const char* csv_path, tpa_run_summary* out) {
  return Guard([&] {
    Require(cfg, "null argument");
    const auto c = cfg->Build();
    c.Validate();
    auto rng = typedpa::Rng::ForStream(c.master_seed, seed);
    const auto result = typedpa::SimulateRun(c.BuildRunSpec(), rng);
    if (csv_path) {
      std::ofstream f(csv_path, std::ios::binary);
      if (!f) typedpa::ThrowIo(std::string("cannot write ") + csv_path);
      typedpa::WriteTrajectoryCsv(result.records, f);
      if (!f) typedpa::ThrowIo(std::string("failed writing ") + csv_path);
    }
    if (out) {
      out->final_product = result.summary.final_product;
      out->product_range = result.summary.product_range;
      out->dtheta = result.summary.dtheta;
      out->circuits = typedpa::CompletedCircuits(result.summary);
      out->theta_flags = result.summary.theta_flags;
    }
  });
}

tpa_status tpa_run_experiment(const tpa_config* cfg) {
  return Guard([&] {
    Require(cfg, "null argument");
    const auto c = cfg->Build();
    c.Validate();
    typedpa::RunExperiment(c);
  });
}

tpa_status tpa_run_named_experiment(const char* name, const tpa_config* cfg) {
  return Guard([&] {
    Require(name && cfg, "null argument");
    const auto c = cfg->Build(typedpa::NamedExperimentDefaults(name));
    c.Validate();
    typedpa::RunNamedExperiment(name, c);
  });
}

tpa_status tpa_field_report(const double* levels27, size_t count,
                            size_t resolution, const char* dir) {
  return Guard([&] {
    Require(levels27 && dir, "null argument");
    const std::filesystem::path d(dir);
    std::filesystem::create_directories(d);
    std::ofstream contours(d / "contours.csv", std::ios::binary);
    std::ofstream summary(d / "field_summary.csv", std::ios::binary);
    if (!contours || !summary) typedpa::ThrowIo("cannot write into " + d.string());
    typedpa::WriteFieldCsv(std::span(levels27, count), resolution, contours,
                           summary);
    if (!contours || !summary) typedpa::ThrowIo("failed writing " + d.string());
  });
}

tpa_status tpa_verify_manifest(const char* path, int* ok) {
  return Guard([&] {
    Require(path && ok, "null argument");
    *ok = typedpa::VerifyManifest(path) ? 1 : 0;
  });
}

tpa_status tpa_check_suite(const char* name, uint64_t seed, int format,
                           char* buf, size_t capacity, size_t* needed,
                           size_t* failures) {
  std::string text;
  const tpa_status s = Guard([&] {
    Require(name, "null argument");
    Require(format == 0 || format == 1, "format must be 0 (JSON) or 1 (CSV)");
    const auto report = typedpa::RunCheckSuite(name, seed);
    std::ostringstream os;
    if (format == 0) {
      report.WriteJson(os);
    } else {
      report.WriteCsv(os);
    }
    text = os.str();
    if (failures) *failures = report.failures();
  });
  return s == TPA_OK ? CopyOut(text, buf, capacity, needed) : s;
}

}  // extern "C"
