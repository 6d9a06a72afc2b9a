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

// Exercises the shared library through its C header only.

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "typedpa/typedpa.h"

namespace fs = std::filesystem;

TEST_CASE("version and errors") {
  CHECK(std::string(tpa_version()) == "0.1.0");
  tpa_rule* rule = nullptr;
  CHECK(tpa_rule_create("rps", 4, 2, &rule) == TPA_ERR_INVALID_ARGUMENT);
  CHECK(rule == nullptr);
  CHECK(std::strlen(tpa_last_error()) > 0);
  tpa_graph* g = nullptr;
  CHECK(tpa_graph_create("k3", -2.5, &g) == TPA_ERR_INVALID_ARGUMENT);
  CHECK(tpa_graph_create("/no/such/graph.txt", 0.0, &g) == TPA_ERR_IO);
  double arc = 0;
  CHECK(tpa_field_level_curve(0.5, 64, &arc, nullptr, nullptr) ==
        TPA_ERR_DOMAIN);
  CHECK(tpa_rng_next(nullptr, nullptr) == TPA_ERR_INVALID_ARGUMENT);
}

TEST_CASE("grow a graph") {
  tpa_rng* rng = nullptr;
  tpa_rule* rule = nullptr;
  tpa_graph* g = nullptr;
  REQUIRE(tpa_rng_create(1, 0, &rng) == TPA_OK);
  REQUIRE(tpa_rule_create("rps", 3, 2, &rule) == TPA_OK);
  REQUIRE(tpa_graph_create("k3", 0.0, &g) == TPA_OK);
  CHECK(tpa_graph_gamma(g) == 6.0);
  uint32_t u[3];
  uint32_t t = 0;
  for (int i = 0; i < 1000; ++i) {
    uint64_t before[3], after[3];
    REQUIRE(tpa_graph_type_edge_ends(g, before, 3) == TPA_OK);
    REQUIRE(tpa_graph_add_vertex(g, rule, rng, &t, u) == TPA_OK);
    REQUIRE(tpa_graph_type_edge_ends(g, after, 3) == TPA_OK);
    for (uint32_t k = 0; k < 3; ++k) {
      CHECK(after[k] == before[k] + u[k] + (k == t ? 2 : 0));
    }
  }
  CHECK(tpa_graph_num_vertices(g) == 1003);
  CHECK(tpa_graph_num_edges(g) == 2003);
  CHECK(tpa_graph_gamma(g) == 4006.0);
  CHECK(tpa_graph_check_invariants(g) == TPA_OK);
  double shares[3];
  CHECK(tpa_graph_shares(g, shares, 3) == TPA_OK);
  CHECK(std::abs(shares[0] + shares[1] + shares[2] - 1.0) <= 1e-12);
  CHECK(tpa_graph_shares(g, shares, 2) == TPA_ERR_INVALID_ARGUMENT);

  double p[3];
  const uint32_t u110[3] = {1, 1, 0};
  REQUIRE(tpa_rule_assign_distribution(rule, u110, 3, p) == TPA_OK);
  CHECK(p[1] == 1.0);
  tpa_graph_destroy(g);
  tpa_rule_destroy(rule);
  tpa_rng_destroy(rng);
}

TEST_CASE("field and oracles") {
  const double x[3] = {0.5, 0.25, 0.25};
  double f[3];
  REQUIRE(tpa_field_eval(x, f) == TPA_OK);
  CHECK(f[1] == doctest::Approx(1.0 / 32.0));
  double re[2], im[2];
  REQUIRE(tpa_field_center_eigs(re, im) == TPA_OK);
  CHECK(std::abs(im[0] - 1.0 / std::sqrt(12.0)) <= 1e-8);
  std::vector<double> pts(3 * 65);
  double arc = 0, period = 0;
  REQUIRE(tpa_field_level_curve(0.5 / 27.0, 64, &arc, &period, pts.data()) ==
          TPA_OK);
  CHECK(period > 21.0);
  CHECK(pts[0] == pts[3 * 64]);
  double a = 0;
  REQUIRE(tpa_field_circuit_ratio(0.5 / 27.0, &a) == TPA_OK);
  CHECK(a == doctest::Approx(std::exp(period)).epsilon(1e-6));

  double v = 0;
  REQUIRE(tpa_expected_m_next(1.0 / 27.0, 6.0, &v) == TPA_OK);
  CHECK(v == doctest::Approx(0.028));
  REQUIRE(tpa_expected_m_next_affine(1.0 / 27.0, 9.0, 1.0, &v) == TPA_OK);
  CHECK(v == doctest::Approx(0.0291545).epsilon(1e-6));
  REQUIRE(tpa_drift_f(0.3, 2, 3, &v) == TPA_OK);
  CHECK(v == doctest::Approx(0.042));
  const double q[2] = {0.6, 0.4};
  REQUIRE(tpa_p_nmk(q, 2, 2, 2, &v) == TPA_OK);
  CHECK(v == doctest::Approx(0.48));
  int outcome = -1;
  double margin = 0;
  REQUIRE(tpa_verify_uniform_max(3, 2, 3, 0.02, &outcome, &margin) == TPA_OK);
  CHECK(outcome == 1);
}

TEST_CASE("config, simulate and experiment") {
  tpa_config* cfg = nullptr;
  REQUIRE(tpa_config_create(&cfg) == TPA_OK);
  CHECK(tpa_config_set(cfg, "n_max", "abc") == TPA_ERR_INVALID_ARGUMENT);
  CHECK(tpa_config_set(cfg, "bogus", "1") == TPA_ERR_INVALID_ARGUMENT);
  const fs::path dir = fs::temp_directory_path() / "typedpa_capi_test";
  fs::remove_all(dir);
  REQUIRE(tpa_config_set(cfg, "n_max", "1500") == TPA_OK);
  REQUIRE(tpa_config_set(cfg, "seeds", "3") == TPA_OK);
  REQUIRE(tpa_config_set(cfg, "output_dir", dir.c_str()) == TPA_OK);
  CHECK(tpa_config_validate(cfg) == TPA_OK);

  size_t needed = 0;
  REQUIRE(tpa_config_canonical(cfg, nullptr, 0, &needed) == TPA_OK);
  std::string text(needed, '\0');
  char tiny[4];
  CHECK(tpa_config_canonical(cfg, tiny, sizeof tiny, &needed) ==
        TPA_ERR_BUFFER_TOO_SMALL);
  REQUIRE(tpa_config_canonical(cfg, text.data(), text.size(), &needed) ==
          TPA_OK);
  CHECK(text.find("n_max = 1500") != std::string::npos);

  tpa_run_summary a{}, b{};
  REQUIRE(tpa_simulate(cfg, 2, nullptr, &a) == TPA_OK);
  REQUIRE(tpa_simulate(cfg, 2, nullptr, &b) == TPA_OK);
  CHECK(a.final_product == b.final_product);
  CHECK(a.final_product > 0.0);

  REQUIRE(tpa_run_experiment(cfg) == TPA_OK);
  int ok = 0;
  REQUIRE(tpa_verify_manifest((dir / "manifest.json").c_str(), &ok) == TPA_OK);
  CHECK(ok == 1);

  // Named experiments: defaults first, then the caller's keys.
  REQUIRE(tpa_run_named_experiment("trajectories", cfg) == TPA_OK);
  CHECK(fs::exists(dir / "trajectories" / "contours.csv"));
  CHECK(tpa_run_named_experiment("fig_none", cfg) == TPA_ERR_INVALID_ARGUMENT);
  tpa_config_destroy(cfg);
  fs::remove_all(dir);
}

TEST_CASE("check suite through the C API") {
  size_t needed = 0, failures = 99;
  REQUIRE(tpa_check_suite("lemma_max", 1, 1, nullptr, 0, &needed,
                          &failures) == TPA_OK);
  CHECK(failures == 0);
  std::string csv(needed, '\0');
  REQUIRE(tpa_check_suite("lemma_max", 1, 1, csv.data(), csv.size(), &needed,
                          &failures) == TPA_OK);
  CHECK(csv.rfind("check_name,instance,lhs,rhs,abs_err", 0) == 0);
  CHECK(tpa_check_suite("nope", 1, 0, nullptr, 0, &needed, &failures) ==
        TPA_ERR_INVALID_ARGUMENT);
}
