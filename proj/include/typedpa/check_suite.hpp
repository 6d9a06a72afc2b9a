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

#ifndef TYPEDPA_CHECK_SUITE_HPP_
#define TYPEDPA_CHECK_SUITE_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace typedpa {

// One comparison. For identities lhs/rhs are the two sides; for inequality
// batteries the suite documents what the columns hold and sets `pass`.
struct CheckRow {
  std::string check_name;
  std::string instance;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CheckReport {
  std::string suite;
  std::vector<CheckRow> rows;

  bool pass() const;
  std::size_t failures() const;
  void WriteJson(std::ostream& out) const;
  // check_name,instance,lhs,rhs,abs_err
  void WriteCsv(std::ostream& out) const;
};

// drift_identities  enumeration totality and E[M'] = M(1 - 30/g^2 + 56/g^3)
//                   on 10^3 random (shares, gamma in [6, 1e6]), tol 1e-12
// affine            the affine E[M'] for alpha in {-1, -0.5, 0.5, 1, 2}
// field_conservation  27xyz along RK4 paths (T = 100, dt = 0.01, 20 starts),
//                   stationary points, center eigenvalues
// lemma_max         uniform is the strict maximiser of p_nmk on a 0.02 grid,
//                   n, m <= 4, k in {2, 3, 4}; degenerate cases exactly 0 or 1
// visible_type      occupancy law against enumeration and f(y) > 0 on
//                   (0.01, 1/N - 0.01), N in {2..5}, m in {3..6}
std::vector<std::string> CheckSuites();
CheckReport RunCheckSuite(std::string_view name, std::uint64_t seed = 1);

}  // namespace typedpa

#endif  // TYPEDPA_CHECK_SUITE_HPP_
