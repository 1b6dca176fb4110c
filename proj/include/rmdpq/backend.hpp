// Copyright 2026 The rmdpq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RMDPQ_BACKEND_HPP_
#define RMDPQ_BACKEND_HPP_

#include <cmath>
#include <cstdint>

#include "rmdpq/rational.hpp"

namespace rmdpq {

// Decision backend for the feasibility primitives. Quantities are always
// computed exactly; in float mode the final comparisons treat |x| <= eps as
// zero, in exact mode no rounding happens anywhere.
struct FeasibilityBackend {
  enum class Mode { kExact, kFloat };

  Mode mode = Mode::kExact;
  double tolerance = 1e-9;

  static FeasibilityBackend exact() { return FeasibilityBackend{}; }
  static FeasibilityBackend with_float(double eps = 1e-9) {
    return FeasibilityBackend{Mode::kFloat, eps};
  }

  // Three-way comparison of a against b under the mode's zero test.
  int compare(const Rational& a, const Rational& b) const {
    if (mode == Mode::kExact) {
      if (a < b) return -1;
      return a == b ? 0 : 1;
    }
    const double d = (a - b).to_double();
    if (std::fabs(d) <= tolerance) return 0;
    return d < 0 ? -1 : 1;
  }

  bool leq(const Rational& a, const Rational& b) const { return compare(a, b) <= 0; }
  bool is_positive(const Rational& v) const { return compare(v, Rational(0)) > 0; }
  bool is_zero(const Rational& v) const { return compare(v, Rational(0)) == 0; }
};

// Call counters for the complexity-bound assertions. The force counters
// track the one-step force oracles; the remaining ones track the per-family
// feasibility primitives they decompose into.
struct OracleStats {
  std::uint64_t force_agent_calls = 0;
  std::uint64_t force_env_calls = 0;
  std::uint64_t face_feasible_calls = 0;
  std::uint64_t can_hit_calls = 0;
  std::uint64_t lp_solves = 0;

  std::uint64_t force_calls() const { return force_agent_calls + force_env_calls; }

  OracleStats& operator+=(const OracleStats& o) {
    force_agent_calls += o.force_agent_calls;
    force_env_calls += o.force_env_calls;
    face_feasible_calls += o.face_feasible_calls;
    can_hit_calls += o.can_hit_calls;
    lp_solves += o.lp_solves;
    return *this;
  }
};

}  // namespace rmdpq

#endif  // RMDPQ_BACKEND_HPP_
