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

#ifndef RMDPQ_SIMPLEX_HPP_
#define RMDPQ_SIMPLEX_HPP_

#include <vector>

#include "rmdpq/rational.hpp"

namespace rmdpq {

enum class LpRelation { kLe, kEq };

struct LpConstraint {
  std::vector<Rational> coeffs;
  LpRelation rel = LpRelation::kLe;
  Rational rhs;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Rational objective;
  std::vector<Rational> point;
};

// Maximizes objective·x subject to the constraints and x >= 0, with a
// two-phase textbook simplex over exact rationals. Bland's rule guarantees
// termination; problem sizes here never exceed the successor-domain
// dimension, so no effort is spent on sparsity.
LpResult solve_lp(std::size_t num_vars,
                  const std::vector<LpConstraint>& constraints,
                  const std::vector<Rational>& objective);

}  // namespace rmdpq

#endif  // RMDPQ_SIMPLEX_HPP_
