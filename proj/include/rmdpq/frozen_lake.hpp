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

#ifndef RMDPQ_FROZEN_LAKE_HPP_
#define RMDPQ_FROZEN_LAKE_HPP_

#include <cstdint>

#include "rmdpq/model.hpp"

namespace rmdpq {

// Slippery grid benchmark. Cells may be holes (blocked: transition mass into
// them stays in place); an action moves in the intended direction with
// probability 1/3 and in each perpendicular direction with 1/3. Every
// non-absorbing state carries an L_p ball whose radius is drawn uniformly
// from [0, r_max] quantized to millionths, from a splitmix64 stream seeded
// with `seed` (hole draws first, cell radii second, both row-major), so a
// spec maps to one byte-exact model.
struct FrozenLakeSpec {
  unsigned n = 4;                      // grid side, >= 2
  LNorm norm = LNorm::p(1);
  Rational r_max = Rational(1);
  std::uint64_t seed = 1;
  Rational hole_density = Rational(1, 10);  // in [0, 1)
  enum class Objective { kReach, kParity } objective = Objective::kReach;
  bool support_restricted = true;
};

// Reach variant: goal cell (n-1, n-1) absorbing and labelled "target".
// Parity variant: two-mode product of the grid with the alternating
// resource objective (reach the leftmost and the rightmost column in
// alternation forever); priority 2 on states sitting in the currently
// sought column, 1 elsewhere. Throws std::invalid_argument on a bad spec.
Rmdp gen_frozen_lake(const FrozenLakeSpec& spec);

}  // namespace rmdpq

#endif  // RMDPQ_FROZEN_LAKE_HPP_
