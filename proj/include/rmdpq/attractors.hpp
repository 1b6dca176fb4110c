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

#ifndef RMDPQ_ATTRACTORS_HPP_
#define RMDPQ_ATTRACTORS_HPP_

#include "rmdpq/backend.hpp"
#include "rmdpq/model.hpp"

namespace rmdpq {

struct AttractorResult {
  StateSet states;
  std::vector<int> rank;     // step index of entry; -1 outside, 0 on targets
  MemorylessPolicy witness;  // agent variant: forcing action per non-target member
  OracleStats stats;
};

// Least fixpoint of T_i = T_{i-1} ∪ {s | force_agent(s, T_{i-1})}, with the
// layered loop as the reference implementation: every round re-examines the
// remaining states against the previous layer, skipping states whose
// successor faces the last layer did not touch (the force predicates depend
// only on face ∩ T). Ranks index the layer of entry and the witness picks
// the lowest forcing action, so results are bit-for-bit deterministic.
// Throws std::logic_error if the run exceeds |S|^2+|S| force calls.
AttractorResult pattr_agent(const Rmdp& model, const StateSet& target,
                            const FeasibilityBackend& backend = {},
                            OracleStats* accumulate = nullptr);

// Environment dual, using force_env; no witness policy (environment
// witnesses are distributions, not actions).
AttractorResult pattr_env(const Rmdp& model, const StateSet& target,
                          const FeasibilityBackend& backend = {},
                          OracleStats* accumulate = nullptr);

}  // namespace rmdpq

#endif  // RMDPQ_ATTRACTORS_HPP_
