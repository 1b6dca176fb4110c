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

#ifndef RMDPQ_REFERENCE_ORACLE_HPP_
#define RMDPQ_REFERENCE_ORACLE_HPP_

#include <cstdint>
#include <vector>

#include "rmdpq/model.hpp"
#include "rmdpq/oracles.hpp"

namespace rmdpq {

// Finite turn-based stochastic game over the achievable supports of a small
// RMDP, used as the independent ground truth for the main solvers. Only the
// realizable supports matter for qualitative analysis, so each environment
// choice resolves to a uniform distribution over one support. This module
// deliberately implements its own attractor recursions over the explicit
// game and never calls into the attractor/solver modules.
struct SupportGame {
  enum class Owner { kAgent, kEnv, kRandom };

  struct Node {
    Owner owner = Owner::kAgent;
    int priority = 0;
    StateId origin = 0;               // original state for agent nodes
    std::vector<StateId> support;     // original states, random nodes only
    std::vector<std::uint32_t> moves; // successor node indices
  };

  std::vector<Node> nodes;
  std::vector<std::uint32_t> state_node;  // original StateId -> agent node
  std::size_t n_source_states = 0;
};

// Builds the game; one env node per admissible (s, a), one random node per
// achievable support of its face. Throws SupportCapExceeded when some face
// exceeds the cap.
SupportGame reduce(const Rmdp& model, std::size_t support_cap = 12,
                   const FeasibilityBackend& backend = {});

// Original states from which the agent wins Reach(target) almost surely in
// the finite game.
StateSet game_as_reach(const SupportGame& game, const StateSet& target);

// Original states from which the agent wins Parity almost surely.
StateSet game_as_parity(const SupportGame& game,
                        const PriorityFunction& priorities);

}  // namespace rmdpq

#endif  // RMDPQ_REFERENCE_ORACLE_HPP_
