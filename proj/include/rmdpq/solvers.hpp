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

#ifndef RMDPQ_SOLVERS_HPP_
#define RMDPQ_SOLVERS_HPP_

#include <chrono>
#include <optional>
#include <stdexcept>

#include "rmdpq/attractors.hpp"
#include "rmdpq/backend.hpp"
#include "rmdpq/model.hpp"

namespace rmdpq {

class TimeoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolveOptions {
  FeasibilityBackend backend;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  void check_deadline() const {
    if (deadline && std::chrono::steady_clock::now() > *deadline)
      throw TimeoutError("solver deadline exceeded");
  }
};

struct SolveResult {
  StateSet winning;
  MemorylessPolicy policy;       // agent solvers only; empty otherwise
  std::vector<StateSet> trace;   // removed set per outer iteration
  OracleStats stats;             // calls of the solving recursion itself
  OracleStats policy_check_stats;  // pinned re-solve validating the policy
  std::size_t iterations = 0;
};

// Almost-sure reachability: iteratively removes the environment's positive
// attractor of the agent's non-attractor region until every surviving state
// positively attracts to the target. Target states are pinned as absorbing
// for the run, so a state of T is never removed (its value is 1 by
// definition). Returns the value-1 region together with the rank-decreasing
// witness policy. Throws std::invalid_argument when `target` is not a set of
// live states, std::logic_error if the 2|S|^3 force-call budget is exceeded.
SolveResult as_reach(const Rmdp& model, const StateSet& target,
                     const SolveOptions& opts = {});

// Almost-sure parity for the agent (Zielonka-style recursion alternating
// with the environment dual). Requires priorities for every live state.
// The force-call budget 4|S|^(d+2) is asserted per run.
SolveResult as_parity_agent(const Rmdp& model, const PriorityFunction& priorities,
                            const SolveOptions& opts = {});

// Dual solver: states where the environment can make the maximal
// infinitely-often priority odd almost-surely. No agent policy is produced.
SolveResult as_parity_env(const Rmdp& model, const PriorityFunction& priorities,
                          const SolveOptions& opts = {});

// Quasi-polynomial variants with output-size budgets; the top-level call
// with ms_* = |S| computes the same winning set as the plain solvers.
// Winning sets only, no policy extraction.
SolveResult eff_as_parity_agent(const Rmdp& model,
                                const PriorityFunction& priorities,
                                std::size_t ms_agent, std::size_t ms_env,
                                const SolveOptions& opts = {});

SolveResult eff_as_parity_env(const Rmdp& model,
                              const PriorityFunction& priorities,
                              std::size_t ms_env, std::size_t ms_agent,
                              const SolveOptions& opts = {});

// Pins the policy's action at each covered state and re-solves the induced
// model; true iff every claimed state is still winning. Throws
// std::invalid_argument when the policy picks an inadmissible action.
bool verify_policy(const Rmdp& model, const MemorylessPolicy& policy,
                   const StateSet& claimed, const StateSet& reach_target,
                   const SolveOptions& opts = {});

bool verify_policy(const Rmdp& model, const MemorylessPolicy& policy,
                   const StateSet& claimed, const PriorityFunction& priorities,
                   const SolveOptions& opts = {});

}  // namespace rmdpq

#endif  // RMDPQ_SOLVERS_HPP_
