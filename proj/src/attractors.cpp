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

#include "rmdpq/attractors.hpp"

#include <stdexcept>

#include "rmdpq/oracles.hpp"

namespace rmdpq {

namespace {

void require_live_subset(const Rmdp& model, const StateSet& set) {
  if (set.universe() != model.n_states())
    throw std::invalid_argument("pattr: target universe mismatch");
  for (StateId s : set.elements())
    if (!model.is_live(s))
      throw std::invalid_argument("pattr: target state not live");
}

AttractorResult attractor(const Rmdp& model, const StateSet& target,
                          bool agent_side, const FeasibilityBackend& backend,
                          OracleStats* accumulate) {
  require_live_subset(model, target);
  const std::size_t n = model.n_states();
  const std::size_t n_live = model.live_count();

  AttractorResult result;
  result.states = target;
  result.rank.assign(n, -1);
  for (StateId s : target.elements()) result.rank[s] = 0;

  // A layer extension can only change force(s, ·) when it touches some face
  // of s, so track face membership to skip unaffected states in later rounds.
  std::vector<std::vector<StateId>> touched_by(n);
  for (StateId s = 0; s < n; ++s) {
    if (!model.alive[s] || target.contains(s)) continue;
    StateSet seen(n);
    for (const auto& action : model.menus[s]) {
      if (!action.alive) continue;
      for (StateId t : action.face) {
        if (!seen.contains(t)) {
          seen.insert(t);
          touched_by[t].push_back(s);
        }
      }
    }
  }

  std::vector<StateId> to_check;
  for (StateId s = 0; s < n; ++s)
    if (model.alive[s] && !target.contains(s)) to_check.push_back(s);

  int round = 0;
  while (!to_check.empty()) {
    ++round;
    const StateSet snapshot = result.states;  // layer T_{i-1}
    std::vector<StateId> added;
    for (StateId s : to_check) {
      if (result.states.contains(s)) continue;
      bool in;
      if (agent_side) {
        const auto choice =
            force_agent_choice(model, s, snapshot, backend, &result.stats);
        in = choice.has_value();
        if (in) result.witness.choice[s] = *choice;
      } else {
        in = force_env(model, s, snapshot, backend, &result.stats);
      }
      if (in) {
        result.states.insert(s);
        result.rank[s] = round;
        added.push_back(s);
      }
    }
    if (added.empty()) break;
    StateSet next(n);
    for (StateId t : added)
      for (StateId s : touched_by[t])
        if (!result.states.contains(s)) next.insert(s);
    to_check = next.elements();
  }

  if (result.stats.force_calls() > n_live * n_live + n_live)
    throw std::logic_error("pattr: oracle budget |S|^2+|S| exceeded");
  if (accumulate) *accumulate += result.stats;
  return result;
}

}  // namespace

AttractorResult pattr_agent(const Rmdp& model, const StateSet& target,
                            const FeasibilityBackend& backend,
                            OracleStats* accumulate) {
  return attractor(model, target, /*agent_side=*/true, backend, accumulate);
}

AttractorResult pattr_env(const Rmdp& model, const StateSet& target,
                          const FeasibilityBackend& backend,
                          OracleStats* accumulate) {
  return attractor(model, target, /*agent_side=*/false, backend, accumulate);
}

}  // namespace rmdpq
