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

#include "rmdpq/reference_oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace rmdpq {

SupportGame reduce(const Rmdp& model, std::size_t support_cap,
                   const FeasibilityBackend& backend) {
  if (support_cap > 20)
    throw std::invalid_argument("reduce: support cap too large");
  SupportGame game;
  game.n_source_states = model.n_states();
  game.state_node.assign(model.n_states(), 0);

  for (StateId s = 0; s < model.n_states(); ++s) {
    if (!model.alive[s]) continue;
    SupportGame::Node agent;
    agent.owner = SupportGame::Owner::kAgent;
    agent.origin = s;
    agent.priority =
        model.priorities ? model.priorities->value[s] : 0;
    game.state_node[s] = static_cast<std::uint32_t>(game.nodes.size());
    game.nodes.push_back(std::move(agent));
  }

  for (StateId s = 0; s < model.n_states(); ++s) {
    if (!model.alive[s]) continue;
    for (const auto& action : model.menus[s]) {
      if (!action.alive) continue;
      const auto supports = achievable_supports(action.entry, action.face,
                                                support_cap, backend);
      if (supports.empty()) continue;  // infeasible face, action unusable

      SupportGame::Node env;
      env.owner = SupportGame::Owner::kEnv;
      env.origin = s;
      const auto env_index = static_cast<std::uint32_t>(game.nodes.size());
      game.nodes.push_back(std::move(env));

      for (const auto& support : supports) {
        SupportGame::Node random;
        random.owner = SupportGame::Owner::kRandom;
        random.origin = s;
        random.support = support;
        for (StateId t : support)
          random.moves.push_back(game.state_node[t]);
        const auto random_index = static_cast<std::uint32_t>(game.nodes.size());
        game.nodes.push_back(std::move(random));
        game.nodes[env_index].moves.push_back(random_index);
      }
      game.nodes[game.state_node[s]].moves.push_back(env_index);
    }
  }
  return game;
}

namespace {

using NodeMask = std::vector<bool>;

// Positive attractor over the explicit game. The side owning a node picks a
// move into the attractor if one exists; the opposing side must have every
// remaining move inside (vacuously so when it is stuck); chance needs one
// positive-probability edge.
NodeMask game_attractor(const SupportGame& game, const NodeMask& alive,
                        const NodeMask& base, bool for_agent) {
  NodeMask in(game.nodes.size(), false);
  for (std::size_t v = 0; v < game.nodes.size(); ++v)
    if (alive[v] && base[v]) in[v] = true;

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < game.nodes.size(); ++v) {
      if (!alive[v] || in[v]) continue;
      const auto& node = game.nodes[v];
      bool join;
      const bool owner_attracting =
          node.owner == SupportGame::Owner::kRandom ||
          (node.owner == SupportGame::Owner::kAgent) == for_agent;
      if (owner_attracting) {
        join = false;
        for (auto m : node.moves)
          if (alive[m] && in[m]) {
            join = true;
            break;
          }
      } else {
        join = true;
        for (auto m : node.moves)
          if (alive[m] && !in[m]) {
            join = false;
            break;
          }
      }
      if (join) {
        in[v] = true;
        changed = true;
      }
    }
  }
  return in;
}

StateSet agent_states(const SupportGame& game, const NodeMask& mask) {
  StateSet out(game.n_source_states);
  for (std::size_t v = 0; v < game.nodes.size(); ++v)
    if (mask[v] && game.nodes[v].owner == SupportGame::Owner::kAgent)
      out.insert(game.nodes[v].origin);
  return out;
}

StateSet live_states(const SupportGame& game, const NodeMask& alive) {
  return agent_states(game, alive);
}

NodeMask base_of_states(const SupportGame& game, const NodeMask& alive,
                        const StateSet& states) {
  NodeMask base(game.nodes.size(), false);
  for (std::size_t v = 0; v < game.nodes.size(); ++v)
    if (alive[v] && game.nodes[v].owner == SupportGame::Owner::kAgent &&
        states.contains(game.nodes[v].origin))
      base[v] = true;
  return base;
}

// Mirrors M \ Z on the game: states of Z disappear, an action disappears as
// soon as any of its remaining supports could hit Z. Actions are decided
// first, against the pre-removal liveness of their supports: a support
// pruned by an earlier restriction is outside the conditioned set and does
// not count against the action.
NodeMask game_remove(const SupportGame& game, NodeMask alive,
                     const StateSet& zap) {
  for (std::size_t v = 0; v < game.nodes.size(); ++v) {
    if (!alive[v] || game.nodes[v].owner != SupportGame::Owner::kEnv) continue;
    if (zap.contains(game.nodes[v].origin)) {
      alive[v] = false;
      continue;
    }
    for (auto m : game.nodes[v].moves) {
      if (!alive[m]) continue;
      for (StateId t : game.nodes[m].support) {
        if (zap.contains(t)) {
          alive[v] = false;
          break;
        }
      }
      if (!alive[v]) break;
    }
  }
  for (std::size_t v = 0; v < game.nodes.size(); ++v) {
    if (!alive[v]) continue;
    const auto& node = game.nodes[v];
    if (node.owner == SupportGame::Owner::kAgent) {
      if (zap.contains(node.origin)) alive[v] = false;
    } else if (node.owner == SupportGame::Owner::kRandom) {
      for (StateId t : node.support)
        if (zap.contains(t)) {
          alive[v] = false;
          break;
        }
    }
  }
  return alive;
}

// Mirrors M|_B: only supports fully inside B survive; an action with none
// disappears.
NodeMask game_restrict(const SupportGame& game, NodeMask alive,
                       const StateSet& keep) {
  for (std::size_t v = 0; v < game.nodes.size(); ++v) {
    if (!alive[v]) continue;
    const auto& node = game.nodes[v];
    if (node.owner == SupportGame::Owner::kAgent) {
      if (!keep.contains(node.origin)) alive[v] = false;
    } else if (node.owner == SupportGame::Owner::kRandom) {
      for (StateId t : node.support)
        if (!keep.contains(t)) {
          alive[v] = false;
          break;
        }
    }
  }
  for (std::size_t v = 0; v < game.nodes.size(); ++v) {
    if (!alive[v] || game.nodes[v].owner != SupportGame::Owner::kEnv) continue;
    if (!keep.contains(game.nodes[v].origin)) {
      alive[v] = false;
      continue;
    }
    bool any_child = false;
    for (auto m : game.nodes[v].moves)
      if (alive[m]) {
        any_child = true;
        break;
      }
    if (!any_child) alive[v] = false;
  }
  return alive;
}

int game_max_priority(const SupportGame& game, const NodeMask& alive,
                      const PriorityFunction& priorities) {
  int d = 0;
  for (std::size_t v = 0; v < game.nodes.size(); ++v)
    if (alive[v] && game.nodes[v].owner == SupportGame::Owner::kAgent)
      d = std::max(d, priorities.value[game.nodes[v].origin]);
  return d;
}

StateSet gparity_env(const SupportGame& game, NodeMask alive, int level,
                     const PriorityFunction& priorities);

StateSet gparity_agent(const SupportGame& game, NodeMask alive, int level,
                       const PriorityFunction& priorities) {
  if (level < 0 || live_states(game, alive).empty())
    return StateSet(game.n_source_states);
  if (level % 2 != 0) ++level;

  for (;;) {
    StateSet top(game.n_source_states);
    for (StateId s : live_states(game, alive).elements())
      if (priorities.value[s] == level) top.insert(s);

    const NodeMask attr = game_attractor(
        game, alive, base_of_states(game, alive, top), /*for_agent=*/true);
    const StateSet outside =
        live_states(game, alive).set_minus(agent_states(game, attr));
    const NodeMask restricted = game_restrict(game, alive, outside);
    const StateSet w_env =
        gparity_env(game, restricted, level - 1, priorities);
    const NodeMask grab = game_attractor(
        game, alive, base_of_states(game, alive, w_env), /*for_agent=*/false);
    const StateSet grab_states = agent_states(game, grab);

    if (w_env.empty() && grab_states.empty()) return live_states(game, alive);
    alive = game_remove(game, std::move(alive), grab_states);
  }
}

StateSet gparity_env(const SupportGame& game, NodeMask alive, int level,
                     const PriorityFunction& priorities) {
  if (level < 0 || live_states(game, alive).empty())
    return StateSet(game.n_source_states);
  if (level % 2 == 0) ++level;

  for (;;) {
    StateSet top(game.n_source_states);
    for (StateId s : live_states(game, alive).elements())
      if (priorities.value[s] == level) top.insert(s);

    const NodeMask attr = game_attractor(
        game, alive, base_of_states(game, alive, top), /*for_agent=*/false);
    // Removal-style confinement: actions with any support touching the
    // environment attractor are dropped, since the environment would use
    // them to leak toward the odd priorities.
    const NodeMask confined =
        game_remove(game, alive, agent_states(game, attr));
    const StateSet w_agent =
        gparity_agent(game, confined, level - 1, priorities);
    const NodeMask grab = game_attractor(
        game, alive, base_of_states(game, alive, w_agent), /*for_agent=*/true);
    const StateSet grab_states = agent_states(game, grab);

    if (w_agent.empty() && grab_states.empty()) return live_states(game, alive);
    alive = game_remove(game, std::move(alive), grab_states);
  }
}

}  // namespace

StateSet game_as_reach(const SupportGame& input, const StateSet& target) {
  // Reaching the target is decided on arrival; pin the target absorbing.
  SupportGame game = input;
  for (StateId t : target.elements()) {
    auto& node = game.nodes[game.state_node[t]];
    node.moves.assign(1, game.state_node[t]);
  }

  NodeMask alive(game.nodes.size(), true);
  for (;;) {
    const NodeMask attr = game_attractor(
        game, alive, base_of_states(game, alive, target), /*for_agent=*/true);
    const StateSet blocked =
        live_states(game, alive).set_minus(agent_states(game, attr));
    if (blocked.empty()) return live_states(game, alive);
    const NodeMask grab = game_attractor(
        game, alive, base_of_states(game, alive, blocked), /*for_agent=*/false);
    alive = game_remove(game, std::move(alive), agent_states(game, grab));
  }
}

StateSet game_as_parity(const SupportGame& game,
                        const PriorityFunction& priorities) {
  NodeMask alive(game.nodes.size(), true);
  const int d = game_max_priority(game, alive, priorities);
  return gparity_agent(game, std::move(alive), d, priorities);
}

}  // namespace rmdpq
