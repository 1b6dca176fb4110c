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

#include "rmdpq/solvers.hpp"

#include <algorithm>
#include <stdexcept>

#include "rmdpq/oracles.hpp"

namespace rmdpq {

namespace {

void require_live_subset(const Rmdp& model, const StateSet& set,
                         const char* op) {
  if (set.universe() != model.n_states())
    throw std::invalid_argument(std::string(op) + ": universe mismatch");
  for (StateId s : set.elements())
    if (!model.is_live(s))
      throw std::invalid_argument(std::string(op) +
                                  ": target contains a non-live state");
}

// Replaces the menus of the target states by one deterministic self-loop.
// Reaching T is decided at the first visit, so the literal removal loop must
// never sweep a target state out; pinning T absorbing realizes that without
// special cases. The synthetic action never leaks into reported policies.
Rmdp pin_absorbing(const Rmdp& model, const StateSet& target) {
  Rmdp out = model;
  for (StateId t : target.elements()) {
    ActionEntry stay;
    stay.name = "__stay";
    stay.entry.tmpl.successors = {t};
    stay.entry.tmpl.center = {Rational(1)};
    stay.entry.family = LBall{LNorm::p(1), Rational(0)};
    stay.entry.support_restricted = false;
    stay.face = {t};
    stay.alive = true;
    out.menus[t].clear();
    out.menus[t].push_back(std::move(stay));
  }
  return out;
}

std::uint64_t cube(std::uint64_t v) { return v * v * v; }

std::uint64_t pow_u64_saturating(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

int max_live_priority(const Rmdp& model, const PriorityFunction& priorities) {
  int d = 0;
  for (StateId s = 0; s < model.n_states(); ++s)
    if (model.alive[s]) d = std::max(d, priorities.value[s]);
  return d;
}

StateSet priority_states(const Rmdp& model, const PriorityFunction& priorities,
                         int level) {
  StateSet out(model.n_states());
  for (StateId s = 0; s < model.n_states(); ++s)
    if (model.alive[s] && priorities.value[s] == level) out.insert(s);
  return out;
}

void require_priorities(const Rmdp& model, const PriorityFunction& priorities) {
  if (priorities.value.size() != model.n_states())
    throw std::invalid_argument("parity: priority table size mismatch");
  for (StateId s = 0; s < model.n_states(); ++s)
    if (model.alive[s] && priorities.value[s] < 0)
      throw std::invalid_argument("parity: negative priority");
}

// Internal result of one recursion level. For agent levels the policy covers
// the winning states; for environment levels it covers the complement (the
// agent's pieces collected while the environment's removals unravel).
struct LevelResult {
  StateSet winning;
  std::map<StateId, ActionId> agent_policy;
};

struct ParityContext {
  const PriorityFunction& priorities;
  const SolveOptions& opts;
  OracleStats* stats;
  std::size_t* iterations;           // top-level loop entries
  std::vector<StateSet>* trace;      // top-level removals
};

LevelResult solve_parity_env(const Rmdp& model, int level, ParityContext& ctx,
                             int depth);

// One level of the agent recursion: peel the environment's winning regions
// of the restricted sub-RMDP until both the recursive call and the final
// stuck-state sweep remove nothing.
LevelResult solve_parity_agent(const Rmdp& model, int level, ParityContext& ctx,
                               int depth) {
  LevelResult out;
  out.winning = StateSet(model.n_states());
  if (model.live_count() == 0 || level < 0) return out;
  if (level % 2 != 0) ++level;

  Rmdp current = model;
  for (;;) {
    ctx.opts.check_deadline();
    if (depth == 0 && ctx.iterations) ++*ctx.iterations;

    const StateSet top = priority_states(current, ctx.priorities, level);
    const AttractorResult attr =
        pattr_agent(current, top, ctx.opts.backend, ctx.stats);
    const StateSet outside = current.live().set_minus(attr.states);
    const Rmdp restricted =
        restrict_to(current, outside, ctx.opts.backend, ctx.stats);
    const LevelResult env =
        solve_parity_env(restricted, level - 1, ctx, depth + 1);
    const AttractorResult grab =
        pattr_env(current, env.winning, ctx.opts.backend, ctx.stats);

    if (env.winning.empty() && grab.states.empty()) {
      // Fixpoint: assemble the pure memoryless policy of the survivors.
      out.winning = current.live();
      for (StateId s : attr.states.elements()) {
        if (top.contains(s)) {
          const auto stay = current.first_admissible(s);
          if (!stay)
            throw std::logic_error("parity: winning state without actions");
          out.agent_policy.emplace(s, *stay);
        } else {
          out.agent_policy.emplace(s, attr.witness.choice.at(s));
        }
      }
      for (const auto& [s, a] : env.agent_policy) out.agent_policy.emplace(s, a);
      return out;
    }

    if (depth == 0 && ctx.trace) ctx.trace->push_back(grab.states);
    current = remove_states(current, grab.states, ctx.opts.backend, ctx.stats);
  }
}

LevelResult solve_parity_env(const Rmdp& model, int level, ParityContext& ctx,
                             int depth) {
  LevelResult out;
  out.winning = StateSet(model.n_states());
  if (model.live_count() == 0 || level < 0) return out;
  if (level % 2 == 0) ++level;

  Rmdp current = model;
  for (;;) {
    ctx.opts.check_deadline();
    if (depth == 0 && ctx.iterations) ++*ctx.iterations;

    const StateSet top = priority_states(current, ctx.priorities, level);
    const AttractorResult attr =
        pattr_env(current, top, ctx.opts.backend, ctx.stats);
    // The agent must be confined by removal, not by conditioning: an agent
    // action that merely can stay outside the attractor still lets the
    // environment leak mass toward the odd-priority states, and the
    // environment, who owns the distribution choice, will not honour a
    // delta[B] = 1 promise. Removal keeps exactly the actions that cannot
    // leak, whose faces stay genuine.
    const Rmdp confined =
        remove_states(current, attr.states, ctx.opts.backend, ctx.stats);
    const LevelResult agent =
        solve_parity_agent(confined, level - 1, ctx, depth + 1);
    const AttractorResult grab =
        pattr_agent(current, agent.winning, ctx.opts.backend, ctx.stats);

    // Record the agent's winning pieces: the sub-policy on the recursive
    // winning set and the attractor witness pulling toward it.
    for (const auto& [s, a] : agent.agent_policy) out.agent_policy.emplace(s, a);
    for (StateId s : grab.states.elements())
      if (!agent.winning.contains(s))
        out.agent_policy.emplace(s, grab.witness.choice.at(s));

    if (agent.winning.empty() && grab.states.empty()) {
      out.winning = current.live();
      return out;
    }

    if (depth == 0 && ctx.trace) ctx.trace->push_back(grab.states);
    current = remove_states(current, grab.states, ctx.opts.backend, ctx.stats);
  }
}

// Efficient (quasi-polynomial) variants: identical loops with output-size
// budgets halved on the recursive calls, in the three-phase shape of the
// bounded Zielonka recursion. Winning sets only.
StateSet eff_parity_env(const Rmdp& model, int level, std::size_t ms_env,
                        std::size_t ms_agent, ParityContext& ctx);

StateSet eff_parity_agent(const Rmdp& model, int level, std::size_t ms_agent,
                          std::size_t ms_env, ParityContext& ctx) {
  if (model.live_count() == 0 || ms_agent == 0 || level < 0)
    return StateSet(model.n_states());
  if (level % 2 != 0) ++level;

  Rmdp current = model;
  const auto step = [&](std::size_t env_budget) {
    ctx.opts.check_deadline();
    const StateSet top = priority_states(current, ctx.priorities, level);
    const AttractorResult attr =
        pattr_agent(current, top, ctx.opts.backend, ctx.stats);
    const StateSet outside = current.live().set_minus(attr.states);
    const Rmdp restricted =
        restrict_to(current, outside, ctx.opts.backend, ctx.stats);
    const StateSet w_env =
        eff_parity_env(restricted, level - 1, env_budget, ms_agent, ctx);
    const AttractorResult grab =
        pattr_env(current, w_env, ctx.opts.backend, ctx.stats);
    const bool done = w_env.empty() && grab.states.empty();
    if (!done)
      current = remove_states(current, grab.states, ctx.opts.backend, ctx.stats);
    return done;
  };

  // Peel environment winning sets of size at most floor(ms_env / 2), allow
  // one full-budget removal, then peel small sets again.
  while (!step(ms_env / 2)) {
  }
  step(ms_env);
  while (!step(ms_env / 2)) {
  }
  return current.live();
}

StateSet eff_parity_env(const Rmdp& model, int level, std::size_t ms_env,
                        std::size_t ms_agent, ParityContext& ctx) {
  if (model.live_count() == 0 || ms_env == 0 || level < 0)
    return StateSet(model.n_states());
  if (level % 2 == 0) ++level;

  Rmdp current = model;
  const auto step = [&](std::size_t agent_budget) {
    ctx.opts.check_deadline();
    const StateSet top = priority_states(current, ctx.priorities, level);
    const AttractorResult attr =
        pattr_env(current, top, ctx.opts.backend, ctx.stats);
    // Confinement by removal, as in the plain environment recursion.
    const Rmdp confined =
        remove_states(current, attr.states, ctx.opts.backend, ctx.stats);
    const StateSet w_agent =
        eff_parity_agent(confined, level - 1, agent_budget, ms_env, ctx);
    const AttractorResult grab =
        pattr_agent(current, w_agent, ctx.opts.backend, ctx.stats);
    const bool done = w_agent.empty() && grab.states.empty();
    if (!done)
      current = remove_states(current, grab.states, ctx.opts.backend, ctx.stats);
    return done;
  };

  while (!step(ms_agent / 2)) {
  }
  step(ms_agent);
  while (!step(ms_agent / 2)) {
  }
  return current.live();
}

}  // namespace

SolveResult as_reach(const Rmdp& model, const StateSet& target,
                     const SolveOptions& opts) {
  require_live_subset(model, target, "as_reach");
  const std::size_t n_live = model.live_count();

  SolveResult result;
  Rmdp current = pin_absorbing(model, target);

  for (;;) {
    opts.check_deadline();
    ++result.iterations;
    const AttractorResult attr =
        pattr_agent(current, target, opts.backend, &result.stats);
    const StateSet blocked = current.live().set_minus(attr.states);
    if (blocked.empty()) {
      result.winning = current.live();
      // Rank-decreasing witness toward T; target states take their lowest
      // action of the original model, when one exists.
      result.policy = attr.witness;
      for (StateId t : target.elements()) {
        const auto a = model.first_admissible(t);
        if (a) result.policy.choice[t] = *a;
      }
      break;
    }
    const AttractorResult grab =
        pattr_env(current, blocked, opts.backend, &result.stats);
    result.trace.push_back(grab.states);
    current = remove_states(current, grab.states, opts.backend, &result.stats);
  }

  if (result.stats.force_calls() > 2 * cube(n_live))
    throw std::logic_error("as_reach: oracle budget 2|S|^3 exceeded");
  return result;
}

namespace {

// Winning set of the induced model when `policy` is pinned at its domain.
StateSet pinned_winning(const Rmdp& model, const MemorylessPolicy& policy,
                        const PriorityFunction& priorities, ParityContext& ctx) {
  Rmdp pinned = model;
  for (const auto& [s, a] : policy.choice)
    for (ActionId other = 0; other < pinned.menus[s].size(); ++other)
      pinned.menus[s][other].alive = (other == a);
  const int d = max_live_priority(pinned, priorities);
  return solve_parity_agent(pinned, d, ctx, 1).winning;
}

// The recursive assembly can pick a witness that is forcing only under a
// restriction's conditioning, which the real environment ignores. When the
// assembled policy fails its pinned re-solve, rebuild it state by state:
// pinning an action is kept iff the winning set survives, and a pure
// memoryless winning policy of the pinned model always provides one.
MemorylessPolicy repair_policy(const Rmdp& model, const StateSet& winning,
                               const PriorityFunction& priorities,
                               ParityContext& ctx) {
  MemorylessPolicy policy;
  Rmdp pinned = model;
  for (StateId s : winning.elements()) {
    bool fixed = false;
    for (ActionId a = 0; a < pinned.menus[s].size() && !fixed; ++a) {
      if (!model.menus[s][a].alive) continue;
      Rmdp trial = pinned;
      for (ActionId other = 0; other < trial.menus[s].size(); ++other)
        trial.menus[s][other].alive = (other == a);
      const int d = max_live_priority(trial, priorities);
      if (winning.is_subset_of(solve_parity_agent(trial, d, ctx, 1).winning)) {
        pinned = std::move(trial);
        policy.choice.emplace(s, a);
        fixed = true;
      }
    }
    if (!fixed)
      throw std::logic_error("parity policy repair found no viable action");
  }
  return policy;
}

}  // namespace

SolveResult as_parity_agent(const Rmdp& model,
                            const PriorityFunction& priorities,
                            const SolveOptions& opts) {
  require_priorities(model, priorities);
  const std::size_t n_live = model.live_count();
  const int d = max_live_priority(model, priorities);

  SolveResult result;
  ParityContext ctx{priorities, opts, &result.stats, &result.iterations,
                    &result.trace};
  LevelResult top = solve_parity_agent(model, d, ctx, 0);
  result.winning = std::move(top.winning);
  for (const auto& [s, a] : top.agent_policy)
    if (result.winning.contains(s)) result.policy.choice.emplace(s, a);

  // The budget covers the solving recursion only. The pinned re-solve below
  // that validates (and, if needed, rebuilds) the policy is verification on
  // top of the algorithm and is accounted separately.
  const std::uint64_t budget =
      4 * pow_u64_saturating(n_live, static_cast<unsigned>(d) + 2);
  if (result.stats.force_calls() > budget)
    throw std::logic_error("as_parity_agent: oracle budget 4|S|^(d+2) exceeded");

  if (!result.winning.empty()) {
    ParityContext check_ctx{priorities, opts, &result.policy_check_stats,
                            nullptr, nullptr};
    if (!result.winning.is_subset_of(
            pinned_winning(model, result.policy, priorities, check_ctx)))
      result.policy = repair_policy(model, result.winning, priorities, check_ctx);
  }
  return result;
}

SolveResult as_parity_env(const Rmdp& model, const PriorityFunction& priorities,
                          const SolveOptions& opts) {
  require_priorities(model, priorities);
  const std::size_t n_live = model.live_count();
  const int d = max_live_priority(model, priorities);

  SolveResult result;
  ParityContext ctx{priorities, opts, &result.stats, &result.iterations,
                    &result.trace};
  LevelResult top = solve_parity_env(model, d, ctx, 0);
  result.winning = std::move(top.winning);

  const std::uint64_t budget =
      4 * pow_u64_saturating(n_live, static_cast<unsigned>(d) + 3);
  if (result.stats.force_calls() > budget)
    throw std::logic_error("as_parity_env: oracle budget exceeded");
  return result;
}

SolveResult eff_as_parity_agent(const Rmdp& model,
                                const PriorityFunction& priorities,
                                std::size_t ms_agent, std::size_t ms_env,
                                const SolveOptions& opts) {
  require_priorities(model, priorities);
  const int d = max_live_priority(model, priorities);
  SolveResult result;
  ParityContext ctx{priorities, opts, &result.stats, nullptr, nullptr};
  result.winning = eff_parity_agent(model, d, ms_agent, ms_env, ctx);
  return result;
}

SolveResult eff_as_parity_env(const Rmdp& model,
                              const PriorityFunction& priorities,
                              std::size_t ms_env, std::size_t ms_agent,
                              const SolveOptions& opts) {
  require_priorities(model, priorities);
  const int d = max_live_priority(model, priorities);
  SolveResult result;
  ParityContext ctx{priorities, opts, &result.stats, nullptr, nullptr};
  result.winning = eff_parity_env(model, d, ms_env, ms_agent, ctx);
  return result;
}

namespace {

Rmdp induce(const Rmdp& model, const MemorylessPolicy& policy) {
  Rmdp out = model;
  for (const auto& [s, a] : policy.choice) {
    if (!out.is_live(s) || a >= out.menus[s].size() || !out.menus[s][a].alive)
      throw std::invalid_argument("verify_policy: inadmissible action");
    for (ActionId other = 0; other < out.menus[s].size(); ++other)
      out.menus[s][other].alive = (other == a);
  }
  return out;
}

}  // namespace

bool verify_policy(const Rmdp& model, const MemorylessPolicy& policy,
                   const StateSet& claimed, const StateSet& reach_target,
                   const SolveOptions& opts) {
  const Rmdp induced = induce(model, policy);
  const SolveResult r = as_reach(induced, reach_target, opts);
  return claimed.is_subset_of(r.winning);
}

bool verify_policy(const Rmdp& model, const MemorylessPolicy& policy,
                   const StateSet& claimed, const PriorityFunction& priorities,
                   const SolveOptions& opts) {
  const Rmdp induced = induce(model, policy);
  const SolveResult r = as_parity_agent(induced, priorities, opts);
  return claimed.is_subset_of(r.winning);
}

}  // namespace rmdpq
