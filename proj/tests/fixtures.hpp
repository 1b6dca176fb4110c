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

#ifndef RMDPQ_TESTS_FIXTURES_HPP_
#define RMDPQ_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "rmdpq/model.hpp"
#include "rmdpq/oracles.hpp"
#include "rmdpq/prng.hpp"

namespace rmdpq::testing {

// Five-state running example: a chain s1 -> s2 -> s3 feeding the sink s4,
// where action a at s_i splits its mass between the next chain state and s5
// inside an L2 ball of radius 1/5 around (1/2, 1/2), and action b self-loops
// deterministically at s1, s2, s4 and s5. Self-loops carry the same ball;
// over a one-point domain it is the single Dirac either way.
inline Rmdp fig1() {
  RmdpBuilder b;
  const StateId s1 = b.add_state("s1");
  const StateId s2 = b.add_state("s2");
  const StateId s3 = b.add_state("s3");
  const StateId s4 = b.add_state("s4");
  const StateId s5 = b.add_state("s5");

  const LBall ball{LNorm::p(2), Rational(1, 5)};
  const auto chain = [&](StateId from, StateId next) {
    TransitionTemplate t;
    t.successors = {next, s5};
    t.center = {Rational(1, 2), Rational(1, 2)};
    b.add_action(from, "a", std::move(t), ball);
  };
  const auto loop = [&](StateId s) {
    TransitionTemplate t;
    t.successors = {s};
    t.center = {Rational(1)};
    b.add_action(s, "b", std::move(t), ball);
  };

  chain(s1, s2);
  loop(s1);
  chain(s2, s3);
  loop(s2);
  chain(s3, s4);
  loop(s4);
  loop(s5);
  b.add_label("target", s5);
  return b.build();
}

inline std::vector<int> fig1_priorities() {
  // c(s2) = c(s4) = 1, priority 2 elsewhere.
  return {2, 1, 2, 1, 2};
}

// Chain generalization of the running example: k ball-uncertain states
// feeding a goal and a sink; the last chain state has no self-loop escape.
// The removal loop needs exactly k+1 outer iterations on it.
inline Rmdp chain(std::size_t k) {
  RmdpBuilder b;
  std::vector<StateId> cs;
  for (std::size_t i = 1; i <= k; ++i)
    cs.push_back(b.add_state("c" + std::to_string(i)));
  const StateId sink = b.add_state("sink");
  const StateId goal = b.add_state("goal");

  const LBall ball{LNorm::p(2), Rational(1, 5)};
  for (std::size_t i = 0; i < k; ++i) {
    TransitionTemplate t;
    t.successors = {i + 1 < k ? cs[i + 1] : sink, goal};
    t.center = {Rational(1, 2), Rational(1, 2)};
    b.add_action(cs[i], "a", std::move(t), ball);
    if (i + 1 < k) {
      TransitionTemplate stay;
      stay.successors = {cs[i]};
      stay.center = {Rational(1)};
      b.add_action(cs[i], "b", std::move(stay), ball);
    }
  }
  for (StateId s : {sink, goal}) {
    TransitionTemplate stay;
    stay.successors = {s};
    stay.center = {Rational(1)};
    b.add_action(s, "b", std::move(stay), ball);
  }
  b.add_label("target", goal);
  return b.build();
}

inline StateSet set_of(const Rmdp& m, const std::vector<std::string>& names) {
  StateSet out(m.n_states());
  for (const auto& name : names) {
    const auto s = m.find_state(name);
    if (!s) throw std::invalid_argument("fixture: unknown state " + name);
    out.insert(*s);
  }
  return out;
}

inline std::vector<std::string> names_of(const Rmdp& m, const StateSet& set) {
  std::vector<std::string> out;
  for (StateId s : set.elements()) out.push_back(m.state_names[s]);
  return out;
}

// Seeded generator for the equivalence suite: 2..6 states, up to 3 actions
// and 4 successors, all five family kinds in both support modes, an
// occasional empty menu.
inline Rmdp random_model(std::uint64_t seed, bool with_priorities,
                         int max_priority = 3) {
  SplitMix64 rng(seed);
  RmdpBuilder b;
  const std::size_t n = 2 + rng.below(5);
  for (std::size_t s = 0; s < n; ++s) b.add_state("q" + std::to_string(s));

  const auto random_distribution = [&](std::size_t k,
                                       const std::vector<Rational>* pattern) {
    // Weights 0..3 with at least one positive; `pattern` confines the
    // support (for support-restricted finite menus).
    std::vector<long long> w(k, 0);
    long long total = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (pattern && (*pattern)[i].is_zero()) continue;
      w[i] = static_cast<long long>(rng.below(4));
      total += w[i];
    }
    if (total == 0) {
      std::size_t i = 0;
      if (pattern) {
        while ((*pattern)[i].is_zero()) ++i;
      } else {
        i = rng.below(k);
      }
      w[i] = 1;
      total = 1;
    }
    std::vector<Rational> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = Rational(w[i], total);
    return out;
  };

  const bool allow_stuck = rng.below(8) == 0;
  for (StateId s = 0; s < n; ++s) {
    std::size_t n_actions = 1 + rng.below(3);
    if (allow_stuck && s == 0) n_actions = 0;
    for (std::size_t a = 0; a < n_actions; ++a) {
      const std::size_t n_succ = 1 + rng.below(std::min<std::size_t>(4, n));
      std::vector<StateId> succ;
      while (succ.size() < n_succ) {
        const StateId t = static_cast<StateId>(rng.below(n));
        if (std::find(succ.begin(), succ.end(), t) == succ.end())
          succ.push_back(t);
      }
      std::sort(succ.begin(), succ.end());

      TransitionTemplate tmpl;
      tmpl.successors = succ;
      tmpl.center = random_distribution(succ.size(), nullptr);
      const bool restricted = rng.below(2) == 0;

      UncertaintyFamily family;
      static const Rational kRadii[] = {
          Rational(0),      Rational(1, 10), Rational(1, 5), Rational(3, 10),
          Rational(2, 5),   Rational(1, 2),  Rational(4, 5), Rational(1)};
      switch (rng.below(5)) {
        case 0:
          family = LBall{LNorm::p(1), kRadii[rng.below(8)]};
          break;
        case 1:
          family = LBall{LNorm::p(2), kRadii[rng.below(8)]};
          break;
        case 2:
          family = LBall{LNorm::inf(), kRadii[rng.below(8)]};
          break;
        case 3: {
          Polytope poly;
          const std::size_t rows = rng.below(4);
          for (std::size_t r = 0; r < rows; ++r) {
            PolytopeRow row;
            Rational at_center(0);
            for (std::size_t i = 0; i < succ.size(); ++i) {
              const long long c = static_cast<long long>(rng.below(5)) - 2;
              row.coeffs.push_back(Rational(c));
              at_center += row.coeffs.back() * tmpl.center[i];
            }
            if (rng.below(5) == 0) {
              row.rel = Relation::kEq;
              row.rhs = at_center;
            } else {
              row.rel = Relation::kLe;
              static const Rational kSlack[] = {Rational(0), Rational(1, 10),
                                                Rational(1, 2), Rational(1)};
              row.rhs = at_center + kSlack[rng.below(4)];
            }
            poly.rows.push_back(std::move(row));
          }
          family = std::move(poly);
          break;
        }
        default: {
          FiniteMenu menu;
          const std::size_t members = 1 + rng.below(3);
          for (std::size_t k = 0; k < members; ++k)
            menu.members.push_back(random_distribution(
                succ.size(), restricted ? &tmpl.center : nullptr));
          family = std::move(menu);
          break;
        }
      }
      b.add_action(s, "a" + std::to_string(a), std::move(tmpl),
                   std::move(family), restricted);
    }
  }

  if (with_priorities) {
    std::vector<int> priorities(n);
    const int d = 1 + static_cast<int>(rng.below(
                          static_cast<std::uint64_t>(max_priority)));
    for (std::size_t s = 0; s < n; ++s)
      priorities[s] = static_cast<int>(rng.below(static_cast<std::uint64_t>(d) + 1));
    b.set_priorities(std::move(priorities));
  }
  return b.build();
}

inline StateSet random_target(const Rmdp& m, std::uint64_t seed) {
  SplitMix64 rng(seed ^ 0x7a9c0ffeeull);
  StateSet out(m.n_states());
  for (StateId s = 0; s < m.n_states(); ++s)
    if (rng.below(3) == 0) out.insert(s);
  if (out.empty()) out.insert(static_cast<StateId>(rng.below(m.n_states())));
  return out;
}

// Qualitatively equivalent finite-menu discretization: each entry is
// replaced by the uniform distributions over its achievable supports, which
// realize exactly the same supports.
inline Rmdp discretize_to_menu(const Rmdp& model) {
  Rmdp out = model;
  for (StateId s = 0; s < out.n_states(); ++s) {
    if (!out.alive[s]) continue;
    for (auto& action : out.menus[s]) {
      if (!action.alive) continue;
      const auto supports =
          achievable_supports(action.entry, action.face, 12);
      FiniteMenu menu;
      for (const auto& support : supports) {
        std::vector<Rational> member(action.entry.tmpl.successors.size(),
                                     Rational(0));
        for (StateId t : support) {
          const auto it = std::find(action.entry.tmpl.successors.begin(),
                                    action.entry.tmpl.successors.end(), t);
          member[static_cast<std::size_t>(
              it - action.entry.tmpl.successors.begin())] =
              Rational(1, static_cast<long long>(support.size()));
        }
        menu.members.push_back(std::move(member));
      }
      if (menu.members.empty()) {
        action.alive = false;
        continue;
      }
      action.entry.tmpl.center = menu.members.front();
      action.entry.family = std::move(menu);
      action.entry.support_restricted = false;
    }
  }
  return out;
}

// Brute-force witness search over a dense rational grid on the simplex:
// returns true iff some grid point of denominator `denom` lies in the ball,
// has support inside `cand` and (when `hit` is non-empty) positive mass on
// `hit`. One-sided: a found witness proves feasibility.
inline bool grid_witness(const UncertaintyEntry& entry,
                         const std::vector<StateId>& cand,
                         const std::vector<StateId>& hit, long long denom) {
  const auto& tmpl = entry.tmpl;
  const auto& ball = std::get<LBall>(entry.family);
  const std::size_t k = tmpl.successors.size();

  std::vector<bool> in_cand(k, false), in_hit(k, false);
  for (StateId t : cand)
    for (std::size_t i = 0; i < k; ++i)
      if (tmpl.successors[i] == t) in_cand[i] = true;
  for (StateId t : hit)
    for (std::size_t i = 0; i < k; ++i)
      if (tmpl.successors[i] == t) in_hit[i] = true;

  std::vector<long long> units(k, 0);
  const auto member_ok = [&]() {
    std::vector<Rational> p(k);
    for (std::size_t i = 0; i < k; ++i) p[i] = Rational(units[i], denom);
    for (std::size_t i = 0; i < k; ++i) {
      if (!in_cand[i] && !p[i].is_zero()) return false;
      if (entry.support_restricted && tmpl.center[i].is_zero() &&
          !p[i].is_zero())
        return false;
    }
    if (!hit.empty()) {
      Rational mass(0);
      for (std::size_t i = 0; i < k; ++i)
        if (in_hit[i]) mass += p[i];
      if (!mass.is_positive()) return false;
    }
    if (ball.norm.infinite) {
      for (std::size_t i = 0; i < k; ++i)
        if ((p[i] - tmpl.center[i]).abs() > ball.radius) return false;
      return true;
    }
    Rational cost(0);
    for (std::size_t i = 0; i < k; ++i)
      cost += (p[i] - tmpl.center[i]).abs().pow(ball.norm.order);
    return cost <= ball.radius.pow(ball.norm.order);
  };

  // Enumerate compositions of `denom` into k parts.
  const std::function<bool(std::size_t, long long)> rec =
      [&](std::size_t i, long long rest) -> bool {
    if (i + 1 == k) {
      units[i] = rest;
      return member_ok();
    }
    for (long long u = 0; u <= rest; ++u) {
      units[i] = u;
      if (rec(i + 1, rest - u)) return true;
    }
    return false;
  };
  return rec(0, denom);
}

}  // namespace rmdpq::testing

#endif  // RMDPQ_TESTS_FIXTURES_HPP_
