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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "rmdpq/oracles.hpp"
#include "rmdpq/prng.hpp"

using namespace rmdpq;
using namespace rmdpq::testing;

namespace {

UncertaintyEntry ball_entry(std::vector<long long> num,
                            std::vector<long long> den, LNorm norm,
                            Rational radius, bool restricted = false) {
  UncertaintyEntry e;
  for (std::size_t i = 0; i < num.size(); ++i) {
    e.tmpl.successors.push_back(static_cast<StateId>(i));
    e.tmpl.center.push_back(Rational(num[i], den[i]));
  }
  e.family = LBall{norm, radius};
  e.support_restricted = restricted;
  return e;
}

std::vector<StateId> ids(std::initializer_list<StateId> list) { return list; }

// The same L1/Linf ball written as an explicit polytope over p (auxiliary
// sign patterns expanded), used to cross-check the closed forms against the
// LP route.
UncertaintyEntry as_polytope(const UncertaintyEntry& ball_based) {
  const auto& ball = std::get<LBall>(ball_based.family);
  const auto& center = ball_based.tmpl.center;
  const std::size_t k = center.size();
  Polytope poly;
  if (ball.norm.infinite) {
    for (std::size_t i = 0; i < k; ++i) {
      PolytopeRow up, down;
      up.coeffs.assign(k, Rational(0));
      down.coeffs.assign(k, Rational(0));
      up.coeffs[i] = Rational(1);
      up.rhs = center[i] + ball.radius;
      down.coeffs[i] = Rational(-1);
      down.rhs = ball.radius - center[i];
      poly.rows.push_back(std::move(up));
      poly.rows.push_back(std::move(down));
    }
  } else {
    REQUIRE(ball.norm.order == 1);
    // |p - c|_1 <= R as 2^k sign-pattern rows.
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      PolytopeRow row;
      Rational offset(0);
      for (std::size_t i = 0; i < k; ++i) {
        const bool plus = mask & (1u << i);
        row.coeffs.push_back(plus ? Rational(1) : Rational(-1));
        offset += (plus ? center[i] : -center[i]);
      }
      row.rhs = ball.radius + offset;
      poly.rows.push_back(std::move(row));
    }
  }
  UncertaintyEntry e = ball_based;
  e.family = std::move(poly);
  return e;
}

}  // namespace

TEST_CASE("running-example face tests") {
  // a@s2: center (1/2, 1/2) over (s3, s5), L2 ball of radius 1/5.
  const auto entry = ball_entry({1, 1}, {2, 2}, LNorm::p(2), Rational(1, 5));

  SUBCASE("avoiding s5 is infeasible: squared distance 1/2 > 1/25") {
    CHECK(lball_face_distance_pow(entry, ids({0})) == Rational(1, 2));
    CHECK_FALSE(face_feasible(entry, ids({0})));
    CHECK_FALSE(face_feasible(entry, ids({1})));
  }

  SUBCASE("the full successor list always carries the center") {
    CHECK(face_feasible(entry, ids({0, 1})));
  }

  SUBCASE("empty face and out-of-domain candidates") {
    CHECK_FALSE(face_feasible(entry, {}));
    CHECK_THROWS_AS(face_feasible(entry, ids({7})), std::invalid_argument);
  }
}

TEST_CASE("L1 face distance is exactly twice the removed mass") {
  const auto entry =
      ball_entry({2, 2, 1}, {5, 5, 5}, LNorm::p(1), Rational(3, 10));
  // Zeroing the third coordinate moves 1/5 of mass: distance 2/5 > 3/10.
  CHECK(lball_face_distance_pow(entry, ids({0, 1})) == Rational(2, 5));
  CHECK_FALSE(face_feasible(entry, ids({0, 1})));

  auto wider = entry;
  std::get<LBall>(wider.family).radius = Rational(2, 5);
  CHECK(face_feasible(wider, ids({0, 1})));

  SUBCASE("brute-force grid confirms both verdicts") {
    CHECK_FALSE(grid_witness(entry, {0, 1}, {}, 40));
    CHECK(grid_witness(wider, {0, 1}, {}, 40));
  }
}

TEST_CASE("running-example hit tests") {
  const auto a_s3 = ball_entry({1, 1}, {2, 2}, LNorm::p(2), Rational(1, 5));

  SUBCASE("a@s3 can hit s4 on the full face") {
    CHECK(can_hit(a_s3, ids({0, 1}), ids({0})));
  }

  SUBCASE("deterministic self-loop cannot hit elsewhere") {
    const auto loop = ball_entry({1}, {1}, LNorm::p(2), Rational(1, 5));
    CHECK_FALSE(can_hit(loop, ids({0}), ids({9})));
  }

  SUBCASE("empty hit set never hits") {
    CHECK_FALSE(can_hit(a_s3, ids({0, 1}), {}));
  }
}

TEST_CASE("boundary-radius hits distinguish slack from touching") {
  // Center (2/5, 2/5, 1/5); face {0, 1} at L1 distance 2/5 exactly.
  const auto tight =
      ball_entry({2, 2, 1}, {5, 5, 5}, LNorm::p(1), Rational(2, 5));
  // On the boundary the freed mass still spreads anywhere on the face.
  CHECK(can_hit(tight, ids({0, 1}), ids({0})));
  CHECK(can_hit(tight, ids({0, 1}), ids({1})));

  // Radius 0: the center is the only member.
  const auto frozen = ball_entry({1, 1, 0}, {2, 2, 1}, LNorm::p(2), Rational(0));
  CHECK(face_feasible(frozen, ids({0, 1})));
  CHECK(can_hit(frozen, ids({0, 1}), ids({0})));
  CHECK_FALSE(can_hit(frozen, ids({0, 1, 2}), ids({2})));
}

TEST_CASE("support expansion needs an unrestricted set") {
  // Center (1, 0) over two successors, radius 1/5.
  for (const LNorm norm : {LNorm::p(1), LNorm::p(2), LNorm::p(3), LNorm::inf()}) {
    const auto open = ball_entry({1, 0}, {1, 1}, norm, Rational(1, 5), false);
    const auto closed = ball_entry({1, 0}, {1, 1}, norm, Rational(1, 5), true);
    CHECK(can_hit(open, ids({0, 1}), ids({1})));
    CHECK_FALSE(can_hit(closed, ids({0, 1}), ids({1})));
    CHECK_FALSE(face_feasible(closed, ids({1})));

    // Constructive witness for the expansion: delta = center + eps(e_1 -
    // e_0) with eps = R/2 has positive mass on the new coordinate and costs
    // 2 eps^d (resp. eps in the max norm), which fits inside radius R.
    const Rational eps = Rational(1, 10);
    const Rational cost =
        norm.infinite ? eps : eps.pow(norm.order) * Rational(2);
    const Rational budget = norm.infinite ? Rational(1, 5)
                                          : Rational(1, 5).pow(norm.order);
    CHECK(cost <= budget);
  }
}

TEST_CASE("finite menus enumerate directly") {
  UncertaintyEntry e;
  e.tmpl.successors = {0, 1, 2};
  e.tmpl.center = {Rational(1, 2), Rational(1, 2), Rational(0)};
  FiniteMenu menu;
  menu.members.push_back({Rational(1, 2), Rational(1, 2), Rational(0)});
  menu.members.push_back({Rational(1), Rational(0), Rational(0)});
  e.family = menu;

  CHECK(face_feasible(e, ids({0})));
  CHECK_FALSE(face_feasible(e, ids({1})));
  CHECK(can_hit(e, ids({0, 1}), ids({1})));
  CHECK_FALSE(can_hit(e, ids({0}), ids({1})));
  CHECK_FALSE(can_hit(e, ids({0, 1, 2}), ids({2})));
}

TEST_CASE("running-example force oracles") {
  const Rmdp m = fig1();
  const auto S = [&](std::initializer_list<const char*> names) {
    std::vector<std::string> v;
    for (const char* n : names) v.push_back(n);
    return set_of(m, v);
  };

  CHECK(force_agent(m, *m.find_state("s1"), S({"s1"})));
  CHECK(force_agent(m, *m.find_state("s2"), S({"s5"})));
  CHECK(force_env(m, *m.find_state("s3"), S({"s4"})));
  CHECK_FALSE(force_env(m, *m.find_state("s1"), S({"s5"})));
  CHECK_FALSE(force_env(m, *m.find_state("s2"), S({"s3"})));
  // Only the self-loop exists at s4: nothing forces out.
  CHECK_FALSE(force_agent(m, *m.find_state("s4"), S({"s5"})));

  SUBCASE("witness is the lowest forcing action") {
    const auto choice = force_agent_choice(m, *m.find_state("s1"), S({"s1"}));
    REQUIRE(choice.has_value());
    CHECK(m.menus[*m.find_state("s1")][*choice].name == "b");
  }
}

TEST_CASE("empty action menus: agent never forces, environment always does") {
  RmdpBuilder b;
  const StateId stuck = b.add_state("stuck");
  const StateId other = b.add_state("other");
  TransitionTemplate loop;
  loop.successors = {other};
  loop.center = {Rational(1)};
  b.add_action(other, "b", std::move(loop), LBall{LNorm::p(1), Rational(0)});
  const Rmdp m = b.build();

  StateSet empty(m.n_states());
  CHECK_FALSE(force_agent(m, stuck, empty));
  CHECK(force_env(m, stuck, empty));
  StateSet target(m.n_states());
  target.insert(other);
  CHECK_FALSE(force_agent(m, stuck, target));
  CHECK(force_env(m, stuck, target));
}

TEST_CASE("achievable supports") {
  SUBCASE("deterministic self-loop") {
    const auto loop = ball_entry({1}, {1}, LNorm::p(2), Rational(1, 5));
    CHECK(achievable_supports(loop, ids({0})) ==
          std::vector<std::vector<StateId>>{{0}});
  }

  SUBCASE("a@s2 admits only the full support") {
    const auto entry = ball_entry({1, 1}, {2, 2}, LNorm::p(2), Rational(1, 5));
    CHECK(achievable_supports(entry, ids({0, 1})) ==
          std::vector<std::vector<StateId>>{{0, 1}});
  }

  SUBCASE("the full simplex achieves every support") {
    UncertaintyEntry e;
    e.tmpl.successors = {0, 1};
    e.tmpl.center = {Rational(1, 2), Rational(1, 2)};
    e.family = Polytope{};
    CHECK(achievable_supports(e, ids({0, 1})) ==
          std::vector<std::vector<StateId>>{{0}, {0, 1}, {1}});
  }

  SUBCASE("cap is enforced") {
    UncertaintyEntry e;
    for (StateId i = 0; i < 6; ++i) {
      e.tmpl.successors.push_back(i);
      e.tmpl.center.push_back(Rational(1, 6));
    }
    e.family = Polytope{};
    CHECK_THROWS_AS(achievable_supports(e, e.tmpl.successors, 4),
                    SupportCapExceeded);
  }
}

TEST_CASE("property: monotonicity in the face and the hit set") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const Rmdp m = random_model(1000 + trial, false);
    for (StateId s = 0; s < m.n_states(); ++s) {
      for (const auto& action : m.menus[s]) {
        if (!action.alive || action.face.size() < 2) continue;
        // Drop a random face element: feasibility may only shrink.
        std::vector<StateId> smaller = action.face;
        smaller.erase(smaller.begin() + rng.below(smaller.size()));
        if (face_feasible(action.entry, smaller))
          CHECK(face_feasible(action.entry, action.face));
        std::vector<StateId> hit_small = {action.face[0]};
        std::vector<StateId> hit_big = {action.face[0], action.face.back()};
        if (can_hit(action.entry, action.face, hit_small))
          CHECK(can_hit(action.entry, action.face, hit_big));
      }
    }
  }
}

TEST_CASE("property: avoid/hit duality per entry") {
  // For every entry and every B ⊆ face: either some member avoids B
  // entirely, or every member hits it (can_hit of the complement face).
  for (int trial = 0; trial < 200; ++trial) {
    const Rmdp m = random_model(2000 + trial, false);
    for (StateId s = 0; s < m.n_states(); ++s) {
      for (const auto& action : m.menus[s]) {
        if (!action.alive) continue;
        const auto& face = action.face;
        std::vector<StateId> b;
        for (std::size_t i = 0; i < face.size(); i += 2) b.push_back(face[i]);
        std::vector<StateId> rest;
        for (StateId t : face)
          if (std::find(b.begin(), b.end(), t) == b.end()) rest.push_back(t);

        const bool avoidable = face_feasible(action.entry, rest);
        const bool must_hit = !avoidable;
        // Sanity: if the whole face is feasible and B is avoidable, some
        // member has zero mass on B; otherwise every member hits B, hence
        // can_hit on the full face is true whenever the face is feasible.
        if (must_hit && face_feasible(action.entry, face))
          CHECK(can_hit(action.entry, face, b));
      }
    }
  }
}

TEST_CASE("property: grid witnesses agree with the ball oracles") {
  // One-sided completeness check on small L_d entries: whenever the dense
  // grid finds a member, the oracle must agree.
  int hits = 0;
  for (int trial = 0; trial < 60; ++trial) {
    SplitMix64 rng(3000 + trial);
    const std::size_t k = 2 + rng.below(2);
    std::vector<long long> num(k), den(k, 4);
    long long left = 4;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      num[i] = static_cast<long long>(rng.below(left + 1));
      left -= num[i];
    }
    num[k - 1] = left;
    static const LNorm kNorms[] = {LNorm::p(1), LNorm::p(2), LNorm::p(3),
                                   LNorm::inf()};
    const LNorm norm = kNorms[rng.below(4)];
    const Rational radius(static_cast<long long>(rng.below(9)), 10);
    const bool restricted = rng.below(2) == 0;
    const auto entry = ball_entry(num, den, norm, radius, restricted);

    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<StateId> cand;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (1u << i)) cand.push_back(static_cast<StateId>(i));
      if (grid_witness(entry, cand, {}, 16)) {
        CHECK(face_feasible(entry, cand));
        ++hits;
      }
      for (StateId h : cand) {
        if (grid_witness(entry, cand, {h}, 16)) {
          CHECK(can_hit(entry, cand, {h}));
          ++hits;
        }
      }
    }
  }
  CHECK(hits > 100);
}

TEST_CASE("property: L1 and Linf closed forms match their polytope LPs") {
  for (int trial = 0; trial < 120; ++trial) {
    SplitMix64 rng(4000 + trial);
    const std::size_t k = 2 + rng.below(2);
    std::vector<long long> num(k), den(k, 6);
    long long left = 6;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      num[i] = static_cast<long long>(rng.below(left + 1));
      left -= num[i];
    }
    num[k - 1] = left;
    const LNorm norm = rng.below(2) ? LNorm::p(1) : LNorm::inf();
    const Rational radius(static_cast<long long>(rng.below(13)), 10);
    const auto ball = ball_entry(num, den, norm, radius);
    const auto poly = as_polytope(ball);

    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<StateId> cand;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (1u << i)) cand.push_back(static_cast<StateId>(i));
      CHECK(face_feasible(ball, cand) == face_feasible(poly, cand));
      for (StateId h : cand)
        CHECK(can_hit(ball, cand, {h}) == can_hit(poly, cand, {h}));
    }
  }
}

TEST_CASE("property: forces agree with finite-menu enumeration") {
  for (std::uint64_t seed = 5000; seed < 5120; ++seed) {
    const Rmdp m = random_model(seed, false);
    const Rmdp menus = discretize_to_menu(m);
    const StateSet b = random_target(m, seed);
    for (StateId s = 0; s < m.n_states(); ++s) {
      if (!m.is_live(s)) continue;
      CHECK(force_agent(m, s, b) == force_agent(menus, s, b));
      CHECK(force_env(m, s, b) == force_env(menus, s, b));
    }
  }
}

TEST_CASE("support-restricted balls: force_env reduces to center support") {
  // On a fresh model (untightened faces) the environment can hit B despite
  // any action iff every action's center puts mass on B.
  for (std::uint64_t seed = 6000; seed < 6100; ++seed) {
    Rmdp m = random_model(seed, false);
    for (StateId s = 0; s < m.n_states(); ++s)
      for (auto& action : m.menus[s]) {
        action.entry.support_restricted = true;
        if (std::get_if<FiniteMenu>(&action.entry.family))
          action.entry.family = LBall{LNorm::p(1), Rational(1, 5)};
        if (std::get_if<Polytope>(&action.entry.family))
          action.entry.family = LBall{LNorm::p(2), Rational(1, 5)};
      }
    const StateSet b = random_target(m, seed);
    for (StateId s = 0; s < m.n_states(); ++s) {
      if (!m.is_live(s) || !m.first_admissible(s)) continue;
      bool all_centers_hit = true;
      for (const auto& action : m.menus[s]) {
        if (!action.alive) continue;
        Rational mass(0);
        const auto& tmpl = action.entry.tmpl;
        for (std::size_t i = 0; i < tmpl.successors.size(); ++i)
          if (b.contains(tmpl.successors[i])) mass += tmpl.center[i];
        if (!mass.is_positive()) all_centers_hit = false;
      }
      CHECK(force_env(m, s, b) == all_centers_hit);
    }
  }
}
