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

#include "rmdpq/oracles.hpp"

#include <algorithm>
#include <cstddef>

#include "rmdpq/simplex.hpp"

namespace rmdpq {

namespace {

// Positions (indices into the successor domain) of the states in `subset`.
// Throws when `subset` mentions a state outside the domain.
std::vector<std::size_t> domain_positions(const TransitionTemplate& tmpl,
                                          const std::vector<StateId>& subset) {
  std::vector<std::size_t> out;
  out.reserve(subset.size());
  for (StateId s : subset) {
    const auto it =
        std::find(tmpl.successors.begin(), tmpl.successors.end(), s);
    if (it == tmpl.successors.end())
      throw std::invalid_argument(
          "oracle: candidate set is not a subset of the successor domain");
    out.push_back(static_cast<std::size_t>(it - tmpl.successors.begin()));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Drops the positions the support restriction makes unusable.
std::vector<std::size_t> effective_positions(const UncertaintyEntry& entry,
                                             std::vector<std::size_t> pos) {
  if (!entry.support_restricted) return pos;
  std::vector<std::size_t> out;
  out.reserve(pos.size());
  for (std::size_t p : pos)
    if (!entry.tmpl.center[p].is_zero()) out.push_back(p);
  return out;
}

struct LBallFace {
  Rational removed_mass;      // center mass outside the face
  Rational distance_pow;      // sum |delta|^d for finite d
  Rational distance_inf;      // max |delta| for the max norm
  bool infinite_norm = false;
};

// Minimal distance from the center to the face spanned by `keep`, as the
// d-th power for finite orders. Removing the outside mass costs its
// coordinate-wise d-th powers; the freed mass is re-spread over the face by
// water-filling against the per-coordinate cap p <= 1. For a probability
// center the cap can never bind (every face coordinate is at most 1 - c), so
// the fill is the uniform increment c/|keep|; the cap-aware loop is kept as
// the exact definition of the projection.
LBallFace lball_face(const UncertaintyEntry& entry,
                     const std::vector<std::size_t>& keep) {
  const auto& ball = std::get<LBall>(entry.family);
  const auto& center = entry.tmpl.center;
  LBallFace out;
  out.infinite_norm = ball.norm.infinite;

  std::vector<bool> kept(center.size(), false);
  for (std::size_t p : keep) kept[p] = true;

  Rational removed(0);
  Rational removed_pow(0);
  Rational removed_max(0);
  for (std::size_t p = 0; p < center.size(); ++p) {
    if (kept[p]) continue;
    removed += center[p];
    if (!ball.norm.infinite)
      removed_pow += center[p].pow(ball.norm.order);
    else if (center[p] > removed_max)
      removed_max = center[p];
  }
  out.removed_mass = removed;

  // Water level: smallest L with sum min(cap_i, L) = removed mass.
  std::vector<Rational> caps;
  caps.reserve(keep.size());
  for (std::size_t p : keep) caps.push_back(Rational(1) - center[p]);
  std::sort(caps.begin(), caps.end());

  Rational level(0);
  std::vector<Rational> saturated;
  if (removed.is_positive()) {
    Rational rest = removed;
    std::size_t open = caps.size();
    std::size_t i = 0;
    for (; i < caps.size(); ++i) {
      const Rational uniform = rest / Rational(static_cast<long long>(open));
      if (uniform <= caps[i]) {
        level = uniform;
        break;
      }
      saturated.push_back(caps[i]);
      rest -= caps[i];
      --open;
    }
    if (i == caps.size())
      throw std::logic_error("lball_face: face cannot absorb the freed mass");
  }

  if (ball.norm.infinite) {
    out.distance_inf = removed_max > level ? removed_max : level;
  } else {
    Rational fill = removed_pow;
    for (const Rational& c : saturated) fill += c.pow(ball.norm.order);
    const long long open =
        static_cast<long long>(keep.size() - saturated.size());
    fill += level.pow(ball.norm.order) * Rational(open);
    out.distance_pow = fill;
  }
  return out;
}

bool lball_feasible(const UncertaintyEntry& entry,
                    const std::vector<std::size_t>& keep,
                    const FeasibilityBackend& backend) {
  const auto& ball = std::get<LBall>(entry.family);
  const LBallFace f = lball_face(entry, keep);
  if (ball.norm.infinite) return backend.leq(f.distance_inf, ball.radius);
  return backend.leq(f.distance_pow, ball.radius.pow(ball.norm.order));
}

// 0/1 indicator vectors over the successor domain.
std::vector<Rational> indicator(std::size_t n,
                                const std::vector<std::size_t>& pos) {
  std::vector<Rational> v(n, Rational(0));
  for (std::size_t p : pos) v[p] = Rational(1);
  return v;
}

// LP over the polytope members confined to the face spanned by `keep`,
// maximizing the given objective. Variables range over the full domain with
// excluded coordinates pinned to zero.
LpResult polytope_face_lp(const UncertaintyEntry& entry,
                          const std::vector<std::size_t>& keep,
                          const std::vector<Rational>& objective,
                          OracleStats* stats) {
  const auto& poly = std::get<Polytope>(entry.family);
  const std::size_t n = entry.tmpl.successors.size();

  std::vector<LpConstraint> rows;
  rows.push_back({std::vector<Rational>(n, Rational(1)), LpRelation::kEq,
                  Rational(1)});
  std::vector<bool> kept(n, false);
  for (std::size_t p : keep) kept[p] = true;
  for (std::size_t p = 0; p < n; ++p) {
    if (kept[p]) continue;
    std::vector<Rational> c(n, Rational(0));
    c[p] = Rational(1);
    rows.push_back({std::move(c), LpRelation::kEq, Rational(0)});
  }
  for (const auto& row : poly.rows) {
    rows.push_back({row.coeffs,
                    row.rel == Relation::kEq ? LpRelation::kEq : LpRelation::kLe,
                    row.rhs});
  }
  if (entry.support_restricted) {
    for (std::size_t p = 0; p < n; ++p) {
      if (!entry.tmpl.center[p].is_zero()) continue;
      std::vector<Rational> c(n, Rational(0));
      c[p] = Rational(1);
      rows.push_back({std::move(c), LpRelation::kEq, Rational(0)});
    }
  }
  if (stats) ++stats->lp_solves;
  return solve_lp(n, rows, objective);
}

bool member_on_face(const std::vector<Rational>& member,
                    const std::vector<bool>& kept) {
  for (std::size_t p = 0; p < member.size(); ++p)
    if (!kept[p] && !member[p].is_zero()) return false;
  return true;
}

bool face_feasible_impl(const UncertaintyEntry& entry,
                        const std::vector<std::size_t>& positions,
                        const FeasibilityBackend& backend,
                        OracleStats* stats) {
  const std::vector<std::size_t> keep = effective_positions(entry, positions);
  if (keep.empty()) return false;

  if (std::holds_alternative<LBall>(entry.family))
    return lball_feasible(entry, keep, backend);

  if (std::holds_alternative<Polytope>(entry.family)) {
    const std::size_t n = entry.tmpl.successors.size();
    const auto r = polytope_face_lp(entry, keep,
                                    std::vector<Rational>(n, Rational(0)), stats);
    return r.status == LpStatus::kOptimal;
  }

  const auto& menu = std::get<FiniteMenu>(entry.family);
  std::vector<bool> kept(entry.tmpl.center.size(), false);
  for (std::size_t p : keep) kept[p] = true;
  for (const auto& member : menu.members)
    if (member_on_face(member, kept)) return true;
  return false;
}

bool can_hit_impl(const UncertaintyEntry& entry,
                  const std::vector<std::size_t>& cand_positions,
                  const std::vector<std::size_t>& hit_positions,
                  const FeasibilityBackend& backend, OracleStats* stats) {
  const std::vector<std::size_t> keep =
      effective_positions(entry, cand_positions);
  if (keep.empty()) return false;

  // Only the part of `hit` lying on the effective face matters.
  std::vector<std::size_t> hit;
  for (std::size_t p : hit_positions)
    if (std::find(keep.begin(), keep.end(), p) != keep.end()) hit.push_back(p);
  if (hit.empty()) return false;

  if (std::holds_alternative<LBall>(entry.family)) {
    const auto& ball = std::get<LBall>(entry.family);
    const LBallFace f = lball_face(entry, keep);
    const int cmp = ball.norm.infinite
                        ? backend.compare(f.distance_inf, ball.radius)
                        : backend.compare(f.distance_pow,
                                          ball.radius.pow(ball.norm.order));
    if (cmp > 0) return false;  // face empty
    if (cmp < 0) return true;   // interior slack admits an eps-push onto hit
    // Boundary: with freed mass the fill reaches every face coordinate; with
    // none the center is the only member.
    if (backend.is_positive(f.removed_mass)) return true;
    Rational hit_mass(0);
    for (std::size_t p : hit) hit_mass += entry.tmpl.center[p];
    return backend.is_positive(hit_mass);
  }

  if (std::holds_alternative<Polytope>(entry.family)) {
    const std::size_t n = entry.tmpl.successors.size();
    const auto r = polytope_face_lp(entry, keep, indicator(n, hit), stats);
    if (r.status == LpStatus::kInfeasible) return false;
    if (r.status == LpStatus::kUnbounded) return true;  // cannot happen
    return backend.is_positive(r.objective);
  }

  const auto& menu = std::get<FiniteMenu>(entry.family);
  std::vector<bool> kept(entry.tmpl.center.size(), false);
  for (std::size_t p : keep) kept[p] = true;
  for (const auto& member : menu.members) {
    if (!member_on_face(member, kept)) continue;
    Rational mass(0);
    for (std::size_t p : hit) mass += member[p];
    if (backend.is_positive(mass)) return true;
  }
  return false;
}

std::vector<StateId> face_minus(const std::vector<StateId>& face,
                                const StateSet& drop) {
  std::vector<StateId> out;
  out.reserve(face.size());
  for (StateId t : face)
    if (!drop.contains(t)) out.push_back(t);
  return out;
}

std::vector<StateId> face_intersect(const std::vector<StateId>& face,
                                    const StateSet& keep) {
  std::vector<StateId> out;
  out.reserve(face.size());
  for (StateId t : face)
    if (keep.contains(t)) out.push_back(t);
  return out;
}

}  // namespace

bool face_feasible(const UncertaintyEntry& entry,
                   const std::vector<StateId>& cand,
                   const FeasibilityBackend& backend, OracleStats* stats) {
  if (stats) ++stats->face_feasible_calls;
  return face_feasible_impl(entry, domain_positions(entry.tmpl, cand), backend,
                            stats);
}

bool can_hit(const UncertaintyEntry& entry, const std::vector<StateId>& cand,
             const std::vector<StateId>& hit, const FeasibilityBackend& backend,
             OracleStats* stats) {
  if (stats) ++stats->can_hit_calls;
  const auto cand_pos = domain_positions(entry.tmpl, cand);
  std::vector<std::size_t> hit_pos;
  for (StateId h : hit) {
    const auto it = std::find(entry.tmpl.successors.begin(),
                              entry.tmpl.successors.end(), h);
    if (it != entry.tmpl.successors.end())
      hit_pos.push_back(
          static_cast<std::size_t>(it - entry.tmpl.successors.begin()));
  }
  std::sort(hit_pos.begin(), hit_pos.end());
  hit_pos.erase(std::unique(hit_pos.begin(), hit_pos.end()), hit_pos.end());
  return can_hit_impl(entry, cand_pos, hit_pos, backend, stats);
}

std::optional<ActionId> force_agent_choice(const Rmdp& model, StateId s,
                                           const StateSet& target,
                                           const FeasibilityBackend& backend,
                                           OracleStats* stats) {
  if (!model.is_live(s))
    throw std::invalid_argument("force_agent: state not live");
  if (stats) ++stats->force_agent_calls;
  const auto& menu = model.menus[s];
  for (ActionId a = 0; a < menu.size(); ++a) {
    if (!menu[a].alive) continue;
    const auto avoid = face_minus(menu[a].face, target);
    const auto pos = domain_positions(menu[a].entry.tmpl, avoid);
    if (!face_feasible_impl(menu[a].entry, pos, backend, stats)) return a;
  }
  return std::nullopt;
}

bool force_agent(const Rmdp& model, StateId s, const StateSet& target,
                 const FeasibilityBackend& backend, OracleStats* stats) {
  return force_agent_choice(model, s, target, backend, stats).has_value();
}

bool force_env(const Rmdp& model, StateId s, const StateSet& target,
               const FeasibilityBackend& backend, OracleStats* stats) {
  if (!model.is_live(s))
    throw std::invalid_argument("force_env: state not live");
  if (stats) ++stats->force_env_calls;
  const auto& menu = model.menus[s];
  for (ActionId a = 0; a < menu.size(); ++a) {
    if (!menu[a].alive) continue;
    const auto cand = domain_positions(menu[a].entry.tmpl, menu[a].face);
    const auto hit =
        domain_positions(menu[a].entry.tmpl,
                         face_intersect(menu[a].face, target));
    if (!can_hit_impl(menu[a].entry, cand, hit, backend, stats)) return false;
  }
  return true;  // vacuous on an empty menu: a stuck agent is env-losing
}

std::vector<std::vector<StateId>> achievable_supports(
    const UncertaintyEntry& entry, const std::vector<StateId>& cand,
    std::size_t cap, const FeasibilityBackend& backend, OracleStats* stats) {
  const auto cand_pos = domain_positions(entry.tmpl, cand);
  const auto keep = effective_positions(entry, cand_pos);
  if (keep.size() > cap)
    throw SupportCapExceeded("achievable_supports: face larger than cap");

  std::vector<std::vector<StateId>> result;

  if (std::holds_alternative<FiniteMenu>(entry.family)) {
    const auto& menu = std::get<FiniteMenu>(entry.family);
    std::vector<bool> kept(entry.tmpl.center.size(), false);
    for (std::size_t p : keep) kept[p] = true;
    for (const auto& member : menu.members) {
      if (!member_on_face(member, kept)) continue;
      std::vector<StateId> supp;
      for (std::size_t p = 0; p < member.size(); ++p)
        if (!member[p].is_zero()) supp.push_back(entry.tmpl.successors[p]);
      std::sort(supp.begin(), supp.end());
      if (std::find(result.begin(), result.end(), supp) == result.end())
        result.push_back(std::move(supp));
    }
    std::sort(result.begin(), result.end());
    return result;
  }

  // Convex families: T is a support iff the face T is reachable and every
  // coordinate of T can carry positive mass on it (averaging the witnesses
  // stays on the face and is positive where required).
  const std::size_t k = keep.size();
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::vector<std::size_t> sub;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) sub.push_back(keep[i]);
    if (!face_feasible_impl(entry, sub, backend, stats)) continue;
    bool all_positive = true;
    for (std::size_t p : sub) {
      if (!can_hit_impl(entry, sub, {p}, backend, stats)) {
        all_positive = false;
        break;
      }
    }
    if (!all_positive) continue;
    std::vector<StateId> supp;
    for (std::size_t p : sub) supp.push_back(entry.tmpl.successors[p]);
    std::sort(supp.begin(), supp.end());
    result.push_back(std::move(supp));
  }
  std::sort(result.begin(), result.end());
  return result;
}

Rational lball_face_distance_pow(const UncertaintyEntry& entry,
                                 const std::vector<StateId>& cand) {
  const auto keep =
      effective_positions(entry, domain_positions(entry.tmpl, cand));
  if (keep.empty())
    throw std::invalid_argument("lball_face_distance_pow: empty face");
  return lball_face(entry, keep).distance_pow;
}

Rational linf_face_distance(const UncertaintyEntry& entry,
                            const std::vector<StateId>& cand) {
  const auto keep =
      effective_positions(entry, domain_positions(entry.tmpl, cand));
  if (keep.empty())
    throw std::invalid_argument("linf_face_distance: empty face");
  return lball_face(entry, keep).distance_inf;
}

}  // namespace rmdpq
