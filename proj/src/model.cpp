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

#include "rmdpq/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rmdpq/oracles.hpp"

namespace rmdpq {

StateSet Rmdp::label_set(const std::string& name) const {
  StateSet out(n_states());
  const auto it = labels.find(name);
  if (it == labels.end())
    throw std::invalid_argument("unknown label: '" + name + "'");
  for (StateId s : it->second)
    if (is_live(s)) out.insert(s);
  return out;
}

StateId RmdpBuilder::add_state(std::string name) {
  model_.state_names.push_back(std::move(name));
  model_.alive.push_back(true);
  model_.menus.emplace_back();
  return static_cast<StateId>(model_.state_names.size() - 1);
}

void RmdpBuilder::add_action(StateId s, std::string name,
                             TransitionTemplate tmpl, UncertaintyFamily family,
                             bool support_restricted) {
  if (s >= model_.n_states())
    throw std::out_of_range("RmdpBuilder::add_action: unknown state");
  ActionEntry action;
  action.name = std::move(name);
  action.face = tmpl.successors;
  std::sort(action.face.begin(), action.face.end());
  action.entry =
      UncertaintyEntry{std::move(tmpl), std::move(family), support_restricted};
  action.alive = true;
  model_.menus[s].push_back(std::move(action));
}

void RmdpBuilder::add_label(const std::string& label, StateId s) {
  auto& ids = model_.labels[label];
  if (std::find(ids.begin(), ids.end(), s) == ids.end()) {
    ids.push_back(s);
    std::sort(ids.begin(), ids.end());
  }
}

void RmdpBuilder::set_priorities(std::vector<int> priorities) {
  PriorityFunction pf;
  pf.value = std::move(priorities);
  pf.declared_max = 0;
  for (int v : pf.value) pf.declared_max = std::max(pf.declared_max, v);
  model_.priorities = std::move(pf);
}

Rmdp RmdpBuilder::build() { return std::move(model_); }

namespace {

std::string locate(const Rmdp& m, StateId s) {
  return "state " + m.state_names[s];
}

std::string locate(const Rmdp& m, StateId s, const ActionEntry& a) {
  return "state " + m.state_names[s] + " action " + a.name;
}

void check_distribution(const Rmdp& m, StateId s, const ActionEntry& a,
                        const std::vector<Rational>& vec, const char* what,
                        std::vector<Violation>* out) {
  Rational sum(0);
  bool negative = false;
  for (const Rational& v : vec) {
    if (v.sign() < 0) negative = true;
    sum += v;
  }
  if (negative)
    out->push_back({locate(m, s, a), std::string(what) + " has a negative entry"});
  if (sum != Rational(1))
    out->push_back({locate(m, s, a), std::string(what) + " not a distribution"});
}

void validate_entry(const Rmdp& m, StateId s, const ActionEntry& a,
                    std::vector<Violation>* out) {
  const auto& tmpl = a.entry.tmpl;
  if (tmpl.successors.empty()) {
    out->push_back({locate(m, s, a), "empty successor list"});
    return;
  }
  std::set<StateId> succ(tmpl.successors.begin(), tmpl.successors.end());
  if (succ.size() != tmpl.successors.size())
    out->push_back({locate(m, s, a), "duplicate successors"});
  for (StateId t : tmpl.successors)
    if (t >= m.n_states())
      out->push_back({locate(m, s, a), "successor id out of range"});
  if (tmpl.center.size() != tmpl.successors.size()) {
    out->push_back({locate(m, s, a), "center length mismatch"});
    return;
  }
  check_distribution(m, s, a, tmpl.center, "center", out);

  for (StateId t : a.face) {
    if (succ.find(t) == succ.end())
      out->push_back({locate(m, s, a), "face not a subset of the successors"});
    else if (!m.is_live(t))
      out->push_back({locate(m, s, a), "face mentions a dead state"});
  }
  if (a.face.empty())
    out->push_back({locate(m, s, a), "empty face"});

  if (const auto* ball = std::get_if<LBall>(&a.entry.family)) {
    if (ball->radius.sign() < 0)
      out->push_back({locate(m, s, a), "negative radius"});
    if (!ball->norm.infinite && ball->norm.order == 0)
      out->push_back({locate(m, s, a), "norm order must be at least 1"});
  } else if (const auto* poly = std::get_if<Polytope>(&a.entry.family)) {
    for (std::size_t r = 0; r < poly->rows.size(); ++r) {
      const auto& row = poly->rows[r];
      std::ostringstream where;
      where << locate(m, s, a) << " row " << r;
      if (row.coeffs.size() != tmpl.successors.size()) {
        out->push_back({where.str(), "row length mismatch"});
        continue;
      }
      Rational lhs(0);
      for (std::size_t j = 0; j < row.coeffs.size(); ++j)
        lhs += row.coeffs[j] * tmpl.center[j];
      const bool ok =
          row.rel == Relation::kEq ? lhs == row.rhs : lhs <= row.rhs;
      if (!ok) out->push_back({where.str(), "center outside polytope"});
    }
  } else if (const auto* menu = std::get_if<FiniteMenu>(&a.entry.family)) {
    if (menu->members.empty())
      out->push_back({locate(m, s, a), "empty finite menu"});
    for (std::size_t k = 0; k < menu->members.size(); ++k) {
      const auto& member = menu->members[k];
      std::ostringstream where;
      where << locate(m, s, a) << " member " << k;
      if (member.size() != tmpl.successors.size()) {
        out->push_back({where.str(), "member length mismatch"});
        continue;
      }
      check_distribution(m, s, a, member, "member", out);
      if (a.entry.support_restricted) {
        for (std::size_t j = 0; j < member.size(); ++j)
          if (!member[j].is_zero() && tmpl.center[j].is_zero())
            out->push_back({where.str(), "member support escapes the center support"});
      }
    }
  }
}

}  // namespace

std::vector<Violation> validate(const Rmdp& model) {
  std::vector<Violation> out;
  if (model.alive.size() != model.n_states() ||
      model.menus.size() != model.n_states()) {
    out.push_back({"model", "state table size mismatch"});
    return out;
  }
  std::set<std::string> seen;
  for (StateId s = 0; s < model.n_states(); ++s) {
    if (!model.alive[s]) continue;
    if (!seen.insert(model.state_names[s]).second)
      out.push_back({locate(model, s), "duplicate state name"});
  }
  for (StateId s = 0; s < model.n_states(); ++s) {
    if (!model.alive[s]) continue;
    for (const auto& a : model.menus[s]) {
      if (!a.alive) continue;
      validate_entry(model, s, a, &out);
    }
  }
  for (const auto& [label, ids] : model.labels) {
    for (StateId s : ids)
      if (s >= model.n_states() || !model.alive[s])
        out.push_back({"label " + label, "mentions an unknown or dead state"});
  }
  if (model.priorities) {
    const auto& pf = *model.priorities;
    if (pf.value.size() != model.n_states()) {
      out.push_back({"priorities", "priority table size mismatch"});
    } else {
      for (StateId s = 0; s < model.n_states(); ++s) {
        if (!model.alive[s]) continue;
        if (pf.value[s] < 0 || pf.value[s] > pf.declared_max)
          out.push_back({locate(model, s), "priority out of range"});
      }
    }
  }
  return out;
}

namespace {

void require_live_subset(const Rmdp& model, const StateSet& set,
                         const char* op) {
  if (set.universe() != model.n_states())
    throw std::invalid_argument(std::string(op) + ": universe mismatch");
  for (StateId s : set.elements())
    if (!model.is_live(s))
      throw std::invalid_argument(std::string(op) + ": state '" +
                                  (s < model.n_states() ? model.state_names[s]
                                                        : "?") +
                                  "' is not live");
}

void prune_labels(Rmdp* model) {
  for (auto& [label, ids] : model->labels) {
    ids.erase(std::remove_if(ids.begin(), ids.end(),
                             [&](StateId s) { return !model->is_live(s); }),
              ids.end());
  }
}

}  // namespace

Rmdp remove_states(const Rmdp& model, const StateSet& zap,
                   const FeasibilityBackend& backend, OracleStats* stats) {
  require_live_subset(model, zap, "remove_states");
  Rmdp out = model;
  for (StateId s : zap.elements()) out.alive[s] = false;

  for (StateId s = 0; s < out.n_states(); ++s) {
    if (!out.alive[s]) continue;
    for (auto& action : out.menus[s]) {
      if (!action.alive) continue;
      std::vector<StateId> hit;
      for (StateId t : action.face)
        if (zap.contains(t)) hit.push_back(t);
      if (hit.empty()) continue;  // face untouched, set unconditioned
      if (can_hit(action.entry, action.face, hit, backend, stats)) {
        action.alive = false;
        continue;
      }
      action.face.erase(std::remove_if(action.face.begin(), action.face.end(),
                                       [&](StateId t) { return zap.contains(t); }),
                        action.face.end());
    }
  }
  prune_labels(&out);
  return out;
}

Rmdp restrict_to(const Rmdp& model, const StateSet& keep,
                 const FeasibilityBackend& backend, OracleStats* stats) {
  require_live_subset(model, keep, "restrict_to");
  Rmdp out = model;
  for (StateId s = 0; s < out.n_states(); ++s)
    if (out.alive[s] && !keep.contains(s)) out.alive[s] = false;

  for (StateId s = 0; s < out.n_states(); ++s) {
    if (!out.alive[s]) continue;
    for (auto& action : out.menus[s]) {
      if (!action.alive) continue;
      std::vector<StateId> inside;
      for (StateId t : action.face)
        if (keep.contains(t)) inside.push_back(t);
      if (inside.size() == action.face.size()) continue;
      if (!face_feasible(action.entry, inside, backend, stats)) {
        action.alive = false;
        continue;
      }
      action.face = std::move(inside);
    }
  }
  prune_labels(&out);
  return out;
}

namespace {

bool entries_equal(const UncertaintyEntry& a, const UncertaintyEntry& b,
                   const std::vector<std::string>& names_a,
                   const std::vector<std::string>& names_b) {
  if (a.support_restricted != b.support_restricted) return false;
  if (a.tmpl.center != b.tmpl.center) return false;
  if (a.tmpl.successors.size() != b.tmpl.successors.size()) return false;
  for (std::size_t i = 0; i < a.tmpl.successors.size(); ++i)
    if (names_a[a.tmpl.successors[i]] != names_b[b.tmpl.successors[i]])
      return false;
  return a.family == b.family;
}

}  // namespace

bool structurally_equal(const Rmdp& a, const Rmdp& b) {
  std::vector<StateId> live_a, live_b;
  for (StateId s = 0; s < a.n_states(); ++s)
    if (a.alive[s]) live_a.push_back(s);
  for (StateId s = 0; s < b.n_states(); ++s)
    if (b.alive[s]) live_b.push_back(s);
  if (live_a.size() != live_b.size()) return false;

  for (std::size_t i = 0; i < live_a.size(); ++i) {
    const StateId sa = live_a[i], sb = live_b[i];
    if (a.state_names[sa] != b.state_names[sb]) return false;

    std::vector<const ActionEntry*> ma, mb;
    for (const auto& act : a.menus[sa])
      if (act.alive) ma.push_back(&act);
    for (const auto& act : b.menus[sb])
      if (act.alive) mb.push_back(&act);
    if (ma.size() != mb.size()) return false;
    for (std::size_t k = 0; k < ma.size(); ++k) {
      if (ma[k]->name != mb[k]->name) return false;
      if (ma[k]->face.size() != mb[k]->face.size()) return false;
      for (std::size_t j = 0; j < ma[k]->face.size(); ++j)
        if (a.state_names[ma[k]->face[j]] != b.state_names[mb[k]->face[j]])
          return false;
      if (!entries_equal(ma[k]->entry, mb[k]->entry, a.state_names,
                         b.state_names))
        return false;
    }
    if (a.priorities.has_value() != b.priorities.has_value()) return false;
    if (a.priorities && a.priorities->value[sa] != b.priorities->value[sb])
      return false;
  }

  // Labels compared by live member names.
  auto live_label_names = [](const Rmdp& m) {
    std::map<std::string, std::set<std::string>> out;
    for (const auto& [label, ids] : m.labels) {
      auto& bucket = out[label];
      for (StateId s : ids)
        if (m.is_live(s)) bucket.insert(m.state_names[s]);
    }
    return out;
  };
  return live_label_names(a) == live_label_names(b);
}

}  // namespace rmdpq
