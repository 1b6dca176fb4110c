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

#ifndef RMDPQ_MODEL_HPP_
#define RMDPQ_MODEL_HPP_

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rmdpq/backend.hpp"
#include "rmdpq/rational.hpp"
#include "rmdpq/state_set.hpp"

namespace rmdpq {

// Order of an L_d norm; `infinite` selects the max norm.
struct LNorm {
  unsigned order = 2;
  bool infinite = false;

  static LNorm p(unsigned d) { return LNorm{d, false}; }
  static LNorm inf() { return LNorm{0, true}; }

  bool operator==(const LNorm& o) const {
    return infinite == o.infinite && (infinite || order == o.order);
  }
};

// Nominal next-state distribution of one (state, action) pair. The successor
// list fixes the coordinate domain of the attached uncertainty set; entries
// of `center` are probabilities over exactly those successors.
struct TransitionTemplate {
  std::vector<StateId> successors;
  std::vector<Rational> center;
};

// L_d ball of radius `radius` around the nominal distribution.
struct LBall {
  LNorm norm;
  Rational radius;

  bool operator==(const LBall& o) const {
    return norm == o.norm && radius == o.radius;
  }
};

enum class Relation { kLe, kEq };

struct PolytopeRow {
  std::vector<Rational> coeffs;  // one per successor-domain coordinate
  Relation rel = Relation::kLe;
  Rational rhs;

  bool operator==(const PolytopeRow& o) const {
    return coeffs == o.coeffs && rel == o.rel && rhs == o.rhs;
  }
};

struct Polytope {
  std::vector<PolytopeRow> rows;

  bool operator==(const Polytope& o) const { return rows == o.rows; }
};

// Explicit finite list of admissible distributions over the successor domain.
struct FiniteMenu {
  std::vector<std::vector<Rational>> members;

  bool operator==(const FiniteMenu& o) const { return members == o.members; }
};

using UncertaintyFamily = std::variant<LBall, Polytope, FiniteMenu>;

// Ambiguity set of one (state, action) pair: nominal distribution plus the
// family describing how the environment may perturb it. `support_restricted`
// forbids the environment from placing mass outside supp(center).
struct UncertaintyEntry {
  TransitionTemplate tmpl;
  UncertaintyFamily family;
  bool support_restricted = false;
};

// One action of a state's menu. `face` is the currently admissible subset of
// the successor domain; sub-RMDP operations only ever tighten it, so the
// closed-form oracles stay applicable to every sub-model.
struct ActionEntry {
  std::string name;
  UncertaintyEntry entry;
  std::vector<StateId> face;  // sorted, subset of entry.tmpl.successors
  bool alive = true;
};

struct PriorityFunction {
  std::vector<int> value;  // indexed by StateId
  int declared_max = 0;

  int max_over(const StateSet& states) const {
    int m = 0;
    for (StateId s : states.elements()) m = std::max(m, value[s]);
    return m;
  }
};

// Pure memoryless policy: state -> chosen action index in that state's menu.
struct MemorylessPolicy {
  std::map<StateId, ActionId> choice;

  bool operator==(const MemorylessPolicy& o) const { return choice == o.choice; }
};

// Immutable robust MDP. Sub-models produced by remove_states/restrict_to
// share the state numbering of their parent; removed states and actions are
// marked dead rather than being renumbered, which keeps StateIds stable in
// traces and policies.
struct Rmdp {
  std::vector<std::string> state_names;
  std::vector<bool> alive;
  std::vector<std::vector<ActionEntry>> menus;
  std::map<std::string, std::vector<StateId>> labels;  // values sorted
  std::optional<PriorityFunction> priorities;

  std::size_t n_states() const { return state_names.size(); }
  bool is_live(StateId s) const { return s < alive.size() && alive[s]; }

  StateSet live() const {
    StateSet out(n_states());
    for (StateId s = 0; s < n_states(); ++s)
      if (alive[s]) out.insert(s);
    return out;
  }

  std::size_t live_count() const {
    std::size_t c = 0;
    for (bool b : alive) c += b ? 1 : 0;
    return c;
  }

  std::optional<StateId> find_state(const std::string& name) const {
    for (StateId s = 0; s < n_states(); ++s)
      if (state_names[s] == name) return s;
    return std::nullopt;
  }

  StateSet label_set(const std::string& name) const;

  // Lowest alive action index, if any.
  std::optional<ActionId> first_admissible(StateId s) const {
    for (ActionId a = 0; a < menus[s].size(); ++a)
      if (menus[s][a].alive) return a;
    return std::nullopt;
  }
};

// Incremental construction helper; faces start as the full successor list.
class RmdpBuilder {
 public:
  StateId add_state(std::string name);
  void add_action(StateId s, std::string name, TransitionTemplate tmpl,
                  UncertaintyFamily family, bool support_restricted = false);
  void add_label(const std::string& label, StateId s);
  void set_priorities(std::vector<int> priorities);
  Rmdp build();

 private:
  Rmdp model_;
};

struct Violation {
  std::string where;    // "state s2 action a row 1" style locator
  std::string message;
};

// Checks every structural invariant of the model; returns one entry per
// violation. Violations are data, not failures.
std::vector<Violation> validate(const Rmdp& model);

// M \ Z: removes Z and every action that could reach Z with positive
// probability. Throws std::invalid_argument if Z contains unknown or dead
// states.
Rmdp remove_states(const Rmdp& model, const StateSet& zap,
                   const FeasibilityBackend& backend = {},
                   OracleStats* stats = nullptr);

// M|_B: restricts the state space to B; an action survives iff the
// environment can keep the successor inside B with probability 1, and its
// face is tightened to face ∩ B.
Rmdp restrict_to(const Rmdp& model, const StateSet& keep,
                 const FeasibilityBackend& backend = {},
                 OracleStats* stats = nullptr);

// Structural equality on live states, menus, faces, families, labels and
// priorities, matching by state name so renumbered copies compare equal.
bool structurally_equal(const Rmdp& a, const Rmdp& b);

}  // namespace rmdpq

#endif  // RMDPQ_MODEL_HPP_
