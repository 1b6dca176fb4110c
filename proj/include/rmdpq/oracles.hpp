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

#ifndef RMDPQ_ORACLES_HPP_
#define RMDPQ_ORACLES_HPP_

#include <optional>
#include <stdexcept>
#include <vector>

#include "rmdpq/backend.hpp"
#include "rmdpq/model.hpp"

namespace rmdpq {

// Thrown when an enumeration would exceed the achievable-support cap.
class SupportCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// True iff some member of the uncertainty set places all of its mass inside
// the successor subset `cand` (i.e. the face of the simplex spanned by
// `cand` is reachable). For L_d balls this is the exact minimal-distance
// test of the water-filling projection; for polytopes an LP feasibility
// check; for finite menus direct enumeration. Throws std::invalid_argument
// if `cand` is not a subset of the entry's successor domain; the empty face
// is never feasible.
bool face_feasible(const UncertaintyEntry& entry,
                   const std::vector<StateId>& cand,
                   const FeasibilityBackend& backend = {},
                   OracleStats* stats = nullptr);

// True iff some member puts all mass inside `cand` and positive mass on
// `hit` ∩ `cand`. `hit` may mention arbitrary states; only its intersection
// with `cand` matters.
bool can_hit(const UncertaintyEntry& entry, const std::vector<StateId>& cand,
             const std::vector<StateId>& hit,
             const FeasibilityBackend& backend = {},
             OracleStats* stats = nullptr);

// Agent force oracle: exists an admissible action whose every admissible
// distribution hits `target` with positive probability. Returns the lowest
// such action index, or nullopt. States with an empty menu never force.
std::optional<ActionId> force_agent_choice(const Rmdp& model, StateId s,
                                           const StateSet& target,
                                           const FeasibilityBackend& backend = {},
                                           OracleStats* stats = nullptr);

bool force_agent(const Rmdp& model, StateId s, const StateSet& target,
                 const FeasibilityBackend& backend = {},
                 OracleStats* stats = nullptr);

// Environment force oracle: for every admissible action some admissible
// distribution hits `target` with positive probability. Vacuously true on an
// empty menu (a stuck agent is the environment's win).
bool force_env(const Rmdp& model, StateId s, const StateSet& target,
               const FeasibilityBackend& backend = {},
               OracleStats* stats = nullptr);

// All successor subsets T ⊆ cand realizable as the exact support of some
// member of the set. Enumerates 2^|cand| candidates; throws
// SupportCapExceeded when |cand| > cap.
std::vector<std::vector<StateId>> achievable_supports(
    const UncertaintyEntry& entry, const std::vector<StateId>& cand,
    std::size_t cap = 12, const FeasibilityBackend& backend = {},
    OracleStats* stats = nullptr);

// Exact d-th power of the minimal L_d distance from the center to the face
// spanned by `cand` (finite order), exposed for the water-filling agreement
// tests. Requires a non-empty effective face.
Rational lball_face_distance_pow(const UncertaintyEntry& entry,
                                 const std::vector<StateId>& cand);

// Exact minimal L_inf distance to the face spanned by `cand`.
Rational linf_face_distance(const UncertaintyEntry& entry,
                            const std::vector<StateId>& cand);

}  // namespace rmdpq

#endif  // RMDPQ_ORACLES_HPP_
