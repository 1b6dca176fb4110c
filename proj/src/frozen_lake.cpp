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

#include "rmdpq/frozen_lake.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "rmdpq/prng.hpp"

namespace rmdpq {

namespace {

constexpr std::uint64_t kQuantum = 1000000;  // radii and densities in millionths

struct Grid {
  unsigned n;
  std::vector<bool> hole;              // row-major
  std::vector<Rational> radius;        // row-major, unused on holes

  bool in_bounds(int r, int c) const {
    return r >= 0 && c >= 0 && r < static_cast<int>(n) && c < static_cast<int>(n);
  }
  std::size_t at(int r, int c) const {
    return static_cast<std::size_t>(r) * n + static_cast<std::size_t>(c);
  }
};

Grid roll_grid(const FrozenLakeSpec& spec) {
  Grid g;
  g.n = spec.n;
  g.hole.assign(static_cast<std::size_t>(spec.n) * spec.n, false);
  g.radius.assign(g.hole.size(), Rational(0));

  SplitMix64 rng(spec.seed);
  const Rational density = spec.hole_density;
  // Hole draws first: one per cell in row-major order; start and goal are
  // exempt but still consume a draw, keeping the stream layout simple.
  for (unsigned r = 0; r < spec.n; ++r) {
    for (unsigned c = 0; c < spec.n; ++c) {
      const std::uint64_t draw = rng.below(kQuantum);
      const bool exempt = (r == 0 && c == 0) ||
                          (r == spec.n - 1 && c == spec.n - 1);
      if (exempt) continue;
      if (Rational(static_cast<long long>(draw), kQuantum) < density)
        g.hole[g.at(static_cast<int>(r), static_cast<int>(c))] = true;
    }
  }
  // Cell radii second, one draw per cell (holes included, again for stream
  // stability): radius = (k / 10^6) * r_max with k uniform in 0..10^6.
  for (std::size_t i = 0; i < g.radius.size(); ++i) {
    const std::uint64_t k = rng.below(kQuantum + 1);
    g.radius[i] = Rational(static_cast<long long>(k), kQuantum) * spec.r_max;
  }
  return g;
}

struct Move {
  int dr, dc;
  const char* name;
};

constexpr Move kMoves[4] = {
    {0, 1, "right"}, {0, -1, "left"}, {-1, 0, "up"}, {1, 0, "down"}};

// Perpendicular directions of a move index (right/left <-> up/down).
void perpendicular(std::size_t move, std::size_t out[2]) {
  if (move < 2) {
    out[0] = 2;
    out[1] = 3;
  } else {
    out[0] = 0;
    out[1] = 1;
  }
}

// Slip dynamics for one action from one cell: intended and both
// perpendicular directions at 1/3 each; off-grid or hole targets stay put.
TransitionTemplate slip_template(const Grid& g, int r, int c,
                                 std::size_t move,
                                 const std::vector<StateId>& cell_state) {
  std::size_t dirs[3];
  dirs[0] = move;
  perpendicular(move, dirs + 1);

  std::map<StateId, Rational> mass;
  for (std::size_t k = 0; k < 3; ++k) {
    const int nr = r + kMoves[dirs[k]].dr;
    const int nc = c + kMoves[dirs[k]].dc;
    StateId dest;
    if (!g.in_bounds(nr, nc) || g.hole[g.at(nr, nc)])
      dest = cell_state[g.at(r, c)];
    else
      dest = cell_state[g.at(nr, nc)];
    mass[dest] += Rational(1, 3);
  }

  TransitionTemplate tmpl;
  for (const auto& [dest, p] : mass) {
    tmpl.successors.push_back(dest);
    tmpl.center.push_back(p);
  }
  return tmpl;
}

std::string cell_name(unsigned n, std::size_t idx) {
  return "c" + std::to_string(idx / n) + "_" + std::to_string(idx % n);
}

Rmdp build_reach(const FrozenLakeSpec& spec, const Grid& g) {
  RmdpBuilder builder;
  std::vector<StateId> cell_state(g.hole.size(),
                                  static_cast<StateId>(-1));
  for (std::size_t i = 0; i < g.hole.size(); ++i)
    if (!g.hole[i]) cell_state[i] = builder.add_state(cell_name(spec.n, i));

  const std::size_t goal = g.at(static_cast<int>(spec.n) - 1,
                                static_cast<int>(spec.n) - 1);
  for (std::size_t i = 0; i < g.hole.size(); ++i) {
    if (g.hole[i]) continue;
    const int r = static_cast<int>(i / spec.n);
    const int c = static_cast<int>(i % spec.n);
    for (std::size_t m = 0; m < 4; ++m) {
      if (i == goal) {
        TransitionTemplate stay;
        stay.successors = {cell_state[i]};
        stay.center = {Rational(1)};
        builder.add_action(cell_state[i], kMoves[m].name, std::move(stay),
                           LBall{spec.norm, Rational(0)},
                           spec.support_restricted);
      } else {
        builder.add_action(cell_state[i], kMoves[m].name,
                           slip_template(g, r, c, m, cell_state),
                           LBall{spec.norm, g.radius[i]},
                           spec.support_restricted);
      }
    }
  }
  builder.add_label("target", cell_state[goal]);
  builder.add_label("init", cell_state[0]);
  return builder.build();
}

Rmdp build_parity(const FrozenLakeSpec& spec, const Grid& g) {
  // Two-mode product: mode 0 seeks the leftmost column, mode 1 the
  // rightmost. A state whose cell sits in the sought column has priority 2
  // (the resource is collected there) and its outgoing transitions flip the
  // mode; all other states have priority 1.
  RmdpBuilder builder;
  const std::size_t cells = g.hole.size();
  std::vector<StateId> product(2 * cells, static_cast<StateId>(-1));
  std::vector<int> priorities;

  for (unsigned mode = 0; mode < 2; ++mode) {
    for (std::size_t i = 0; i < cells; ++i) {
      if (g.hole[i]) continue;
      const unsigned col = static_cast<unsigned>(i % spec.n);
      const bool at_sought =
          (mode == 0 && col == 0) || (mode == 1 && col == spec.n - 1);
      const std::string name =
          cell_name(spec.n, i) + (mode == 0 ? "_seekL" : "_seekR");
      product[mode * cells + i] = builder.add_state(name);
      priorities.push_back(at_sought ? 2 : 1);
    }
  }

  for (unsigned mode = 0; mode < 2; ++mode) {
    for (std::size_t i = 0; i < cells; ++i) {
      if (g.hole[i]) continue;
      const int r = static_cast<int>(i / spec.n);
      const int c = static_cast<int>(i % spec.n);
      const unsigned col = static_cast<unsigned>(i % spec.n);
      const bool at_sought =
          (mode == 0 && col == 0) || (mode == 1 && col == spec.n - 1);
      const unsigned next_mode = at_sought ? 1 - mode : mode;

      std::vector<StateId> dest(cells);
      for (std::size_t j = 0; j < cells; ++j)
        if (!g.hole[j]) dest[j] = product[next_mode * cells + j];

      for (std::size_t m = 0; m < 4; ++m) {
        builder.add_action(product[mode * cells + i], kMoves[m].name,
                           slip_template(g, r, c, m, dest),
                           LBall{spec.norm, g.radius[i]},
                           spec.support_restricted);
      }
    }
  }
  builder.set_priorities(std::move(priorities));
  builder.add_label("init", product[0]);
  return builder.build();
}

}  // namespace

Rmdp gen_frozen_lake(const FrozenLakeSpec& spec) {
  if (spec.n < 2) throw std::invalid_argument("frozen lake: n must be >= 2");
  if (spec.hole_density.sign() < 0 || spec.hole_density >= Rational(1))
    throw std::invalid_argument("frozen lake: hole density must be in [0, 1)");
  if (spec.r_max.sign() < 0)
    throw std::invalid_argument("frozen lake: r_max must be non-negative");

  const Grid g = roll_grid(spec);
  return spec.objective == FrozenLakeSpec::Objective::kReach
             ? build_reach(spec, g)
             : build_parity(spec, g);
}

}  // namespace rmdpq
