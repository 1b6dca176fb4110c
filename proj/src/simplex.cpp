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

#include "rmdpq/simplex.hpp"

#include <functional>
#include <stdexcept>

namespace rmdpq {

namespace {

// Dense tableau in canonical form: basic columns are unit vectors and the
// cost row carries reduced costs (minimization). Bland's rule on both the
// entering and the leaving variable rules out cycling.
struct Tableau {
  std::size_t m = 0;
  std::size_t n_cols = 0;  // variables, rhs excluded
  std::vector<std::vector<Rational>> row;  // m rows of n_cols + 1
  std::vector<Rational> cost;              // n_cols + 1, last = -value
  std::vector<std::size_t> basis;          // basic column per row

  void pivot(std::size_t r, std::size_t col) {
    const Rational p = row[r][col];
    for (auto& v : row[r]) v /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || row[i][col].is_zero()) continue;
      const Rational f = row[i][col];
      for (std::size_t j = 0; j <= n_cols; ++j) row[i][j] -= f * row[r][j];
    }
    if (!cost[col].is_zero()) {
      const Rational f = cost[col];
      for (std::size_t j = 0; j <= n_cols; ++j) cost[j] -= f * row[r][j];
    }
    basis[r] = col;
  }

  // Minimizes the current cost row. Returns false on unboundedness.
  bool run(const std::function<bool(std::size_t)>& may_enter) {
    for (;;) {
      std::size_t enter = n_cols;
      for (std::size_t j = 0; j < n_cols; ++j) {
        if (may_enter(j) && cost[j].sign() < 0) {
          enter = j;
          break;
        }
      }
      if (enter == n_cols) return true;

      std::size_t leave = m;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        if (row[i][enter].sign() <= 0) continue;
        const Rational ratio = row[i][n_cols] / row[i][enter];
        if (leave == m || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_lp(std::size_t num_vars,
                  const std::vector<LpConstraint>& constraints,
                  const std::vector<Rational>& objective) {
  if (objective.size() != num_vars)
    throw std::invalid_argument("solve_lp: objective size mismatch");
  for (const auto& c : constraints)
    if (c.coeffs.size() != num_vars)
      throw std::invalid_argument("solve_lp: constraint size mismatch");

  const std::size_t m = constraints.size();

  // Normalize to rhs >= 0; a negated <= row becomes a >= row (surplus +
  // artificial).
  enum class Kind { kLe, kGe, kEq };
  std::vector<Kind> kind(m);
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(num_vars));
  std::vector<Rational> b(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = constraints[i].rhs.sign() < 0;
    for (std::size_t j = 0; j < num_vars; ++j)
      a[i][j] = flip ? -constraints[i].coeffs[j] : constraints[i].coeffs[j];
    b[i] = flip ? -constraints[i].rhs : constraints[i].rhs;
    if (constraints[i].rel == LpRelation::kEq)
      kind[i] = Kind::kEq;
    else
      kind[i] = flip ? Kind::kGe : Kind::kLe;
  }

  std::size_t n_slack = 0, n_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (kind[i] != Kind::kEq) ++n_slack;
    if (kind[i] != Kind::kLe) ++n_art;
  }
  const std::size_t art_begin = num_vars + n_slack;
  const std::size_t n_cols = art_begin + n_art;

  Tableau t;
  t.m = m;
  t.n_cols = n_cols;
  t.row.assign(m, std::vector<Rational>(n_cols + 1));
  t.cost.assign(n_cols + 1, Rational(0));
  t.basis.assign(m, 0);

  std::size_t slack_at = num_vars, art_at = art_begin;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < num_vars; ++j) t.row[i][j] = a[i][j];
    t.row[i][n_cols] = b[i];
    switch (kind[i]) {
      case Kind::kLe:
        t.row[i][slack_at] = Rational(1);
        t.basis[i] = slack_at++;
        break;
      case Kind::kGe:
        t.row[i][slack_at++] = Rational(-1);
        t.row[i][art_at] = Rational(1);
        t.basis[i] = art_at++;
        break;
      case Kind::kEq:
        t.row[i][art_at] = Rational(1);
        t.basis[i] = art_at++;
        break;
    }
  }

  LpResult result;

  if (n_art > 0) {
    // Phase 1: minimize the sum of artificials.
    for (std::size_t j = art_begin; j < n_cols; ++j) t.cost[j] = Rational(1);
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis[i] < art_begin) continue;
      const Rational f = t.cost[t.basis[i]];
      for (std::size_t j = 0; j <= n_cols; ++j) t.cost[j] -= f * t.row[i][j];
    }
    t.run([](std::size_t) { return true; });
    const Rational phase1 = -t.cost[n_cols];
    if (phase1.sign() > 0) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    // Drive basic artificials (all at value 0 now) out of the basis where a
    // non-artificial pivot exists; rows without one are redundant and inert.
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis[i] < art_begin) continue;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (!t.row[i][j].is_zero()) {
          t.pivot(i, j);
          break;
        }
      }
    }
  }

  // Phase 2: minimize -objective, artificials barred from entering.
  t.cost.assign(n_cols + 1, Rational(0));
  for (std::size_t j = 0; j < num_vars; ++j) t.cost[j] = -objective[j];
  for (std::size_t i = 0; i < m; ++i) {
    if (t.cost[t.basis[i]].is_zero()) continue;
    const Rational f = t.cost[t.basis[i]];
    for (std::size_t j = 0; j <= n_cols; ++j) t.cost[j] -= f * t.row[i][j];
  }
  const bool bounded =
      t.run([&](std::size_t j) { return j < art_begin; });
  if (!bounded) {
    result.status = LpStatus::kUnbounded;
    return result;
  }

  result.status = LpStatus::kOptimal;
  result.point.assign(num_vars, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (t.basis[i] < num_vars) result.point[t.basis[i]] = t.row[i][n_cols];
  result.objective = Rational(0);
  for (std::size_t j = 0; j < num_vars; ++j)
    result.objective += objective[j] * result.point[j];
  return result;
}

}  // namespace rmdpq
