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

#include "rmdpq/simplex.hpp"

using rmdpq::LpConstraint;
using rmdpq::LpRelation;
using rmdpq::LpStatus;
using rmdpq::Rational;
using rmdpq::solve_lp;

namespace {

LpConstraint row(std::vector<long long> coeffs, LpRelation rel, Rational rhs) {
  LpConstraint c;
  for (long long v : coeffs) c.coeffs.push_back(Rational(v));
  c.rel = rel;
  c.rhs = rhs;
  return c;
}

}  // namespace

TEST_CASE("maximize over a triangle") {
  // max x + y st x + y <= 1 -> 1, exact vertex.
  const auto r = solve_lp(
      2, {row({1, 1}, LpRelation::kLe, Rational(1))}, {Rational(1), Rational(1)});
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == Rational(1));
}

TEST_CASE("equality constraints and exact rationals") {
  // max 3x + 2y st x + y = 1, x - y <= 1/3 -> x = 2/3, y = 1/3.
  const auto r = solve_lp(2,
                          {row({1, 1}, LpRelation::kEq, Rational(1)),
                           row({1, -1}, LpRelation::kLe, Rational(1, 3))},
                          {Rational(3), Rational(2)});
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == Rational(8, 3));
  CHECK(r.point[0] == Rational(2, 3));
  CHECK(r.point[1] == Rational(1, 3));
}

TEST_CASE("infeasibility is detected") {
  const auto r = solve_lp(1,
                          {row({1}, LpRelation::kLe, Rational(-1))},
                          {Rational(1)});
  CHECK(r.status == LpStatus::kInfeasible);

  const auto r2 = solve_lp(2,
                           {row({1, 1}, LpRelation::kEq, Rational(1)),
                            row({1, 1}, LpRelation::kEq, Rational(2))},
                           {Rational(0), Rational(0)});
  CHECK(r2.status == LpStatus::kInfeasible);
}

TEST_CASE("unboundedness is detected") {
  const auto r = solve_lp(2, {row({1, -1}, LpRelation::kLe, Rational(1))},
                          {Rational(0), Rational(1)});
  CHECK(r.status == LpStatus::kUnbounded);
}

TEST_CASE("degenerate problems terminate under Bland's rule") {
  // Degenerate vertex: three constraints meet at the origin-adjacent corner
  // with tied zero ratios.
  const auto r = solve_lp(4,
                          {row({1, 1, 1, 1}, LpRelation::kLe, Rational(40)),
                           row({2, 1, -1, -1}, LpRelation::kLe, Rational(0)),
                           row({1, 0, -1, 0}, LpRelation::kLe, Rational(0)),
                           row({0, -1, 0, 1}, LpRelation::kLe, Rational(10))},
                          {Rational(3, 4), Rational(-150), Rational(1, 50),
                           Rational(-6)});
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective.is_positive());
}

TEST_CASE("redundant equalities leave artificials inert") {
  // x = 1/2 twice plus simplex row; still optimal with the right point.
  const auto r = solve_lp(2,
                          {row({1, 0}, LpRelation::kEq, Rational(1, 2)),
                           row({1, 0}, LpRelation::kEq, Rational(1, 2)),
                           row({1, 1}, LpRelation::kEq, Rational(1))},
                          {Rational(0), Rational(1)});
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == Rational(1, 2));
}

TEST_CASE("probability-simplex feasibility with pinned coordinates") {
  // p on a 3-simplex, p[2] = 0, p[0] - p[1] <= -1 infeasible (needs p1 > 1).
  const auto feas = [&](Rational bound) {
    return solve_lp(3,
                    {row({1, 1, 1}, LpRelation::kEq, Rational(1)),
                     row({0, 0, 1}, LpRelation::kEq, Rational(0)),
                     LpConstraint{{Rational(1), Rational(-1), Rational(0)},
                                  LpRelation::kLe, bound}},
                    {Rational(0), Rational(0), Rational(0)})
        .status;
  };
  CHECK(feas(Rational(-1)) == LpStatus::kOptimal);   // p = (0, 1, 0)
  CHECK(feas(Rational(-2)) == LpStatus::kInfeasible);
}
