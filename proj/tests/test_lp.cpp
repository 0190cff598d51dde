//
// Copyright 2026 The pancakes Authors
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
//


#include "pancakes/lp.hpp"

#include <cmath>
#include <limits>

#include "gtest/gtest.h"
#include "pancakes/random.hpp"

namespace pancakes {
namespace {

using Matrix = SimplexSolver::Matrix;

TEST(SimplexTest, TextbookOptimum) {
  // max 3x + 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18  ->  (2, 6), 36.
  Matrix a(3, 2);
  a << 1, 0, 0, 2, 3, 2;
  Eigen::VectorXd b(3);
  b << 4, 12, 18;
  Eigen::VectorXd c(2);
  c << 3, 5;
  const auto res = SimplexSolver(a, b, c).solve();
  ASSERT_EQ(res.status, LpStatus::kOptimal);
  EXPECT_NEAR(res.objective, 36.0, 1e-12);
  EXPECT_NEAR(res.x[0], 2.0, 1e-12);
  EXPECT_NEAR(res.x[1], 6.0, 1e-12);
}

TEST(SimplexTest, OriginOptimalWhenCostsNonpositive) {
  Matrix a(1, 2);
  a << 1, 1;
  Eigen::VectorXd b(1);
  b << 1;
  Eigen::VectorXd c(2);
  c << -1, 0;
  const auto res = SimplexSolver(a, b, c).solve();
  EXPECT_EQ(res.status, LpStatus::kOptimal);
  EXPECT_EQ(res.objective, 0.0);
  EXPECT_EQ(res.pivots, 0u);
}

TEST(SimplexTest, DetectsUnbounded) {
  // max x  s.t.  x - y <= 1.
  Matrix a(1, 2);
  a << 1, -1;
  Eigen::VectorXd b(1);
  b << 1;
  Eigen::VectorXd c(2);
  c << 1, 0;
  EXPECT_EQ(SimplexSolver(a, b, c).solve().status, LpStatus::kUnbounded);
}

TEST(SimplexTest, DegenerateVertex) {
  // Zero right-hand sides make the origin degenerate; the optimum is still found.
  Matrix a(3, 2);
  a << 1, -1, -1, 1, 1, 1;
  Eigen::VectorXd b(3);
  b << 0, 0, 2;
  Eigen::VectorXd c(2);
  c << 1, 1;
  const auto res = SimplexSolver(a, b, c).solve();
  ASSERT_EQ(res.status, LpStatus::kOptimal);
  EXPECT_NEAR(res.objective, 2.0, 1e-12);
  EXPECT_NEAR(res.x[0], 1.0, 1e-12);
  EXPECT_NEAR(res.x[1], 1.0, 1e-12);
}

TEST(SimplexTest, RandomInstancesAreFeasibleAndDualBounded) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng = make_stream(seed);
    const int m = 12;
    const int n = 8;
    Matrix a(m, n);
    Eigen::VectorXd b(m);
    Eigen::VectorXd c(n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = uniform01(rng);
      b[i] = 1.0 + uniform01(rng);
    }
    for (int j = 0; j < n; ++j) c[j] = uniform01(rng);
    const auto res = SimplexSolver(a, b, c).solve();
    ASSERT_EQ(res.status, LpStatus::kOptimal);
    Eigen::Map<const Eigen::VectorXd> x(res.x.data(), n);
    EXPECT_GE(x.minCoeff(), 0.0);
    EXPECT_LE(((a * x) - b).maxCoeff(), 1e-9);
    EXPECT_NEAR(c.dot(x), res.objective, 1e-9);
    // Weak duality with y = (max_j c_j / min_i a_ij) on the tightest row.
    double upper = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      double ratio = 0.0;
      for (int j = 0; j < n; ++j) ratio = std::max(ratio, c[j] / a(i, j));
      upper = std::min(upper, ratio * b[i]);
    }
    EXPECT_LE(res.objective, upper + 1e-9);
  }
}

TEST(SimplexTest, RejectsNegativeRightHandSide) {
  Matrix a(1, 1);
  a << 1;
  Eigen::VectorXd b(1);
  b << -1;
  Eigen::VectorXd c(1);
  c << 1;
  EXPECT_THROW(SimplexSolver(a, b, c), InvalidParameter);
}

}  // namespace
}  // namespace pancakes
