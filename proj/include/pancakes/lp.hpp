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

// Dense simplex for  max c'x  s.t.  Ax <= b, x >= 0  with b >= 0, so the
// origin is a feasible starting vertex. Dictionary (compact tableau) form:
// one row per constraint, one column per nonbasic variable.

#ifndef PANCAKES_LP_HPP
#define PANCAKES_LP_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pancakes/errors.hpp"

namespace pancakes {

enum class LpStatus { kOptimal, kUnbounded, kIterationLimit };

struct LpResult {
  LpStatus status = LpStatus::kOptimal;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t pivots = 0;
};

class SimplexSolver {
 public:
  using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  SimplexSolver(const Matrix& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                double eps = 1e-9)
      : m_(a.rows()), n_(a.cols()), eps_(eps), d_(a.rows() + 1, a.cols() + 1) {
    detail::require(b.size() == m_ && c.size() == n_, "SimplexSolver: shape mismatch");
    for (Eigen::Index i = 0; i < m_; ++i) {
      detail::require(b[i] >= 0.0, "SimplexSolver: right-hand side must be nonnegative");
    }
    d_.topLeftCorner(m_, n_) = a;
    d_.topRightCorner(m_, 1) = b;
    d_.bottomLeftCorner(1, n_) = -c.transpose();
    d_(m_, n_) = 0.0;
    basic_.resize(m_);
    nonbasic_.resize(n_);
    for (Eigen::Index i = 0; i < m_; ++i) basic_[i] = n_ + i;
    for (Eigen::Index j = 0; j < n_; ++j) nonbasic_[j] = j;
  }

  LpResult solve(std::size_t max_pivots = 0) {
    if (max_pivots == 0) max_pivots = 50 * static_cast<std::size_t>(m_ + n_) + 1000;
    LpResult res;
    double last_objective = -std::numeric_limits<double>::infinity();
    std::size_t stalls = 0;
    while (true) {
      // Dantzig's rule; Bland's rule once the objective stalls, to rule out cycling.
      const bool bland = stalls > 50;
      Eigen::Index s = -1;
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (d_(m_, j) >= -eps_) continue;
        if (s < 0 || (bland ? nonbasic_[j] < nonbasic_[s] : d_(m_, j) < d_(m_, s))) s = j;
      }
      if (s < 0) break;

      // Harris two-pass ratio test: bound the step with a small feasibility
      // tolerance, then take the largest pivot among rows within the bound.
      double bound = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (d_(i, s) > kPivotTol) bound = std::min(bound, (d_(i, n_) + eps_) / d_(i, s));
      }
      Eigen::Index r = -1;
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (d_(i, s) <= kPivotTol || d_(i, n_) / d_(i, s) > bound) continue;
        if (r < 0 || (bland ? basic_[i] < basic_[r] : d_(i, s) > d_(r, s))) r = i;
      }
      if (r < 0) {
        res.status = LpStatus::kUnbounded;
        break;
      }
      pivot(r, s);
      ++res.pivots;
      if (d_(m_, n_) > last_objective + eps_) {
        last_objective = d_(m_, n_);
        stalls = 0;
      } else {
        ++stalls;
      }
      if (res.pivots >= max_pivots) {
        res.status = LpStatus::kIterationLimit;
        break;
      }
    }
    res.objective = d_(m_, n_);
    res.x.assign(static_cast<std::size_t>(n_), 0.0);
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basic_[i] < n_) res.x[static_cast<std::size_t>(basic_[i])] = d_(i, n_);
    }
    return res;
  }

 private:
  void pivot(Eigen::Index r, Eigen::Index s) {
    const double inv = 1.0 / d_(r, s);
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = d_(i, s) * inv;
      if (f == 0.0) continue;
      d_.row(i) -= f * d_.row(r);
      d_(i, s) = -f;
    }
    d_.row(r) *= inv;
    d_(r, s) = inv;
    // Harris steps may leave right-hand sides slightly negative.
    for (Eigen::Index i = 0; i < m_; ++i) d_(i, n_) = std::max(d_(i, n_), 0.0);
    std::swap(basic_[r], nonbasic_[s]);
  }

  static constexpr double kPivotTol = 1e-7;

  Eigen::Index m_;
  Eigen::Index n_;
  double eps_;
  Matrix d_;
  std::vector<Eigen::Index> basic_;
  std::vector<Eigen::Index> nonbasic_;
};

}  // namespace pancakes

#endif  // PANCAKES_LP_HPP
