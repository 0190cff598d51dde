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

// Probabilists' Hermite polynomials He_k, their roots, Gauss-Hermite weights
// and the moment-matching pair (A, B) built from the roots of He_k and
// He_{k-1}.

#ifndef PANCAKES_HERMITE_HPP
#define PANCAKES_HERMITE_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pancakes/errors.hpp"
#include "pancakes/gaussian_core.hpp"

namespace pancakes {

inline constexpr int kMaxHermiteDegree = 64;

/// He_k in the monomial basis, coefficients[i] multiplies x^i.
struct HermitePoly {
  int degree = 0;
  std::vector<double> coefficients;

  [[nodiscard]] double operator()(double x) const {
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
      acc = acc * x + *it;
    }
    return acc;
  }
};

inline HermitePoly hermite_poly(int k) {
  if (k < 0 || k > kMaxHermiteDegree) {
    throw InvalidParameter("hermite_poly: degree must be in [0, 64]");
  }
  std::vector<double> prev{1.0};  // He_0
  if (k == 0) return {0, prev};
  std::vector<double> cur{0.0, 1.0};  // He_1
  for (int j = 1; j < k; ++j) {
    // He_{j+1} = x He_j - j He_{j-1}
    std::vector<double> next(j + 2, 0.0);
    for (int i = 0; i <= j; ++i) next[i + 1] += cur[i];
    for (int i = 0; i < j; ++i) next[i] -= j * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {k, cur};
}

// He_k(x) by the three-term recurrence (stable; no coefficient blow-up).
inline double hermite_eval(int k, double x) {
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int j = 1; j < k; ++j) {
    const double next = x * cur - j * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Normalized He_k / sqrt(k!) by its own recurrence; stays O(1) near roots.
inline double normalized_hermite_eval(int k, double x) {
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int j = 1; j < k; ++j) {
    const double next = (x * cur - std::sqrt(static_cast<double>(j)) * prev) /
                        std::sqrt(static_cast<double>(j + 1));
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Eigenvalues of the symmetric Jacobi matrix with off-diagonal sqrt(1..k-1)
/// (Golub-Welsch), each polished by one Newton step on He_k.
inline std::vector<double> hermite_roots(int k) {
  if (k < 1 || k > kMaxHermiteDegree) {
    throw InvalidParameter("hermite_roots: degree must be in [1, 64]");
  }
  if (k == 1) return {0.0};
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd sub(k - 1);
  for (int i = 0; i < k - 1; ++i) sub[i] = std::sqrt(static_cast<double>(i + 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConsistencyError("hermite_roots: tridiagonal eigensolver failed");
  }
  std::vector<double> roots(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + k);
  for (double& x : roots) {
    // He_k' = k He_{k-1}; ratio taken on the normalized family to avoid overflow.
    const double f = normalized_hermite_eval(k, x);
    const double df = std::sqrt(static_cast<double>(k)) * normalized_hermite_eval(k - 1, x);
    if (df != 0.0) x -= f / df;
  }
  std::sort(roots.begin(), roots.end());
  // He_k has parity k; make the root set exactly symmetric.
  for (int i = 0; i < k / 2; ++i) {
    const double r = 0.5 * (roots[k - 1 - i] - roots[i]);
    roots[i] = -r;
    roots[k - 1 - i] = r;
  }
  if (k % 2 == 1) roots[k / 2] = 0.0;
  return roots;
}

/// Finite distribution on the real line. Support strictly increasing,
/// weights positive and summing to one.
class DiscreteDist {
 public:
  DiscreteDist(std::vector<double> support, std::vector<double> weights)
      : support_(std::move(support)), weights_(std::move(weights)) {
    detail::require(!support_.empty() && support_.size() == weights_.size(),
                    "DiscreteDist: support and weights must be nonempty and equal length");
    double total = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      detail::require(weights_[i] > 0.0, "DiscreteDist: weights must be positive");
      if (i > 0) {
        detail::require(support_[i] > support_[i - 1],
                        "DiscreteDist: support must be strictly increasing");
      }
      total += weights_[i];
    }
    detail::require(std::abs(total - 1.0) < 1e-12, "DiscreteDist: weights must sum to 1");
  }

  [[nodiscard]] const std::vector<double>& support() const { return support_; }
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }
  [[nodiscard]] std::size_t size() const { return support_.size(); }

  // Terms are added in mirrored pairs from the middle outward; exactly
  // mirrored pairs are combined by parity, so odd moments of a symmetric
  // distribution vanish regardless of FMA contraction.
  [[nodiscard]] double moment(int order) const {
    const std::size_t n = support_.size();
    auto term = [&](std::size_t i) { return weights_[i] * std::pow(support_[i], order); };
    double total = n % 2 == 1 ? term(n / 2) : 0.0;
    for (std::size_t i = n / 2; i-- > 0;) {
      const std::size_t j = n - 1 - i;
      if (support_[j] == -support_[i] && weights_[j] == weights_[i]) {
        if (order % 2 == 0) total += 2.0 * term(i);
      } else {
        total += term(i) + term(j);
      }
    }
    return total;
  }

 private:
  std::vector<double> support_;
  std::vector<double> weights_;
};

/// Gauss-Hermite rule for the unit Gaussian: support = roots of He_k,
/// weight_i = k! / (k^2 He_{k-1}(x_i)^2). Integrates degree <= 2k-1 exactly.
inline DiscreteDist gauss_hermite_weights(int k) {
  const auto roots = hermite_roots(k);
  if (k == 1) return DiscreteDist({0.0}, {1.0});
  std::vector<double> weights(k);
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    // k!/(k^2 He_{k-1}^2) = 1/(k * normalized He_{k-1}^2) since He_{k-1}^2 = (k-1)! h^2.
    const double h = normalized_hermite_eval(k - 1, roots[i]);
    weights[i] = 1.0 / (k * h * h);
    total += weights[i];
  }
  // The analytic weights already sum to 1; this removes rounding only.
  for (double& w : weights) w /= total;
  // Symmetrize: roots come in +-pairs, weights must match exactly.
  for (int i = 0; i < k / 2; ++i) {
    const double avg = 0.5 * (weights[i] + weights[k - 1 - i]);
    weights[i] = weights[k - 1 - i] = avg;
  }
  return DiscreteDist(roots, std::move(weights));
}

/// The moment-matching pair: A on the roots of He_k, B on the roots of
/// He_{k-1}, plus the geometry of the union of their supports.
struct MomentPair {
  int k = 2;
  DiscreteDist a;
  DiscreteDist b;
  double min_gap = 0.0;  // smallest distance between two points of supp A u supp B
  double max_abs = 0.0;  // largest |point| in the union
};

inline MomentPair moment_pair(int k) {
  if (k < 2 || k > kMaxHermiteDegree) {
    throw InvalidParameter("moment_pair: k must be in [2, 64]");
  }
  DiscreteDist a = gauss_hermite_weights(k);
  DiscreteDist b = gauss_hermite_weights(k - 1);

  // Strict interlacing: a_0 < b_0 < a_1 < ... < b_{k-2} < a_{k-1}.
  std::vector<double> merged;
  for (int i = 0; i < k; ++i) {
    merged.push_back(a.support()[i]);
    if (i < k - 1) merged.push_back(b.support()[i]);
  }
  double gap = kInf;
  for (std::size_t i = 1; i < merged.size(); ++i) {
    if (!(merged[i] > merged[i - 1])) {
      throw ConsistencyError("moment_pair: roots of He_" + std::to_string(k) +
                             " and He_" + std::to_string(k - 1) +
                             " do not interlace");
    }
    gap = std::min(gap, merged[i] - merged[i - 1]);
  }
  const double max_abs = std::max(std::abs(merged.front()), std::abs(merged.back()));
  return {k, std::move(a), std::move(b), gap, max_abs};
}

template <class D>
concept HasMoments = requires(const D& d, int order) {
  { d.moment(order) } -> std::convertible_to<double>;
};

/// max_{1 <= l <= max_order} |E X^l - E Z^l| with Z ~ N(0, 1).
template <HasMoments D>
double moment_deviation(const D& dist, int max_order) {
  double worst = 0.0;
  for (int l = 1; l <= max_order; ++l) {
    worst = std::max(worst, std::abs(dist.moment(l) - gaussian_moment(l)));
  }
  return worst;
}

/// Deviation scaled by max(1, E Z^l). Raw moments grow like (l-1)!!, so at
/// high order the absolute deviation is dominated by rounding of E Z^l itself.
template <HasMoments D>
double relative_moment_deviation(const D& dist, int max_order) {
  double worst = 0.0;
  for (int l = 1; l <= max_order; ++l) {
    const double g = gaussian_moment(l);
    worst = std::max(worst, std::abs(dist.moment(l) - g) / std::max(1.0, g));
  }
  return worst;
}

// Same, with moments of a density obtained by quadrature.
template <class Density>
double moment_deviation(Density&& density, const IntegrationSpec& spec, int max_order) {
  double worst = 0.0;
  for (int l = 1; l <= max_order; ++l) {
    double m = 0.0;
    for (const auto& piece : spec.pieces) {
      m += integrate([&](double x) { return std::pow(x, l) * density(x); }, piece.lo,
                     piece.hi, spec.breakpoints, 1e-13);
    }
    worst = std::max(worst, std::abs(m - gaussian_moment(l)));
  }
  return worst;
}

}  // namespace pancakes

#endif  // PANCAKES_HERMITE_HPP
