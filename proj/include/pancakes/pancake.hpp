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

// Statistical-query hard instance: along a hidden direction w the +1 class
// follows a smoothed, truncated copy of the Gauss-Hermite rule on He_k and
// the -1 class the same for He_{k-1}; orthogonal to w both are N(0, I).
//
// Smoothing is sqrt(1 - delta) X + sqrt(delta) Z, which keeps every Gaussian
// moment of the untruncated mixture equal to that of N(0, 1).

#ifndef PANCAKES_PANCAKE_HPP
#define PANCAKES_PANCAKE_HPP

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pancakes/dataset.hpp"
#include "pancakes/errors.hpp"
#include "pancakes/gaussian_core.hpp"
#include "pancakes/hermite.hpp"
#include "pancakes/interval.hpp"
#include "pancakes/random.hpp"

namespace pancakes {

inline constexpr double kDefaultTruncationConstant = 0.25;
inline constexpr double kDefaultRegimeExponent = 0.25;

struct PancakeComponent {
  double mean = 0.0;
  double weight = 0.0;
  Interval window;
};

struct PancakeSpec {
  int k = 2;
  long lifted_dim = 16;  // N
  double trunc_c = kDefaultTruncationConstant;
  double delta = 0.0;    // smoothing variance 1 / (k^2 ln N)
  double tau = 0.0;      // truncation half-width c sqrt(delta k ln N)
  double min_gap = 0.0;  // smallest gap between two intervals of S_A u S_B
  double regime_exponent = kDefaultRegimeExponent;
  std::vector<PancakeComponent> a_side;  // label +1
  std::vector<PancakeComponent> b_side;  // label -1

  [[nodiscard]] double component_sd() const { return std::sqrt(delta); }

  [[nodiscard]] std::vector<Interval> s_a() const { return windows(a_side); }
  [[nodiscard]] std::vector<Interval> s_b() const { return windows(b_side); }
  [[nodiscard]] std::vector<Interval> plus_intervals() const { return s_a(); }
  [[nodiscard]] std::vector<Interval> minus_intervals() const { return s_b(); }

  // A~ for label +1, B~ for label -1.
  [[nodiscard]] TruncatedMixture planted(int label) const {
    return mixture(label > 0 ? a_side : b_side, tau);
  }

  // A' / B': the smoothed mixture before truncation.
  [[nodiscard]] TruncatedMixture smoothed(int label) const {
    return mixture(label > 0 ? a_side : b_side, kInf);
  }

  // Whether k <= N^gamma for the configured exponent; reported, not enforced.
  [[nodiscard]] bool in_theorem_regime() const {
    return k <= std::pow(static_cast<double>(lifted_dim), regime_exponent);
  }

  [[nodiscard]] nlohmann::json to_json() const {
    return {{"k", k},
            {"N", lifted_dim},
            {"c", trunc_c},
            {"delta", delta},
            {"tau", tau},
            {"min_gap", min_gap},
            {"in_theorem_regime", in_theorem_regime()}};
  }

 private:
  static std::vector<Interval> windows(const std::vector<PancakeComponent>& side) {
    std::vector<Interval> out;
    for (const auto& c : side) out.push_back(c.window);
    return out;
  }

  [[nodiscard]] TruncatedMixture mixture(const std::vector<PancakeComponent>& side,
                                         double radius) const {
    std::vector<TruncatedMixture::Component> comps;
    for (const auto& c : side) {
      comps.push_back({c.weight, TruncatedGaussian1D::from_sd(c.mean, component_sd(), radius)});
    }
    return TruncatedMixture(std::move(comps));
  }
};

inline PancakeSpec build_pancake_spec(int k, long lifted_dim,
                                      double trunc_c = kDefaultTruncationConstant) {
  detail::require(k >= 2, "build_pancake_spec: k must be >= 2");
  detail::require(lifted_dim >= 16, "build_pancake_spec: N must be >= 16");
  detail::require(trunc_c > 0.0, "build_pancake_spec: truncation constant must be positive");

  PancakeSpec spec;
  spec.k = k;
  spec.lifted_dim = lifted_dim;
  spec.trunc_c = trunc_c;
  const double log_n = std::log(static_cast<double>(lifted_dim));
  spec.delta = 1.0 / (static_cast<double>(k) * k * log_n);
  spec.tau = trunc_c * std::sqrt(spec.delta * k * log_n);

  const MomentPair pair = moment_pair(k);
  const double shrink = std::sqrt(1.0 - spec.delta);
  auto fill = [&](const DiscreteDist& d, std::vector<PancakeComponent>& side) {
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double mean = shrink * d.support()[i];
      side.push_back({mean, d.weights()[i], {mean - spec.tau, mean + spec.tau}});
    }
  };
  fill(pair.a, spec.a_side);
  fill(pair.b, spec.b_side);

  // Supports interlace, so the merged order is A0 B0 A1 B1 ... A_{k-1}.
  double gap = kInf;
  for (int i = 0; i + 1 < k; ++i) {
    const auto check = [&](const Interval& left, const std::string& ln,
                           const Interval& right, const std::string& rn) {
      if (!(left.hi < right.lo)) {
        std::ostringstream msg;
        msg << "build_pancake_spec: intervals " << ln << " = [" << left.lo << ", " << left.hi
            << "] and " << rn << " = [" << right.lo << ", " << right.hi
            << "] overlap at c = " << trunc_c << "; lower c";
        throw OverlapError(msg.str());
      }
      gap = std::min(gap, right.lo - left.hi);
    };
    const auto& ai = spec.a_side[i].window;
    const auto& bi = spec.b_side[i].window;
    const auto& an = spec.a_side[i + 1].window;
    check(ai, "S_A[" + std::to_string(i) + "]", bi, "S_B[" + std::to_string(i) + "]");
    check(bi, "S_B[" + std::to_string(i) + "]", an, "S_A[" + std::to_string(i + 1) + "]");
  }
  spec.min_gap = gap;
  return spec;
}

/// D = 1/2 (D_w^A~, +1) + 1/2 (D_w^B~, -1) in R^n.
inline LabeledDataset sample_labeled_sq(const PancakeSpec& spec, std::span<const double> w,
                                        std::size_t m, Rng& rng) {
  OrthonormalCompletion basis(std::vector<double>(w.begin(), w.end()));
  const std::size_t n = w.size();
  const TruncatedMixture plus = spec.planted(+1);
  const TruncatedMixture minus = spec.planted(-1);

  LabeledDataset ds(n);
  ds.reserve(m);
  std::vector<double> rest(n - 1);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < m; ++i) {
    const int y = uniform01(rng) < 0.5 ? 1 : -1;
    const double z = (y > 0 ? plus : minus).sample(rng);
    for (auto& g : rest) g = standard_normal(rng);
    basis.embed(z, rest, x);
    ds.push_back(x, y);
  }
  ds.meta().family = "pancake-sq";
  ds.meta().params = spec.to_json();
  ds.meta().params["n"] = n;
  ds.meta().hidden_direction = std::vector<double>(w.begin(), w.end());
  return ds;
}

}  // namespace pancakes

#endif  // PANCAKES_PANCAKE_HPP
