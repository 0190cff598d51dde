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

// Continuous LWE and its homogeneous, truncated variant.
//
// Along the hidden direction w the homogeneous distribution at phase c is a
// mixture over integers k of Gaussians of rho-width beta / sqrt(beta^2 +
// gamma^2) centered at u (k - c), u = gamma / (gamma^2 + beta^2), weighted by
// rho_{sqrt(beta^2 + gamma^2)}(k; c). Orthogonal to w it is N(0, I / (2 pi)).
// The truncated variant keeps k in {-n..n} and clips each component to
// radius alpha = u / 10.

#ifndef PANCAKES_HCLWE_HPP
#define PANCAKES_HCLWE_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pancakes/dataset.hpp"
#include "pancakes/errors.hpp"
#include "pancakes/gaussian_core.hpp"
#include "pancakes/interval.hpp"
#include "pancakes/random.hpp"

namespace pancakes {

struct HclweParams {
  int n = 1;
  double gamma = 2.0;
  double beta = 1.0;
  double phase = 0.0;
  int range = 1;  // components k in {-range..range}

  // gamma = 2 sqrt(n), beta = 1/n, range = n.
  static HclweParams defaults(int n, double phase = 0.0) {
    return {n, 2.0 * std::sqrt(static_cast<double>(n)), 1.0 / n, phase, n};
  }

  void validate() const {
    detail::require(n >= 1, "HclweParams: n must be >= 1");
    detail::require(range >= 1, "HclweParams: range must be >= 1");
    detail::require(beta > 0.0 && beta <= gamma, "HclweParams: need 0 < beta <= gamma");
    detail::require(phase >= 0.0 && phase < 1.0, "HclweParams: phase must lie in [0, 1)");
  }

  [[nodiscard]] HclweParams with_phase(double c) const {
    HclweParams p = *this;
    p.phase = c;
    return p;
  }

  /// Distance u between consecutive component centers.
  [[nodiscard]] double spacing() const { return gamma / (gamma * gamma + beta * beta); }
  [[nodiscard]] double alpha() const { return spacing() / 10.0; }
  [[nodiscard]] double mixture_width() const { return std::sqrt(beta * beta + gamma * gamma); }
  [[nodiscard]] double component_width() const { return beta / mixture_width(); }
  [[nodiscard]] double center(int k) const { return spacing() * (k - phase); }

  [[nodiscard]] DiscreteGaussianWeights weights(int extra = 0) const {
    return discrete_gaussian_weights(mixture_width(), phase, range + extra);
  }

  // Density of <x, w> as an exactly normalized mixture. `truncated` clips
  // components to radius alpha; `extra` adds components beyond the range.
  [[nodiscard]] TruncatedMixture projected(bool truncated = true, int extra = 0) const {
    validate();
    const auto wts = weights(extra);
    const double radius = truncated ? alpha() : kInf;
    std::vector<TruncatedMixture::Component> comps;
    for (int k = -(range + extra); k <= range + extra; ++k) {
      comps.push_back({wts.weight(k), TruncatedGaussian1D(center(k), component_width(), radius)});
    }
    return TruncatedMixture(std::move(comps));
  }

  [[nodiscard]] nlohmann::json to_json() const {
    return {{"n", n}, {"gamma", gamma}, {"beta", beta}, {"phase", phase}, {"range", range},
            {"alpha", alpha()}, {"spacing", spacing()}};
  }
};

struct ClweSample {
  std::vector<double> y;
  double z = 0.0;
};

/// y ~ N(0, I/(2 pi)), e ~ N(0, beta^2/(2 pi)), z = gamma <y, w> + e mod 1.
inline std::vector<ClweSample> clwe_sample(std::span<const double> w, double gamma,
                                           double beta, std::size_t m, Rng& rng) {
  require_unit(w, "clwe_sample");
  detail::require(gamma > 0.0 && beta > 0.0, "clwe_sample: gamma and beta must be positive");
  const double sd = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  std::vector<ClweSample> out(m);
  for (auto& s : out) {
    s.y.resize(w.size());
    for (auto& v : s.y) v = sd * standard_normal(rng);
    const double e = beta * sd * standard_normal(rng);
    const double raw = gamma * dot(s.y, w) + e;
    s.z = raw - std::floor(raw);
    if (s.z >= 1.0) s.z = 0.0;
  }
  return out;
}

enum class HclweForm { kUntruncated, kTruncated };

// Unnormalized density at y. Untruncated form sums |k| <= range + 20; the
// truncated form keeps |k| <= range and clips components to radius alpha.
inline double hclwe_density(const HclweParams& p, std::span<const double> w,
                            std::span<const double> y, HclweForm form = HclweForm::kUntruncated) {
  p.validate();
  detail::require(w.size() == y.size(), "hclwe_density: dimension mismatch");
  const double along = dot(w, y);
  const double perp2 = std::max(0.0, dot(y, y) - along * along);
  const double orth = std::exp(-std::numbers::pi * perp2);
  const double s_mix = p.mixture_width();
  const double s_comp = p.component_width();

  double total = 0.0;
  if (form == HclweForm::kUntruncated) {
    const int kmax = p.range + 20;
    for (int k = -kmax; k <= kmax; ++k) {
      total += rho(k - p.phase, s_mix) * rho(along - p.center(k), s_comp);
    }
  } else {
    const double alpha = p.alpha();
    const double z = TruncatedGaussian1D(0.0, s_comp, alpha).normalizer();
    for (int k = -p.range; k <= p.range; ++k) {
      const double off = along - p.center(k);
      if (std::abs(off) <= alpha) total += rho(k - p.phase, s_mix) * rho(off, s_comp) / z;
    }
  }
  return total * orth;
}

/// Windows [mu_k - alpha, mu_k + alpha], sorted, checked pairwise disjoint.
inline std::vector<Interval> support_intervals(const HclweParams& p) {
  p.validate();
  std::vector<Interval> out;
  const double alpha = p.alpha();
  for (int k = -p.range; k <= p.range; ++k) out.push_back({p.center(k) - alpha, p.center(k) + alpha});
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i].lo > out[i - 1].hi)) {
      throw ConsistencyError("support_intervals: windows " + std::to_string(i - 1) + " and " +
                             std::to_string(i) + " overlap");
    }
  }
  return out;
}

// Distance between the supports of two parameter sets sharing gamma and
// beta; checked against the guaranteed floor u / 5.
inline double cross_family_gap(const HclweParams& p0, const HclweParams& p1) {
  const auto a = support_intervals(p0);
  const auto b = support_intervals(p1);
  const double gap = set_distance(a, b);
  if (!(gap >= p0.spacing() / 5.0)) {
    throw ConsistencyError("cross_family_gap: supports closer than u/5");
  }
  return gap;
}

/// TVD between the truncated (2n+1)-component projection and the one with
/// `extra` more components on each side. Windows are disjoint and both
/// mixtures share the component shape inside each, so the integral of
/// |p - q| over window k is |a_k - b_k| times the component mass, which is
/// integrated numerically. Scaling out the weights keeps the quadrature
/// well conditioned when a weight is subnormal.
inline double truncation_tvd(const HclweParams& p, int extra) {
  detail::require(extra >= 1, "truncation_tvd: extra must be >= 1");
  const TruncatedMixture kept = p.projected(true);
  const TruncatedMixture wide = p.projected(true, extra);
  const auto& kc = kept.components();
  const auto& wc = wide.components();
  double tvd = 0.0;
  for (int k = -(p.range + extra); k <= p.range + extra; ++k) {
    const auto& c = wc[static_cast<std::size_t>(k + p.range + extra)];
    const double a = std::abs(k) <= p.range ? kc[static_cast<std::size_t>(k + p.range)].weight : 0.0;
    if (a == c.weight) continue;
    const Interval s = c.dist.support();
    const double mid = s.center();
    const double mass =
        integrate([&](double z) { return c.dist.density(z); }, s.lo, s.hi, {&mid, 1});
    tvd += 0.5 * std::abs(a - c.weight) * mass;
  }
  return tvd;
}

struct HclweSamples {
  std::size_t dim = 0;
  std::vector<double> points;   // row-major
  std::vector<int> components;  // k of each draw

  [[nodiscard]] std::size_t size() const { return components.size(); }
  [[nodiscard]] std::span<const double> point(std::size_t i) const {
    return {points.data() + i * dim, dim};
  }
};

namespace detail {

// Ancestral draw: component, then <x, w>, then the orthogonal part.
inline void draw_hclwe(const HclweParams& p, const TruncatedMixture& mix,
                       const OrthonormalCompletion& basis, Rng& rng, std::span<double> x,
                       std::span<double> rest, int* component) {
  const double sd = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  const std::size_t c = mix.sample_component(rng);
  const double z = mix.components()[c].dist.sample(rng);
  for (auto& g : rest) g = sd * standard_normal(rng);
  basis.embed(z, rest, x);
  if (component != nullptr) *component = static_cast<int>(c) - p.range;
}

}  // namespace detail

inline HclweSamples hclwe_truncated_sample(const HclweParams& p, std::span<const double> w,
                                           std::size_t m, Rng& rng) {
  p.validate();
  detail::require(w.size() == static_cast<std::size_t>(p.n),
                  "hclwe_truncated_sample: direction must live in R^n");
  OrthonormalCompletion basis(std::vector<double>(w.begin(), w.end()));
  const TruncatedMixture mix = p.projected(true);
  HclweSamples out;
  out.dim = w.size();
  out.points.resize(m * out.dim);
  out.components.resize(m);
  std::vector<double> rest(out.dim - 1);
  for (std::size_t i = 0; i < m; ++i) {
    detail::draw_hclwe(p, mix, basis,
                       rng, std::span<double>(out.points.data() + i * out.dim, out.dim), rest,
                       &out.components[i]);
  }
  return out;
}

/// 1/2 (H_{w, c=0}, +1) + 1/2 (H_{w, c=1/2}, -1), both truncated.
inline LabeledDataset sample_labeled_clwe(const HclweParams& p0, const HclweParams& p1,
                                          std::span<const double> w, std::size_t m, Rng& rng) {
  p0.validate();
  p1.validate();
  if (p0.n != p1.n || p0.gamma != p1.gamma || p0.beta != p1.beta || p0.range != p1.range) {
    throw InvalidParameter("sample_labeled_clwe: parameter sets must share n, gamma, beta, range");
  }
  detail::require(p0.phase == 0.0 && p1.phase == 0.5,
                  "sample_labeled_clwe: phases must be 0 (+1) and 1/2 (-1)");
  detail::require(w.size() == static_cast<std::size_t>(p0.n),
                  "sample_labeled_clwe: direction must live in R^n");
  OrthonormalCompletion basis(std::vector<double>(w.begin(), w.end()));
  const TruncatedMixture plus = p0.projected(true);
  const TruncatedMixture minus = p1.projected(true);

  LabeledDataset ds(w.size());
  ds.reserve(m);
  std::vector<double> x(w.size());
  std::vector<double> rest(w.size() - 1);
  for (std::size_t i = 0; i < m; ++i) {
    const int y = uniform01(rng) < 0.5 ? 1 : -1;
    detail::draw_hclwe(y > 0 ? p0 : p1, y > 0 ? plus : minus, basis, rng, x, rest, nullptr);
    ds.push_back(x, y);
  }
  ds.meta().family = "hclwe";
  ds.meta().params = p0.to_json();
  ds.meta().params.erase("phase");
  ds.meta().hidden_direction = std::vector<double>(w.begin(), w.end());
  return ds;
}

}  // namespace pancakes

#endif  // PANCAKES_HCLWE_HPP
