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

// Gaussian conventions shared by both instance families.
//
// Widths follow the lattice convention rho_s(x) = exp(-pi |x/s|^2), i.e. a
// Gaussian with variance s^2 / (2 pi). Use sd_from_width / width_from_sd to
// move between this and ordinary standard deviations.

#ifndef PANCAKES_GAUSSIAN_CORE_HPP
#define PANCAKES_GAUSSIAN_CORE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "pancakes/errors.hpp"
#include "pancakes/interval.hpp"
#include "pancakes/quadrature.hpp"
#include "pancakes/random.hpp"

namespace pancakes {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr int kMaxMomentOrder = 64;

inline double sd_from_width(double width) {
  return width / std::sqrt(2.0 * std::numbers::pi);
}

inline double width_from_sd(double sd) {
  return sd * std::sqrt(2.0 * std::numbers::pi);
}

/// Width and center of rho_s(x; c) = rho_s(x - c).
struct RhoParams {
  double width = 1.0;
  double center = 0.0;

  [[nodiscard]] double variance() const {
    return width * width / (2.0 * std::numbers::pi);
  }
};

inline double rho(std::span<const double> x, double width) {
  if (!(width > 0.0)) throw InvalidParameter("rho: width must be positive");
  double norm2 = 0.0;
  for (double v : x) norm2 += (v / width) * (v / width);
  return std::exp(-std::numbers::pi * norm2);
}

inline double rho(double x, double width) {
  return rho(std::span<const double>(&x, 1), width);
}

inline double rho(double x, const RhoParams& p) {
  return rho(x - p.center, p.width);
}

// Standard normal pdf and cdf.
inline double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

inline double normal_cdf(double z) {
  return 0.5 * boost::math::erfc(-z / std::numbers::sqrt2);
}

// Unit-variance Gaussian moment E Z^l: (l-1)!! for even l, 0 for odd l.
// Exact products up to l = 33, log-gamma beyond.
inline double gaussian_moment(int order) {
  if (order < 0) throw InvalidParameter("gaussian_moment: negative order");
  if (order % 2 == 1) return 0.0;
  if (order <= 33) {
    double result = 1.0;
    for (int j = order - 1; j > 1; j -= 2) result *= j;
    return result;
  }
  // (l-1)!! = 2^{l/2} Gamma((l+1)/2) / sqrt(pi)
  const double half = 0.5 * order;
  return std::exp(half * std::log(2.0) + std::lgamma(half + 0.5) -
                  0.5 * std::log(std::numbers::pi));
}

/// Gaussian rho_s(.; mean) restricted to [mean - radius, mean + radius] and
/// renormalized. `radius` may be infinite.
class TruncatedGaussian1D {
 public:
  TruncatedGaussian1D(double mean, double width, double radius)
      : mean_(mean), width_(width), radius_(radius) {
    detail::require(std::isfinite(mean), "TruncatedGaussian1D: mean must be finite");
    detail::require(width > 0.0 && std::isfinite(width),
                    "TruncatedGaussian1D: width must be positive");
    detail::require(radius > 0.0, "TruncatedGaussian1D: radius must be positive");
    sd_ = sd_from_width(width_);
    t_ = radius_ / sd_;
    normalizer_ = std::isinf(t_) ? 1.0 : std::erf(t_ / std::numbers::sqrt2);
    if (!(normalizer_ > 0.0)) {
      throw UnderflowError("TruncatedGaussian1D: truncation keeps no mass");
    }
  }

  static TruncatedGaussian1D from_sd(double mean, double sd, double radius) {
    return {mean, width_from_sd(sd), radius};
  }

  [[nodiscard]] double mean() const { return mean_; }
  [[nodiscard]] double width() const { return width_; }
  [[nodiscard]] double radius() const { return radius_; }
  [[nodiscard]] double sd() const { return sd_; }
  /// Mass of the untruncated Gaussian inside the window, in (0, 1].
  [[nodiscard]] double normalizer() const { return normalizer_; }
  /// Truncation radius in standard deviations.
  [[nodiscard]] double standardized_radius() const { return t_; }
  [[nodiscard]] Interval support() const {
    return {mean_ - radius_, mean_ + radius_};
  }

  [[nodiscard]] double density(double x) const {
    if (std::abs(x - mean_) > radius_) return 0.0;
    return normal_pdf((x - mean_) / sd_) / (sd_ * normalizer_);
  }

  [[nodiscard]] double cdf(double x) const {
    const double z = std::clamp((x - mean_) / sd_, -t_, t_);
    if (std::isinf(t_)) return normal_cdf(z);
    const double et = std::erf(t_ / std::numbers::sqrt2);
    return (std::erf(z / std::numbers::sqrt2) + et) / (2.0 * et);
  }

  // Inverse-CDF draw on the truncated window.
  double sample(Rng& rng) const {
    const double et = std::isinf(t_) ? 1.0 : std::erf(t_ / std::numbers::sqrt2);
    for (;;) {
      const double q = (2.0 * uniform01(rng) - 1.0) * et;
      if (std::abs(q) >= 1.0) continue;
      const double z = std::clamp(std::numbers::sqrt2 * boost::math::erf_inv(q), -t_, t_);
      return mean_ + sd_ * z;
    }
  }

  /// E[X^order] in closed form.
  [[nodiscard]] double moment(int order) const {
    if (order < 0 || order > kMaxMomentOrder) {
      throw InvalidParameter("truncated moment order must be in [0, 64]");
    }
    const auto m = standardized_moments(order);
    double total = 0.0;
    double binom = 1.0;  // C(order, r)
    for (int r = 0; r <= order; ++r) {
      if (r > 0) binom = binom * (order - r + 1) / r;
      if (r % 2 == 1) continue;
      total += binom * std::pow(mean_, order - r) * std::pow(sd_, r) * m[r];
    }
    return total;
  }

 private:
  // Moments of the standard normal truncated to [-t, t]. Odd moments vanish.
  // Boundary-term recurrence m_r = (r-1) m_{r-2} - 2 t^{r-1} phi(t) / Z; for
  // t <= 3 the recurrence cancels catastrophically, so the power series of
  // exp(-z^2/2) integrated term by term is used instead.
  [[nodiscard]] std::vector<double> standardized_moments(int order) const {
    std::vector<double> m(order + 1, 0.0);
    m[0] = 1.0;
    if (std::isinf(t_)) {
      for (int r = 2; r <= order; r += 2) m[r] = gaussian_moment(r);
      return m;
    }
    if (t_ <= 3.0) {
      const double scale = 2.0 / (std::sqrt(2.0 * std::numbers::pi) * normalizer_);
      for (int r = 2; r <= order; r += 2) {
        double sum = 0.0;
        double coef = 1.0;  // (-1/2)^j / j!
        for (int j = 0; j < 400; ++j) {
          const double term = coef * std::pow(t_, r + 2 * j + 1) / (r + 2 * j + 1);
          sum += term;
          if (j > 2 && std::abs(term) < 1e-18 * std::abs(sum)) break;
          coef *= -0.5 / (j + 1);
        }
        m[r] = scale * sum;
      }
      return m;
    }
    const double boundary = 2.0 * normal_pdf(t_) / normalizer_;
    for (int r = 2; r <= order; r += 2) {
      m[r] = (r - 1) * m[r - 2] - boundary * std::pow(t_, r - 1);
    }
    return m;
  }

  double mean_;
  double width_;
  double radius_;
  double sd_ = 1.0;
  double t_ = kInf;
  double normalizer_ = 1.0;
};

inline double truncated_gaussian_sample(const TruncatedGaussian1D& g, Rng& rng) {
  return g.sample(rng);
}

inline double truncated_gaussian_moment(const TruncatedGaussian1D& g, int order) {
  return g.moment(order);
}

/// Finite mixture of truncated Gaussians on the line; weights renormalized
/// at construction.
class TruncatedMixture {
 public:
  struct Component {
    double weight;
    TruncatedGaussian1D dist;
  };

  explicit TruncatedMixture(std::vector<Component> components)
      : components_(std::move(components)) {
    detail::require(!components_.empty(), "TruncatedMixture: no components");
    double total = 0.0;
    for (const auto& c : components_) {
      detail::require(c.weight >= 0.0 && std::isfinite(c.weight),
                      "TruncatedMixture: weights must be finite and nonnegative");
      total += c.weight;
    }
    detail::require(total > 0.0, "TruncatedMixture: zero total weight");
    cumulative_.reserve(components_.size());
    double running = 0.0;
    for (auto& c : components_) {
      c.weight /= total;
      running += c.weight;
      cumulative_.push_back(running);
    }
  }

  [[nodiscard]] const std::vector<Component>& components() const { return components_; }
  [[nodiscard]] std::size_t size() const { return components_.size(); }

  [[nodiscard]] double density(double x) const {
    double total = 0.0;
    for (const auto& c : components_) total += c.weight * c.dist.density(x);
    return total;
  }

  [[nodiscard]] double cdf(double x) const {
    double total = 0.0;
    for (const auto& c : components_) total += c.weight * c.dist.cdf(x);
    return total;
  }

  [[nodiscard]] double moment(int order) const {
    double total = 0.0;
    for (const auto& c : components_) total += c.weight * c.dist.moment(order);
    return total;
  }

  [[nodiscard]] std::size_t sample_component(Rng& rng) const {
    const double u = uniform01(rng);
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                 components_.size() - 1);
  }

  double sample(Rng& rng) const {
    return components_[sample_component(rng)].dist.sample(rng);
  }

  /// Component windows, clipped to `clip` standard deviations for
  /// untruncated components so they can be handed to quadrature.
  [[nodiscard]] std::vector<Interval> support(double clip = 40.0) const {
    std::vector<Interval> out;
    for (const auto& c : components_) {
      const double r = std::min(c.dist.radius(), clip * c.dist.sd());
      out.push_back({c.dist.mean() - r, c.dist.mean() + r});
    }
    return out;
  }

  /// Window endpoints and means; quadrature splits there.
  [[nodiscard]] std::vector<double> breakpoints() const {
    std::vector<double> out;
    for (const auto& c : components_) {
      out.push_back(c.dist.mean());
      if (std::isfinite(c.dist.radius())) {
        out.push_back(c.dist.mean() - c.dist.radius());
        out.push_back(c.dist.mean() + c.dist.radius());
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<Component> components_;
  std::vector<double> cumulative_;
};

/// Normalized weights proportional to rho_s(k; c) for k = -n..n.
struct DiscreteGaussianWeights {
  double width = 1.0;
  double phase = 0.0;
  int range = 1;
  std::vector<double> weights;  // index k + range

  [[nodiscard]] double weight(int k) const { return weights.at(k + range); }
};

inline DiscreteGaussianWeights discrete_gaussian_weights(double width, double phase,
                                                         int range) {
  detail::require(width > 0.0, "discrete_gaussian_weights: width must be positive");
  detail::require(phase >= 0.0 && phase < 1.0,
                  "discrete_gaussian_weights: phase must lie in [0, 1)");
  detail::require(range >= 1, "discrete_gaussian_weights: range must be >= 1");

  std::vector<double> logw(2 * range + 1);
  for (int k = -range; k <= range; ++k) {
    const double d = (k - phase) / width;
    logw[k + range] = -std::numbers::pi * d * d;
  }
  const double top = *std::max_element(logw.begin(), logw.end());
  if (!std::isfinite(top)) {
    throw UnderflowError("discrete_gaussian_weights: all log-weights are -inf");
  }
  double total = 0.0;
  for (double& v : logw) {
    v = std::exp(v - top);
    total += v;
  }
  for (double& v : logw) v /= total;
  return {width, phase, range, std::move(logw)};
}

// log of sum_{|l| > n} rho_s(l) / sum_l rho_s(l).
inline double log_truncation_mass(double width, int range) {
  detail::require(width > 0.0, "truncation_mass: width must be positive");
  detail::require(range >= 1, "truncation_mass: range must be >= 1");
  const double a = std::numbers::pi / (width * width);
  auto log_term = [a](double l) { return -a * l * l; };

  // Tail: terms relative to the leading term l = n + 1.
  const double lead = log_term(range + 1.0);
  double tail = 0.0;
  for (long l = range + 1;; ++l) {
    const double rel = std::exp(log_term(static_cast<double>(l)) - lead);
    tail += rel;
    if (rel < 1e-20 * tail) break;
  }
  // Full sum relative to the l = 0 term.
  double full = 1.0;
  for (long l = 1;; ++l) {
    const double term = std::exp(log_term(static_cast<double>(l)));
    full += 2.0 * term;
    if (term < 1e-20 * full) break;
  }
  return std::log(2.0) + lead + std::log(tail) - std::log(full);
}

/// Probability that a draw from the discrete Gaussian D_{Z, s} lands outside
/// {-n..n}; the coupling failure probability of keeping 2n+1 components.
inline double truncation_mass(double width, int range) {
  return std::exp(log_truncation_mass(width, range));
}

/// Integration domain for a piecewise-smooth density: disjoint pieces plus
/// interior breakpoints where the integrand has kinks.
struct IntegrationSpec {
  std::vector<Interval> pieces;
  std::vector<double> breakpoints;
};

// chi^2(p, N(0,1)) = int p^2 / G - 1 over the support of p.
template <class Density>
double chi2_divergence_1d(Density&& p, const IntegrationSpec& spec) {
  bool overflow = false;
  double where = 0.0;
  auto integrand = [&](double x) {
    const double px = p(x);
    if (px == 0.0) return 0.0;
    // Log-space, so a subnormal p(x) in the far tail cannot meet exp overflow.
    const double v = std::sqrt(2.0 * std::numbers::pi) * std::exp(2.0 * std::log(px) + 0.5 * x * x);
    if (!std::isfinite(v)) {
      overflow = true;
      where = x;
      return 0.0;
    }
    return v;
  };
  double total = 0.0;
  for (const auto& piece : spec.pieces) {
    total += integrate(integrand, piece.lo, piece.hi, spec.breakpoints, 1e-12);
  }
  if (overflow || !std::isfinite(total)) {
    throw OverflowError("chi2_divergence_1d: p^2/G overflows near x = " +
                        std::to_string(where) +
                        "; p has mass where the Gaussian is negligible");
  }
  return total - 1.0;
}

inline double tvd_discrete(std::span<const double> p, std::span<const double> q) {
  detail::require(p.size() == q.size(), "tvd_discrete: mismatched support sizes");
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += std::abs(p[i] - q[i]);
  return 0.5 * total;
}

}  // namespace pancakes

#endif  // PANCAKES_GAUSSIAN_CORE_HPP
