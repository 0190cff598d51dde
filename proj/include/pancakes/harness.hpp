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

// Experiment machinery around the instances: baseline learners, the
// sample-splitting distinguisher, advantage estimation and a simulated
// statistical-query oracle.

#ifndef PANCAKES_HARNESS_HPP
#define PANCAKES_HARNESS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "pancakes/dataset.hpp"
#include "pancakes/errors.hpp"
#include "pancakes/gaussian_core.hpp"
#include "pancakes/hermite.hpp"
#include "pancakes/interval.hpp"
#include "pancakes/lp.hpp"
#include "pancakes/pancake.hpp"
#include "pancakes/quadrature.hpp"
#include "pancakes/random.hpp"
#include "pancakes/realize.hpp"

namespace pancakes {

// ---------------------------------------------------------------------------
// Hypotheses

class Hypothesis {
 public:
  enum class Kind { kLtf, kLiftedPtfIntersection, kOraclePlanted, kConstant };

  // sign(<w, x>), with 0 mapped to +1.
  static Hypothesis ltf(std::vector<double> w) {
    Hypothesis h(Kind::kLtf);
    h.weights_.push_back(std::move(w));
    return h;
  }

  // +1 iff <w_j, lift_D(x)> >= 0 for every j. No halfspaces means constant +1.
  static Hypothesis lifted_intersection(std::size_t n, int degree,
                                        std::vector<std::vector<double>> weights) {
    Hypothesis h(Kind::kLiftedPtfIntersection);
    h.index_ = std::make_shared<const MonomialIndex>(n, degree);
    for (const auto& w : weights) {
      detail::require(w.size() == h.index_->size(), "lifted_intersection: weight length mismatch");
    }
    h.weights_ = std::move(weights);
    return h;
  }

  // Knows the planted direction and the +1 intervals along it.
  static Hypothesis oracle_planted(std::vector<double> w, std::vector<Interval> plus) {
    Hypothesis h(Kind::kOraclePlanted);
    h.weights_.push_back(std::move(w));
    h.plus_ = std::move(plus);
    return h;
  }

  static Hypothesis constant(int label) {
    detail::require(label == 1 || label == -1, "constant hypothesis: label must be +-1");
    Hypothesis h(Kind::kConstant);
    h.label_ = label;
    return h;
  }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] std::string kind_name() const {
    switch (kind_) {
      case Kind::kLtf: return "ltf";
      case Kind::kLiftedPtfIntersection: return "lifted-ptf-intersection";
      case Kind::kOraclePlanted: return "oracle-planted";
      case Kind::kConstant: return "constant";
    }
    return "unknown";
  }
  [[nodiscard]] const std::vector<std::vector<double>>& weights() const { return weights_; }
  [[nodiscard]] int lift_degree() const { return index_ ? index_->degree() : 1; }

  [[nodiscard]] int predict(std::span<const double> x) const {
    switch (kind_) {
      case Kind::kLtf:
        return dot(weights_[0], x) >= 0.0 ? 1 : -1;
      case Kind::kLiftedPtfIntersection: {
        if (weights_.empty()) return 1;
        const auto lifted = index_->lift(x);
        for (const auto& w : weights_) {
          if (dot(w, lifted) < 0.0) return -1;
        }
        return 1;
      }
      case Kind::kOraclePlanted:
        return contains_any(plus_, dot(weights_[0], x)) ? 1 : -1;
      case Kind::kConstant:
        return label_;
    }
    return 1;
  }

  [[nodiscard]] double error(const LabeledDataset& ds) const {
    if (ds.empty()) return 0.0;
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (predict(ds.point(i)) != ds.label(i)) ++wrong;
    }
    return static_cast<double>(wrong) / ds.size();
  }

 private:
  explicit Hypothesis(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::vector<std::vector<double>> weights_;
  std::shared_ptr<const MonomialIndex> index_;
  std::vector<Interval> plus_;
  int label_ = 1;
};

using Learner = std::function<Hypothesis(const LabeledDataset&)>;
using DatasetGenerator = std::function<LabeledDataset(Rng&)>;

// ---------------------------------------------------------------------------
// Halfspace fitting

using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct LtfFit {
  std::vector<double> w;
  double margin = 0.0;  // LP margin under ||w||_1 <= 1; <= 0 when not separable
  bool separable = false;
  double training_error = 1.0;
  std::string method;  // "lp" or "perceptron"
};

namespace detail {

inline double subset_error(const FeatureMatrix& x, std::span<const std::int8_t> y,
                           std::span<const std::size_t> rows, const Eigen::VectorXd& w) {
  if (rows.empty()) return 0.0;
  std::size_t wrong = 0;
  for (std::size_t r : rows) {
    const double s = x.row(static_cast<Eigen::Index>(r)).dot(w);
    if ((s >= 0.0 ? 1 : -1) != y[r]) ++wrong;
  }
  return static_cast<double>(wrong) / rows.size();
}

// Pocket perceptron: passes in a seeded order, capped at 100 m updates; keeps
// the iterate with the lowest training error seen at the end of a pass.
inline Eigen::VectorXd pocket_perceptron(const FeatureMatrix& x, std::span<const std::int8_t> y,
                                         std::span<const std::size_t> rows, std::uint64_t seed,
                                         double* best_error) {
  const Eigen::Index p = x.cols();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd best = w;
  *best_error = subset_error(x, y, rows, w);
  std::vector<std::size_t> order(rows.begin(), rows.end());
  Rng rng = make_stream(seed, 0x5eed);
  const std::size_t cap = 100 * rows.size();
  std::size_t updates = 0;
  while (updates < cap && *best_error > 0.0) {
    std::shuffle(order.begin(), order.end(), rng);
    bool changed = false;
    for (std::size_t r : order) {
      const auto row = x.row(static_cast<Eigen::Index>(r));
      if (y[r] * row.dot(w) <= 0.0) {
        w += static_cast<double>(y[r]) * row.transpose();
        changed = true;
        if (++updates >= cap) break;
      }
    }
    const double err = subset_error(x, y, rows, w);
    if (err < *best_error) {
      *best_error = err;
      best = w;
    }
    if (!changed) break;
  }
  return best;
}

}  // namespace detail

/// One halfspace over the rows `rows` of a feature matrix. Maximizes t
/// subject to y_i <w, x_i> >= t and ||w||_1 <= 1; if the optimum is not
/// positive the data are not separable and a pocket perceptron runs as well.
/// The better of the two on training error is returned.
inline LtfFit fit_ltf(const FeatureMatrix& x, std::span<const std::int8_t> y,
                      std::span<const std::size_t> rows, std::uint64_t seed = 0) {
  const Eigen::Index p = x.cols();
  LtfFit fit;
  if (rows.empty()) {
    fit.w.assign(static_cast<std::size_t>(p), 0.0);
    fit.training_error = 0.0;
    fit.method = "lp";
    return fit;
  }
  const auto m = static_cast<Eigen::Index>(rows.size());
  // Variables (w+, w-, t') with t = t' - t0 >= -t0 so that x = 0 is feasible.
  double t0 = 1.0;
  for (std::size_t r : rows) t0 = std::max(t0, 1.0 + x.row(static_cast<Eigen::Index>(r)).cwiseAbs().maxCoeff());
  SimplexSolver::Matrix a = SimplexSolver::Matrix::Zero(m + 1, 2 * p + 1);
  Eigen::VectorXd b(m + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    const std::size_t r = rows[static_cast<std::size_t>(i)];
    const double yi = y[r];
    a.block(i, 0, 1, p) = -yi * x.row(static_cast<Eigen::Index>(r));
    a.block(i, p, 1, p) = yi * x.row(static_cast<Eigen::Index>(r));
    a(i, 2 * p) = 1.0;
    b[i] = t0;
  }
  a.block(m, 0, 1, 2 * p).setOnes();
  b[m] = 1.0;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * p + 1);
  c[2 * p] = 1.0;

  const LpResult lp = SimplexSolver(a, b, c).solve();
  Eigen::VectorXd w_lp(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    w_lp[j] = lp.x[static_cast<std::size_t>(j)] - lp.x[static_cast<std::size_t>(j + p)];
  }
  fit.margin = lp.x[static_cast<std::size_t>(2 * p)] - t0;
  fit.separable = lp.status == LpStatus::kOptimal && fit.margin > 1e-9;
  fit.training_error = detail::subset_error(x, y, rows, w_lp);
  fit.method = "lp";
  Eigen::VectorXd best = w_lp;
  if (!fit.separable) {
    double perr = 1.0;
    const Eigen::VectorXd w_p = detail::pocket_perceptron(x, y, rows, seed, &perr);
    if (perr < fit.training_error) {
      best = w_p;
      fit.training_error = perr;
      fit.method = "perceptron";
    }
  }
  fit.w.assign(best.data(), best.data() + p);
  return fit;
}

inline FeatureMatrix raw_features(const LabeledDataset& ds) {
  FeatureMatrix x(static_cast<Eigen::Index>(ds.size()), static_cast<Eigen::Index>(ds.dim()));
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto p = ds.point(i);
    for (std::size_t j = 0; j < ds.dim(); ++j) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = p[j];
  }
  return x;
}

inline constexpr double kMaxLiftedEntries = 2e8;

inline FeatureMatrix lifted_features(const LabeledDataset& ds, const MonomialIndex& index) {
  const double entries = static_cast<double>(ds.size()) * static_cast<double>(index.size());
  if (entries > kMaxLiftedEntries) {
    throw OverflowError("lifted features: m * C(n+D, D) = " + std::to_string(entries) +
                        " exceeds the memory guard");
  }
  FeatureMatrix x(static_cast<Eigen::Index>(ds.size()), static_cast<Eigen::Index>(index.size()));
  for (std::size_t i = 0; i < ds.size(); ++i) {
    index.lift_into(ds.point(i), std::span<double>(x.data() + i * index.size(), index.size()));
  }
  return x;
}

/// A single homogeneous halfspace through the origin on the raw points.
inline Hypothesis train_ltf(const LabeledDataset& ds, std::uint64_t seed = 0) {
  detail::require(!ds.empty(), "train_ltf: need at least one sample");
  const FeatureMatrix x = raw_features(ds);
  std::vector<std::size_t> rows(ds.size());
  std::iota(rows.begin(), rows.end(), 0);
  return Hypothesis::ltf(fit_ltf(x, ds.labels(), rows, seed).w);
}

/// Greedy intersection in the degree-D lift: fit an LTF on the points the
/// current intersection labels +1, intersect, repeat. Stops after `rounds`
/// halfspaces, at zero training error, or when a round does not help.
inline Hypothesis train_lifted_ptf(const LabeledDataset& ds, int degree, int rounds,
                                   std::uint64_t seed = 0) {
  detail::require(!ds.empty(), "train_lifted_ptf: need at least one sample");
  detail::require(degree >= 1 && rounds >= 1, "train_lifted_ptf: need degree >= 1 and rounds >= 1");
  const MonomialIndex index(ds.dim(), degree);
  const FeatureMatrix x = lifted_features(ds, index);
  const auto& y = ds.labels();

  std::vector<char> predicted_plus(ds.size(), 1);
  auto count_errors = [&](const std::vector<char>& pred) {
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if ((pred[i] ? 1 : -1) != y[i]) ++wrong;
    }
    return wrong;
  };
  std::size_t errors = count_errors(predicted_plus);
  std::vector<std::vector<double>> halfspaces;
  for (int r = 0; r < rounds && errors > 0; ++r) {
    std::vector<std::size_t> active;
    bool has_minus = false;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (!predicted_plus[i]) continue;
      active.push_back(i);
      has_minus = has_minus || y[i] < 0;
    }
    if (!has_minus) break;
    const LtfFit fit = fit_ltf(x, y, active, seed + static_cast<std::uint64_t>(r));
    const Eigen::Map<const Eigen::VectorXd> w(fit.w.data(), static_cast<Eigen::Index>(fit.w.size()));
    std::vector<char> next = predicted_plus;
    for (std::size_t i : active) next[i] = x.row(static_cast<Eigen::Index>(i)).dot(w) >= 0.0;
    const std::size_t next_errors = count_errors(next);
    if (next_errors >= errors) break;
    halfspaces.push_back(fit.w);
    predicted_plus = std::move(next);
    errors = next_errors;
  }
  return Hypothesis::lifted_intersection(ds.dim(), degree, std::move(halfspaces));
}

inline Learner ltf_learner(std::uint64_t seed = 0) {
  return [seed](const LabeledDataset& ds) { return train_ltf(ds, seed); };
}

inline Learner lifted_ptf_learner(int degree, int rounds, std::uint64_t seed = 0) {
  return [=](const LabeledDataset& ds) { return train_lifted_ptf(ds, degree, rounds, seed); };
}

// Majority label of the training data.
inline Learner constant_learner() {
  return [](const LabeledDataset& ds) {
    long balance = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) balance += ds.label(i);
    return Hypothesis::constant(balance >= 0 ? 1 : -1);
  };
}

inline Learner oracle_learner(std::vector<double> w, std::vector<Interval> plus) {
  return [w = std::move(w), plus = std::move(plus)](const LabeledDataset&) {
    return Hypothesis::oracle_planted(w, plus);
  };
}

// ---------------------------------------------------------------------------
// Distinguisher

enum class Verdict { kPlanted, kNull };

inline const char* to_string(Verdict v) { return v == Verdict::kPlanted ? "planted" : "null"; }

struct DistinguisherVerdict {
  Verdict verdict = Verdict::kNull;
  double error = 0.5;      // holdout error of the trained hypothesis
  double threshold = 0.0;  // tau / 2
  std::size_t m = 0;
};

inline void check_distinguisher_budget(std::size_t m, double tau) {
  if (m < 2 || m % 2 != 0) {
    throw InvalidParameter("distinguish: m must be even and >= 2, got " + std::to_string(m));
  }
  const double floor = 5.0 / std::sqrt(static_cast<double>(m));
  if (!(tau >= floor * (1.0 - 1e-12))) {
    throw InvalidParameter("distinguish: tau = " + std::to_string(tau) +
                           " is below 5/sqrt(m) = " + std::to_string(floor));
  }
}

/// Train on the first half, test on the second; planted iff |err - 1/2| > tau/2.
inline DistinguisherVerdict distinguish(const LabeledDataset& samples, const Learner& learner,
                                        double tau) {
  check_distinguisher_budget(samples.size(), tau);
  const std::size_t half = samples.size() / 2;
  const Hypothesis h = learner(samples.slice(0, half));
  DistinguisherVerdict v;
  v.m = samples.size();
  v.error = h.error(samples.slice(half, samples.size()));
  v.threshold = tau / 2.0;
  v.verdict = std::abs(v.error - 0.5) > v.threshold ? Verdict::kPlanted : Verdict::kNull;
  return v;
}

struct AdvantageReport {
  std::size_t trials = 0;
  double planted_says_null = 0.0;  // fraction of planted trials with verdict null
  double null_says_null = 0.0;
  double advantage = 0.0;          // |difference of the two|
  double half_width = 0.0;         // 95% normal-approximation half-width
  double false_planted_rate = 0.0; // 1 - null_says_null
  double mean_planted_error = 0.0;
  double mean_null_error = 0.0;

  [[nodiscard]] nlohmann::json to_json() const {
    return {{"trials", trials},
            {"planted_says_null", planted_says_null},
            {"null_says_null", null_says_null},
            {"advantage", advantage},
            {"half_width", half_width},
            {"false_planted_rate", false_planted_rate},
            {"mean_planted_error", mean_planted_error},
            {"mean_null_error", mean_null_error}};
  }
};

/// Trial t draws its planted data from stream 2t and its null data from
/// stream 2t + 1 of `seed`.
inline AdvantageReport advantage_estimate(const DatasetGenerator& gen_planted,
                                          const DatasetGenerator& gen_null, const Learner& learner,
                                          double tau, std::size_t trials, std::uint64_t seed) {
  detail::require(trials >= 30, "advantage_estimate: need at least 30 trials");
  AdvantageReport rep;
  rep.trials = trials;
  std::size_t planted_null = 0;
  std::size_t null_null = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rp = make_stream(seed, 2 * t);
    const auto vp = distinguish(gen_planted(rp), learner, tau);
    Rng rn = make_stream(seed, 2 * t + 1);
    const auto vn = distinguish(gen_null(rn), learner, tau);
    planted_null += vp.verdict == Verdict::kNull;
    null_null += vn.verdict == Verdict::kNull;
    rep.mean_planted_error += vp.error / trials;
    rep.mean_null_error += vn.error / trials;
  }
  const double n = static_cast<double>(trials);
  rep.planted_says_null = planted_null / n;
  rep.null_says_null = null_null / n;
  rep.advantage = std::abs(rep.planted_says_null - rep.null_says_null);
  rep.false_planted_rate = 1.0 - rep.null_says_null;
  const double p1 = rep.planted_says_null;
  const double p2 = rep.null_says_null;
  rep.half_width = 1.96 * std::sqrt(p1 * (1 - p1) / n + p2 * (1 - p2) / n);
  return rep;
}

// ---------------------------------------------------------------------------
// Statistical queries

/// phi(x, y) = s(y) * clamp(g(<x, v>), -1, 1) with s(+1), s(-1) in [-1, 1].
struct ProjectedQuery {
  std::string name;
  std::vector<double> direction;
  std::function<double(double)> g;
  double plus_weight = 1.0;
  double minus_weight = 1.0;
  std::vector<double> kinks;  // points where g is not smooth

  [[nodiscard]] double profile(double z) const { return std::clamp(g(z), -1.0, 1.0); }

  [[nodiscard]] double operator()(std::span<const double> x, int y) const {
    return (y > 0 ? plus_weight : minus_weight) * profile(dot(direction, x));
  }
};

/// He_l(<x, v>) / M, M = max |He_l| on [-radius, radius]; optionally times y.
inline ProjectedQuery hermite_query(int degree, std::vector<double> v, bool times_label,
                                    double radius = 3.0) {
  require_unit(v, "hermite_query");
  detail::require(degree >= 0 && degree <= kMaxHermiteDegree, "hermite_query: bad degree");
  double peak = 0.0;
  constexpr int kGrid = 20000;
  for (int i = 0; i <= kGrid; ++i) {
    const double z = -radius + 2.0 * radius * i / kGrid;
    peak = std::max(peak, std::abs(hermite_eval(degree, z)));
  }
  ProjectedQuery q;
  q.name = (times_label ? "y*He_" : "He_") + std::to_string(degree);
  q.direction = std::move(v);
  q.g = [degree, peak](double z) { return hermite_eval(degree, z) / peak; };
  q.plus_weight = 1.0;
  q.minus_weight = times_label ? -1.0 : 1.0;
  // Clamping can only bind beyond the grid radius.
  q.kinks = {-radius, radius};
  return q;
}

/// A labeled distribution that is a two-class mixture along a hidden
/// direction (or label-independent Gaussian) with Gaussian orthogonal part.
/// Expectations of projected queries are computed by 1-D quadrature when the
/// query direction is parallel or orthogonal to the hidden one.
class SqTarget {
 public:
  // Planted: P(y = +1) = 1/2, <x, w> | y ~ plus / minus, orthogonal part N(0, orth_sd^2 I).
  static SqTarget planted(std::vector<double> w, TruncatedMixture plus, TruncatedMixture minus,
                          double orth_sd) {
    require_unit(w, "SqTarget");
    SqTarget t;
    t.w_ = std::move(w);
    t.dim_ = t.w_.size();
    t.plus_.emplace(std::move(plus));
    t.minus_.emplace(std::move(minus));
    t.sd_ = orth_sd;
    return t;
  }

  // Null: x ~ N(0, sd^2 I), y an independent fair coin.
  static SqTarget null(std::size_t dim, double sd) {
    SqTarget t;
    t.dim_ = dim;
    t.sd_ = sd;
    return t;
  }

  [[nodiscard]] bool is_planted() const { return plus_.has_value(); }
  [[nodiscard]] std::size_t dim() const { return dim_; }

  [[nodiscard]] LabeledDataset sample(std::size_t m, Rng& rng) const {
    LabeledDataset ds(dim_);
    ds.reserve(m);
    std::vector<double> x(dim_);
    if (!is_planted()) {
      for (std::size_t i = 0; i < m; ++i) {
        for (auto& v : x) v = sd_ * standard_normal(rng);
        ds.push_back(x, uniform01(rng) < 0.5 ? 1 : -1);
      }
      return ds;
    }
    const OrthonormalCompletion basis(w_);
    std::vector<double> rest(dim_ - 1);
    for (std::size_t i = 0; i < m; ++i) {
      const int y = uniform01(rng) < 0.5 ? 1 : -1;
      const double z = (y > 0 ? *plus_ : *minus_).sample(rng);
      for (auto& g : rest) g = sd_ * standard_normal(rng);
      basis.embed(z, rest, x);
      ds.push_back(x, y);
    }
    return ds;
  }

  [[nodiscard]] double expectation(const ProjectedQuery& q) const {
    require_unit(q.direction, "SqTarget::expectation");
    detail::require(q.direction.size() == dim_, "SqTarget::expectation: dimension mismatch");
    const double label_mean = 0.5 * (q.plus_weight + q.minus_weight);
    if (!is_planted()) return label_mean * gaussian_mean(q);
    const double a = dot(q.direction, w_);
    if (std::abs(a) < 1e-12) return label_mean * gaussian_mean(q);
    if (std::abs(std::abs(a) - 1.0) < 1e-12) {
      const double sign = a > 0 ? 1.0 : -1.0;
      return 0.5 * q.plus_weight * mixture_mean(*plus_, q, sign) +
             0.5 * q.minus_weight * mixture_mean(*minus_, q, sign);
    }
    throw UnsupportedQuery(
        "SqTarget: analytic expectation needs a query direction parallel or orthogonal to the "
        "hidden direction");
  }

 private:
  SqTarget() = default;

  [[nodiscard]] double gaussian_mean(const ProjectedQuery& q) const {
    std::vector<double> cuts;
    for (double k : q.kinks) cuts.push_back(k / sd_);
    return integrate([&](double z) { return q.profile(sd_ * z) * normal_pdf(z); }, -12.0, 12.0,
                     cuts);
  }

  static double mixture_mean(const TruncatedMixture& mix, const ProjectedQuery& q, double sign) {
    std::vector<double> cuts;
    for (double k : q.kinks) cuts.push_back(sign * k);
    double total = 0.0;
    for (const auto& c : mix.components()) {
      const Interval s = c.dist.support();
      const double lo = std::max(s.lo, c.dist.mean() - 40.0 * c.dist.sd());
      const double hi = std::min(s.hi, c.dist.mean() + 40.0 * c.dist.sd());
      total += c.weight * integrate([&](double z) { return q.profile(sign * z) * c.dist.density(z); },
                                    lo, hi, cuts);
    }
    return total;
  }

  std::size_t dim_ = 0;
  std::vector<double> w_;
  std::optional<TruncatedMixture> plus_;
  std::optional<TruncatedMixture> minus_;
  double sd_ = 1.0;
};

inline SqTarget pancake_target(const PancakeSpec& spec, std::vector<double> w) {
  return SqTarget::planted(std::move(w), spec.planted(+1), spec.planted(-1), 1.0);
}

enum class SqMode { kHonest, kAdversarial };

struct SqAnswer {
  double value = 0.0;
  std::size_t samples = 0;  // 0 for adversarial answers
  double std_error = 0.0;
  bool flagged = false;  // honest answer farther than tau from a known expectation
};

/// Honest mode averages the query over ceil(4 / tau^2) fresh samples;
/// adversarial mode rounds the exact expectation to the nearest multiple of
/// tau. One oracle per thread: the query counter is not synchronized.
class SqOracle {
 public:
  SqOracle(SqTarget target, double tau, SqMode mode, std::uint64_t seed = 0)
      : target_(std::move(target)), tau_(tau), mode_(mode), seed_(seed) {
    detail::require(tau > 0.0 && tau <= 1.0, "SqOracle: tau must lie in (0, 1]");
  }

  [[nodiscard]] double tau() const { return tau_; }
  [[nodiscard]] SqMode mode() const { return mode_; }
  [[nodiscard]] std::size_t queries() const { return queries_; }
  [[nodiscard]] const SqAnswer& last() const { return last_; }

  double query(const ProjectedQuery& q) {
    if (mode_ == SqMode::kAdversarial) {
      ++queries_;
      last_ = {round_to_grid(target_.expectation(q)), 0, 0.0, false};
      return last_.value;
    }
    std::optional<double> truth;
    try {
      truth = target_.expectation(q);
    } catch (const UnsupportedQuery&) {
    }
    return honest([&](std::span<const double> x, int y) { return q(x, y); }, truth);
  }

  // Arbitrary bounded query; honest mode only.
  double query(const std::function<double(std::span<const double>, int)>& phi) {
    if (mode_ == SqMode::kAdversarial) {
      throw UnsupportedQuery("SqOracle: adversarial mode needs a query with a known expectation");
    }
    return honest(phi, std::nullopt);
  }

 private:
  [[nodiscard]] double round_to_grid(double v) const { return std::round(v / tau_) * tau_; }

  double honest(const std::function<double(std::span<const double>, int)>& phi,
                std::optional<double> truth) {
    const auto m = static_cast<std::size_t>(std::ceil(4.0 / (tau_ * tau_)));
    Rng rng = make_stream(seed_, queries_++);
    const LabeledDataset ds = target_.sample(m, rng);
    double sum = 0.0;
    double sum2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double v = std::clamp(phi(ds.point(i), ds.label(i)), -1.0, 1.0);
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / m;
    const double var = std::max(0.0, sum2 / m - mean * mean);
    last_ = {mean, m, std::sqrt(var / m), truth.has_value() && std::abs(mean - *truth) > tau_};
    return mean;
  }

  SqTarget target_;
  double tau_;
  SqMode mode_;
  std::uint64_t seed_;
  std::size_t queries_ = 0;
  SqAnswer last_;
};

// ---------------------------------------------------------------------------
// Advantage transfer on finite supports

// |P(S) - Q(S)| for the event S = {i : bit i of mask is set}.
inline double subset_advantage(std::span<const double> p, std::span<const double> q,
                               std::uint32_t mask) {
  double diff = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (mask & (1u << i)) diff += p[i] - q[i];
  }
  return std::abs(diff);
}

struct AdvantageTransferReport {
  std::size_t triples = 0;
  std::size_t violations = 0;
  double worst_slack = -kInf;  // max over triples and distinguishers of shift - TVD
};

/// For random (D0, D1, D1') on `support` points, every deterministic
/// distinguisher's advantage against (D0, D1) and (D0, D1') differs by at
/// most TVD(D1, D1'). All 2^support distinguishers are enumerated.
inline AdvantageTransferReport advantage_transfer_check(std::size_t support, std::size_t triples,
                                                        std::uint64_t seed) {
  detail::require(support >= 1 && support <= 16, "advantage_transfer_check: support in [1, 16]");
  Rng rng = make_stream(seed);
  auto random_dist = [&] {
    std::vector<double> p(support);
    double total = 0.0;
    for (auto& v : p) total += v = -std::log(1.0 - uniform01(rng));
    for (auto& v : p) v /= total;
    return p;
  };
  AdvantageTransferReport rep;
  rep.triples = triples;
  for (std::size_t t = 0; t < triples; ++t) {
    const auto d0 = random_dist();
    const auto d1 = random_dist();
    const auto noise = random_dist();
    const double mix = uniform01(rng);
    std::vector<double> d1p(support);
    for (std::size_t i = 0; i < support; ++i) d1p[i] = (1.0 - mix) * d1[i] + mix * noise[i];
    const double eta = tvd_discrete(d1, d1p);
    for (std::uint32_t mask = 0; mask < (1u << support); ++mask) {
      const double shift = std::abs(subset_advantage(d0, d1, mask) - subset_advantage(d0, d1p, mask));
      rep.worst_slack = std::max(rep.worst_slack, shift - eta);
      if (shift > eta + 1e-12) ++rep.violations;
    }
  }
  return rep;
}

}  // namespace pancakes

#endif  // PANCAKES_HARNESS_HPP
