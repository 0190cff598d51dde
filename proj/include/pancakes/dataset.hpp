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

#ifndef PANCAKES_DATASET_HPP
#define PANCAKES_DATASET_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pancakes/errors.hpp"
#include "pancakes/random.hpp"

namespace pancakes {

struct DatasetMeta {
  std::string family;
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
  // Planted direction. Never written to disk unless explicitly exposed.
  std::optional<std::vector<double>> hidden_direction;
  // Hex digest of the planted direction, kept when the direction is withheld.
  std::string direction_digest;

  friend bool operator==(const DatasetMeta&, const DatasetMeta&) = default;
};

/// m labeled points in R^dim, stored row-major.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  explicit LabeledDataset(std::size_t dim) : dim_(dim) {}

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] bool empty() const { return labels_.empty(); }

  [[nodiscard]] std::span<const double> point(std::size_t i) const {
    return {points_.data() + i * dim_, dim_};
  }
  [[nodiscard]] int label(std::size_t i) const { return labels_[i]; }

  [[nodiscard]] const std::vector<double>& points() const { return points_; }
  [[nodiscard]] const std::vector<std::int8_t>& labels() const { return labels_; }

  DatasetMeta& meta() { return meta_; }
  [[nodiscard]] const DatasetMeta& meta() const { return meta_; }

  void reserve(std::size_t m) {
    points_.reserve(m * dim_);
    labels_.reserve(m);
  }

  void push_back(std::span<const double> x, int y) {
    detail::require(x.size() == dim_, "LabeledDataset: point has wrong dimension");
    detail::require(y == 1 || y == -1, "LabeledDataset: labels must be +1 or -1");
    points_.insert(points_.end(), x.begin(), x.end());
    labels_.push_back(static_cast<std::int8_t>(y));
  }

  // Rows [begin, end) with the same metadata.
  [[nodiscard]] LabeledDataset slice(std::size_t begin, std::size_t end) const {
    detail::require(begin <= end && end <= size(), "LabeledDataset: bad slice");
    LabeledDataset out(dim_);
    out.meta_ = meta_;
    out.points_.assign(points_.begin() + begin * dim_, points_.begin() + end * dim_);
    out.labels_.assign(labels_.begin() + begin, labels_.begin() + end);
    return out;
  }

  // Throws unless every coordinate is finite, labels are +-1 and the hidden
  // direction, when present, has unit norm.
  void validate() const {
    for (double v : points_) {
      if (!std::isfinite(v)) throw ConsistencyError("LabeledDataset: non-finite coordinate");
    }
    for (auto y : labels_) {
      if (y != 1 && y != -1) throw ConsistencyError("LabeledDataset: label outside {-1,+1}");
    }
    if (meta_.hidden_direction) {
      double n2 = 0.0;
      for (double v : *meta_.hidden_direction) n2 += v * v;
      if (std::abs(std::sqrt(n2) - 1.0) >= 1e-12) {
        throw ConsistencyError("LabeledDataset: hidden direction is not unit norm");
      }
    }
  }

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> points_;
  std::vector<std::int8_t> labels_;
  DatasetMeta meta_;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline void require_unit(std::span<const double> w, const char* who) {
  detail::require(!w.empty(), std::string(who) + ": direction is empty");
  const double norm = std::sqrt(dot(w, w));
  if (!(std::abs(norm - 1.0) < 1e-12)) {
    throw InvalidParameter(std::string(who) + ": direction must have unit norm");
  }
}

/// The Householder reflection H with H e_1 = w. Coordinates (z, g_1..g_{n-1})
/// map to z * w + (orthonormal completion of w) * g.
class OrthonormalCompletion {
 public:
  explicit OrthonormalCompletion(std::vector<double> w) : w_(std::move(w)), v_(w_) {
    require_unit(w_, "OrthonormalCompletion");
    for (auto& x : v_) x = -x;
    v_[0] += 1.0;  // v = e_1 - w
    vv_ = dot(v_, v_);
  }

  [[nodiscard]] std::size_t dim() const { return w_.size(); }
  [[nodiscard]] const std::vector<double>& direction() const { return w_; }

  // out = H u with u = (along, rest...).
  void embed(double along, std::span<const double> rest, std::span<double> out) const {
    const std::size_t n = w_.size();
    out[0] = along;
    for (std::size_t i = 1; i < n; ++i) out[i] = rest[i - 1];
    if (vv_ == 0.0) return;
    const double coef = 2.0 * dot(v_, std::span<const double>(out.data(), n)) / vv_;
    for (std::size_t i = 0; i < n; ++i) out[i] -= coef * v_[i];
  }

 private:
  std::vector<double> w_;
  std::vector<double> v_;
  double vv_ = 0.0;
};

enum class VarianceConvention { kUnit, kOneOverTwoPi };

inline double convention_sd(VarianceConvention c) {
  return c == VarianceConvention::kUnit ? 1.0 : 1.0 / std::sqrt(2.0 * std::numbers::pi);
}

inline const char* to_string(VarianceConvention c) {
  return c == VarianceConvention::kUnit ? "unit" : "one-over-2pi";
}

/// i.i.d. Gaussian points, labels an independent fair coin.
inline LabeledDataset sample_null(std::size_t dim, std::size_t m,
                                  VarianceConvention convention, Rng& rng) {
  detail::require(dim >= 1, "sample_null: dimension must be >= 1");
  const double sd = convention_sd(convention);
  LabeledDataset ds(dim);
  ds.reserve(m);
  std::vector<double> x(dim);
  for (std::size_t i = 0; i < m; ++i) {
    for (auto& v : x) v = sd * standard_normal(rng);
    const int y = uniform01(rng) < 0.5 ? 1 : -1;
    ds.push_back(x, y);
  }
  ds.meta().family = "null";
  ds.meta().params = {{"dim", dim}, {"variance", to_string(convention)}};
  return ds;
}

}  // namespace pancakes

#endif  // PANCAKES_DATASET_HPP
