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

// Turning interval-supported planted distributions into intersections of
// halfspaces.
//
// A planted instance puts <x, w> of +1 points in a union of "plus" intervals
// and of -1 points in "minus" intervals. Univariate polynomials that are
// nonnegative on every plus interval, and of which at least one is negative
// on each minus interval, give a PTF intersection p_j(<x, w>) >= 0 for all j.
// Each p_j(<x, w>) is linear in the Veronese lift of x, so the instance is an
// intersection of halfspaces in the lifted space.

#ifndef PANCAKES_REALIZE_HPP
#define PANCAKES_REALIZE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "pancakes/dataset.hpp"
#include "pancakes/errors.hpp"
#include "pancakes/interval.hpp"

namespace pancakes {

/// Polynomial in one variable, monomial basis, coefficients[i] multiplies z^i.
class UnivariatePoly {
 public:
  UnivariatePoly() : coeffs_{0.0} {}
  explicit UnivariatePoly(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    detail::require(!coeffs_.empty(), "UnivariatePoly: no coefficients");
  }

  // Monic polynomial prod (z - r).
  static UnivariatePoly from_roots(std::span<const double> roots) {
    std::vector<double> c{1.0};
    for (double r : roots) {
      std::vector<double> next(c.size() + 1, 0.0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        next[i + 1] += c[i];
        next[i] -= r * c[i];
      }
      c = std::move(next);
    }
    return UnivariatePoly(std::move(c));
  }

  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] const std::vector<double>& coefficients() const { return coeffs_; }
  [[nodiscard]] double leading() const { return coeffs_.back(); }

  [[nodiscard]] double operator()(double z) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  [[nodiscard]] UnivariatePoly derivative() const {
    if (coeffs_.size() == 1) return UnivariatePoly({0.0});
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
    return UnivariatePoly(std::move(d));
  }

  [[nodiscard]] double coefficient_norm() const {
    double s = 0.0;
    for (double c : coeffs_) s += c * c;
    return std::sqrt(s);
  }

  /// Number of distinct real roots in (a, b], by a Sturm sequence.
  [[nodiscard]] int count_roots(double a, double b) const {
    const auto chain = sturm_chain();
    return sign_changes(chain, a) - sign_changes(chain, b);
  }

  /// Distinct real roots in the closed interval [a, b].
  [[nodiscard]] int count_roots_closed(double a, double b) const {
    const int open = count_roots(a, b);
    return open + ((*this)(a) == 0.0 ? 1 : 0);
  }

 private:
  using Wide = std::vector<long double>;

  static void trim(Wide& p) {
    long double scale = 0.0L;
    for (auto c : p) scale = std::max(scale, std::abs(c));
    while (!p.empty() && std::abs(p.back()) <= 1e-14L * scale) p.pop_back();
    if (scale > 0.0L) {
      for (auto& c : p) c /= scale;
    }
  }

  // Remainder of a / b, both ascending.
  static Wide remainder(Wide a, const Wide& b) {
    const std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
      const long double q = a.back() / b.back();
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= q * b[i];
      a.pop_back();
    }
    return a;
  }

  [[nodiscard]] std::vector<Wide> sturm_chain() const {
    std::vector<Wide> chain;
    Wide p(coeffs_.begin(), coeffs_.end());
    trim(p);
    chain.push_back(p);
    if (p.size() <= 1) return chain;
    Wide dp(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) dp[i - 1] = p[i] * static_cast<long double>(i);
    trim(dp);
    chain.push_back(dp);
    while (chain.back().size() > 1) {
      Wide r = remainder(chain[chain.size() - 2], chain.back());
      for (auto& c : r) c = -c;
      trim(r);
      if (r.empty()) break;
      chain.push_back(std::move(r));
    }
    return chain;
  }

  static int sign_changes(const std::vector<Wide>& chain, double x) {
    int changes = 0;
    int last = 0;
    for (const auto& p : chain) {
      long double v = 0.0L;
      for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
      const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }

  std::vector<double> coeffs_;
};

/// Univariate polynomials tied to a direction w, with the interval sets they
/// were built from. assignment[j] lists the minus intervals p_j is negative on.
struct PtfCollection {
  std::vector<double> direction;
  std::vector<UnivariatePoly> polys;
  int degree_bound = 0;
  std::vector<Interval> plus;
  std::vector<Interval> minus;
  std::vector<std::vector<std::size_t>> assignment;

  [[nodiscard]] PtfCollection with_direction(std::vector<double> w) const {
    PtfCollection out = *this;
    out.direction = std::move(w);
    return out;
  }

  // +1 iff p_j(z) >= 0 for every j.
  [[nodiscard]] int classify(double z) const {
    for (const auto& p : polys) {
      if (p(z) < 0.0) return -1;
    }
    return 1;
  }
};

namespace detail {

struct RootPair {
  double left;
  double right;
};

// Root placement around each minus interval: midpoints of the gaps to the
// neighboring plus intervals; an extreme interval mirrors its inner gap.
inline std::vector<RootPair> minus_interval_roots(std::vector<Interval> plus,
                                                  std::vector<Interval> minus) {
  struct Tagged {
    Interval iv;
    bool is_plus;
  };
  std::vector<Tagged> all;
  for (const auto& iv : plus) all.push_back({iv, true});
  for (const auto& iv : minus) all.push_back({iv, false});
  std::sort(all.begin(), all.end(), [](const Tagged& a, const Tagged& b) { return a.iv.lo < b.iv.lo; });
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!(all[i].iv.lo <= all[i].iv.hi)) throw InvalidParameter("interval with lo > hi");
    if (i == 0) continue;
    if (!(all[i].iv.lo > all[i - 1].iv.hi)) {
      throw ConsistencyError("interval layout: intervals overlap");
    }
    if (all[i].is_plus == all[i - 1].is_plus) {
      throw ConsistencyError("interval layout: plus and minus intervals do not alternate");
    }
  }

  std::vector<RootPair> roots;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].is_plus) continue;
    const Interval& iv = all[i].iv;
    const bool has_left = i > 0;
    const bool has_right = i + 1 < all.size();
    if (!has_left && !has_right) {
      throw ConsistencyError("interval layout: minus interval has no plus neighbor");
    }
    double left = has_left ? 0.5 * (all[i - 1].iv.hi + iv.lo) : 0.0;
    double right = has_right ? 0.5 * (iv.hi + all[i + 1].iv.lo) : 0.0;
    if (!has_left) left = iv.lo - (right - iv.hi);
    if (!has_right) right = iv.hi + (iv.lo - left);
    roots.push_back({left, right});
  }
  return roots;
}

}  // namespace detail

/// One quadratic per minus interval I: roots at the midpoints of the gaps
/// between I and its neighbors, negative exactly between them.
inline PtfCollection interval_ptfs_degree2(const std::vector<Interval>& s_a,
                                           const std::vector<Interval>& s_b) {
  const auto roots = detail::minus_interval_roots(s_a, s_b);
  PtfCollection out;
  out.degree_bound = 2;
  out.plus = sorted_by_lo(s_a);
  out.minus = sorted_by_lo(s_b);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double r[2] = {roots[i].left, roots[i].right};
    out.polys.push_back(UnivariatePoly::from_roots(r));
    out.assignment.push_back({i});
  }
  return out;
}

/// Minus intervals in sorted order split into consecutive blocks of d; each
/// block gets one monic degree-2d polynomial with roots bracketing its d
/// intervals.
inline PtfCollection interval_ptfs_blocked(const std::vector<Interval>& j_plus,
                                           const std::vector<Interval>& j_minus, int d) {
  detail::require(d >= 1, "interval_ptfs_blocked: block size must be >= 1");
  if (j_minus.size() % static_cast<std::size_t>(d) != 0) {
    throw InvalidParameter("interval_ptfs_blocked: block size d = " + std::to_string(d) +
                           " must divide the number of minus intervals (" +
                           std::to_string(j_minus.size()) + ")");
  }
  const auto roots = detail::minus_interval_roots(j_plus, j_minus);
  PtfCollection out;
  out.degree_bound = 2 * d;
  out.plus = sorted_by_lo(j_plus);
  out.minus = sorted_by_lo(j_minus);
  for (std::size_t start = 0; start < roots.size(); start += d) {
    std::vector<double> r;
    std::vector<std::size_t> block;
    for (std::size_t i = start; i < start + d; ++i) {
      r.push_back(roots[i].left);
      r.push_back(roots[i].right);
      block.push_back(i);
    }
    out.polys.push_back(UnivariatePoly::from_roots(r));
    out.assignment.push_back(std::move(block));
  }
  return out;
}

struct PtfCertificate {
  bool ok = false;
  std::size_t plus_failures = 0;   // (plus interval, poly) pairs not certified >= 0
  std::size_t minus_failures = 0;  // minus intervals with no certified negative poly
  double min_plus_value = std::numeric_limits<double>::infinity();
  double max_minus_value = -std::numeric_limits<double>::infinity();
};

// Sign properties checked on a dense grid (grid points per interval plus the
// endpoints) and made sound by Sturm root counting on each closed interval.
inline PtfCertificate certify_ptfs(const PtfCollection& ptfs, std::size_t grid = 10000) {
  PtfCertificate cert;
  auto grid_extrema = [grid](const UnivariatePoly& p, const Interval& iv) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t g = 0; g <= grid + 1; ++g) {
      const double z = iv.lo + (iv.hi - iv.lo) * static_cast<double>(g) / (grid + 1);
      const double v = p(z);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return std::pair{lo, hi};
  };

  for (const auto& iv : ptfs.plus) {
    for (const auto& p : ptfs.polys) {
      const auto [lo, hi] = grid_extrema(p, iv);
      cert.min_plus_value = std::min(cert.min_plus_value, lo);
      const bool root_free = p.count_roots_closed(iv.lo, iv.hi) == 0;
      if (!(lo >= 0.0 && root_free && p(iv.center()) > 0.0)) ++cert.plus_failures;
    }
  }
  for (const auto& iv : ptfs.minus) {
    double best = std::numeric_limits<double>::infinity();
    bool certified = false;
    for (const auto& p : ptfs.polys) {
      const auto [lo, hi] = grid_extrema(p, iv);
      best = std::min(best, hi);
      if (hi < 0.0 && p.count_roots_closed(iv.lo, iv.hi) == 0) certified = true;
    }
    cert.max_minus_value = std::max(cert.max_minus_value, best);
    if (!certified) ++cert.minus_failures;
  }
  cert.ok = cert.plus_failures == 0 && cert.minus_failures == 0;
  return cert;
}

/// Monomials of total degree <= D in n variables, graded-lexicographic:
/// 1, x_1..x_n, x_1^2, x_1 x_2, ..., x_n^2, x_1^3, ...
/// Each monomial of degree >= 1 is x_var * (its parent), so a lift costs one
/// multiplication per coordinate.
class MonomialIndex {
 public:
  static constexpr std::size_t kMaxSize = 50'000'000;

  MonomialIndex(std::size_t n, int degree) : n_(n), degree_(degree) {
    detail::require(n >= 1, "MonomialIndex: need n >= 1");
    detail::require(degree >= 0, "MonomialIndex: degree must be >= 0");
    const double count = binomial(static_cast<double>(n) + degree, degree);
    if (count > static_cast<double>(kMaxSize)) {
      throw OverflowError("MonomialIndex: C(n+D, D) = " + std::to_string(count) +
                          " exceeds the supported lift size");
    }
    entries_.reserve(static_cast<std::size_t>(count));
    entries_.push_back({0, 0, 0, 0, 1.0});
    // Degree-d monomials led by x_v are x_v times the degree-(d-1) monomials
    // whose variables are all >= v: a contiguous suffix of the previous block.
    std::size_t prev_begin = 0;
    std::size_t prev_end = 1;
    for (int d = 1; d <= degree; ++d) {
      const std::size_t begin = entries_.size();
      for (std::size_t v = 0; v < n; ++v) {
        Segment seg{0, entries_.size(), 0, v};
        for (std::size_t t = prev_begin; t < prev_end; ++t) {
          const Entry& parent = entries_[t];
          if (d > 1 && parent.var < v) continue;
          if (seg.length == 0) seg.source = t;
          ++seg.length;
          const bool extends_run = d > 1 && parent.var == v;
          const std::uint16_t run = extends_run ? parent.lead_run + 1 : 1;
          entries_.push_back({static_cast<std::uint32_t>(t), static_cast<std::uint16_t>(v),
                              static_cast<std::uint16_t>(d), run, parent.factorials * run});
        }
        if (seg.length > 0) segments_.push_back(seg);
      }
      prev_begin = begin;
      prev_end = entries_.size();
    }
  }

  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] int degree() const { return degree_; }

  // Exponent vector of monomial m.
  [[nodiscard]] std::vector<int> exponents(std::size_t m) const {
    std::vector<int> alpha(n_, 0);
    while (m != 0) {
      ++alpha[entries_[m].var];
      m = entries_[m].parent;
    }
    return alpha;
  }

  [[nodiscard]] int monomial_degree(std::size_t m) const { return entries_[m].degree; }

  void lift_into(std::span<const double> x, std::span<double> out) const {
    detail::require(x.size() == n_ && out.size() == entries_.size(),
                    "veronese lift: dimension mismatch");
    double max_abs = 0.0;
    for (double v : x) max_abs = std::max(max_abs, std::abs(v));
    if (degree_ * std::log1p(max_abs) > 700.0 || !std::isfinite(max_abs)) {
      throw OverflowError("veronese lift: |x|^D overflows double precision");
    }
    double* o = out.data();
    o[0] = 1.0;
    for (const Segment& seg : segments_) {
      const double xv = x[seg.var];
      const double* src = o + seg.source;
      double* dst = o + seg.target;
      for (std::size_t i = 0; i < seg.length; ++i) dst[i] = xv * src[i];
    }
  }

  [[nodiscard]] std::vector<double> lift(std::span<const double> x) const {
    std::vector<double> out(entries_.size());
    lift_into(x, out);
    return out;
  }

  // Coefficient vector c with <c, lift(x)> = p(<x, w>).
  [[nodiscard]] std::vector<double> linearize(const UnivariatePoly& p,
                                              std::span<const double> w) const {
    detail::require(w.size() == n_, "linearize: direction dimension mismatch");
    if (p.degree() > degree_) {
      throw InvalidParameter("ptf_to_halfspace: polynomial degree " + std::to_string(p.degree()) +
                             " overflows lift degree " + std::to_string(degree_));
    }
    // (<x, w>)^d = sum_{|alpha| = d} d! / alpha! w^alpha x^alpha
    std::vector<double> wpow(entries_.size());
    std::vector<double> out(entries_.size(), 0.0);
    wpow[0] = 1.0;
    out[0] = p.coefficients()[0];
    double factorial = 1.0;
    int last_degree = 0;
    for (std::size_t m = 1; m < entries_.size(); ++m) {
      const Entry& e = entries_[m];
      wpow[m] = wpow[e.parent] * w[e.var];
      if (e.degree != last_degree) {
        factorial *= e.degree;
        last_degree = e.degree;
      }
      if (e.degree <= p.degree()) {
        out[m] = p.coefficients()[e.degree] * (factorial / e.factorials) * wpow[m];
      }
    }
    return out;
  }

  static double binomial(double n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
  }

 private:
  struct Entry {
    std::uint32_t parent;
    std::uint16_t var;
    std::uint16_t degree;
    std::uint16_t lead_run;  // copies of `var` in the monomial
    double factorials;       // prod alpha_i!
  };

  // out[target + i] = x[var] * out[source + i] for i < length.
  struct Segment {
    std::size_t source;
    std::size_t target;
    std::size_t length;
    std::size_t var;
  };

  std::size_t n_;
  int degree_;
  std::vector<Entry> entries_;
  std::vector<Segment> segments_;
};

/// All monomials of x of degree <= D, graded-lex; length C(n+D, D).
inline std::vector<double> veronese_lift(std::span<const double> x, int degree) {
  detail::require(degree >= 1, "veronese_lift: degree must be >= 1");
  return MonomialIndex(x.size(), degree).lift(x);
}

// Coordinate count of the tuple-indexed lift ((1, x)^alpha)_{|alpha| <= D},
// sum_{j <= D} (n+1)^j; an upper bound on C(n+D, D).
inline double tuple_lift_dimension(std::size_t n, int degree) {
  double total = 0.0;
  double term = 1.0;
  for (int j = 0; j <= degree; ++j) {
    total += term;
    term *= static_cast<double>(n + 1);
  }
  return total;
}

struct LiftedHalfspace {
  std::vector<double> weights;  // unit norm
  double scale = 1.0;           // <weights * scale, lift(x)> = p(<x, w>)
};

inline LiftedHalfspace ptf_to_halfspace(const UnivariatePoly& p, std::span<const double> w,
                                        const MonomialIndex& index) {
  LiftedHalfspace h;
  h.weights = index.linearize(p, w);
  double norm2 = 0.0;
  for (double v : h.weights) norm2 += v * v;
  h.scale = std::sqrt(norm2);
  detail::require(h.scale > 0.0, "ptf_to_halfspace: zero polynomial");
  for (double& v : h.weights) v /= h.scale;
  return h;
}

inline LiftedHalfspace ptf_to_halfspace(const UnivariatePoly& p, std::span<const double> w,
                                        int lift_degree) {
  return ptf_to_halfspace(p, w, MonomialIndex(w.size(), lift_degree));
}

/// k unit weight vectors in the degree-D lift; the constant monomial folds
/// in the bias.
class HalfspaceSet {
 public:
  HalfspaceSet(MonomialIndex index, std::vector<LiftedHalfspace> halfspaces)
      : index_(std::move(index)), halfspaces_(std::move(halfspaces)) {
    weights_.resize(static_cast<Eigen::Index>(index_.size()),
                    static_cast<Eigen::Index>(halfspaces_.size()));
    for (std::size_t j = 0; j < halfspaces_.size(); ++j) {
      detail::require(halfspaces_[j].weights.size() == index_.size(),
                      "HalfspaceSet: weight vector has wrong length");
      for (std::size_t i = 0; i < index_.size(); ++i) {
        weights_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = halfspaces_[j].weights[i];
      }
    }
  }

  [[nodiscard]] const MonomialIndex& index() const { return index_; }
  [[nodiscard]] std::size_t lifted_dim() const { return index_.size(); }
  [[nodiscard]] std::size_t size() const { return halfspaces_.size(); }
  [[nodiscard]] const std::vector<LiftedHalfspace>& halfspaces() const { return halfspaces_; }
  [[nodiscard]] const Eigen::MatrixXd& weight_matrix() const { return weights_; }
  [[nodiscard]] double tuple_dim() const { return tuple_lift_dimension(index_.n(), index_.degree()); }

 private:
  MonomialIndex index_;
  std::vector<LiftedHalfspace> halfspaces_;
  Eigen::MatrixXd weights_;  // lifted_dim x k
};

inline HalfspaceSet build_halfspace_set(const PtfCollection& ptfs, int lift_degree) {
  detail::require(!ptfs.direction.empty(), "build_halfspace_set: collection has no direction");
  MonomialIndex index(ptfs.direction.size(), lift_degree);
  std::vector<LiftedHalfspace> hs;
  for (const auto& p : ptfs.polys) hs.push_back(ptf_to_halfspace(p, ptfs.direction, index));
  return HalfspaceSet(std::move(index), std::move(hs));
}

struct RealizationReport {
  std::size_t samples = 0;
  std::size_t consistent = 0;
  double consistency = 0.0;  // fraction with (y = +1) <=> all scores >= 0
  double min_margin = std::numeric_limits<double>::infinity();
  std::vector<double> halfspace_min_margin;
  std::vector<std::size_t> plus_violations;  // per halfspace: y = +1, score < 0
  std::size_t minus_misses = 0;              // y = -1 but every score >= 0

  [[nodiscard]] nlohmann::json to_json() const {
    return {{"samples", samples},
            {"consistent", consistent},
            {"consistency", consistency},
            {"min_margin", min_margin},
            {"halfspace_min_margin", halfspace_min_margin},
            {"plus_violations", plus_violations},
            {"minus_misses", minus_misses}};
  }
};

// Samples are lifted in small row blocks and scored against all k
// halfspaces with one matrix product per block.
inline RealizationReport verify_realization(const LabeledDataset& ds, const HalfspaceSet& hs) {
  if (ds.dim() != hs.index().n()) {
    throw InvalidParameter("verify_realization: dataset dimension " + std::to_string(ds.dim()) +
                           " does not match the lift's input dimension " +
                           std::to_string(hs.index().n()));
  }
  using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const std::size_t k = hs.size();
  const std::size_t lifted = hs.lifted_dim();
  constexpr std::size_t kBlock = 32;

  RealizationReport rep;
  rep.samples = ds.size();
  rep.halfspace_min_margin.assign(k, std::numeric_limits<double>::infinity());
  rep.plus_violations.assign(k, 0);

  RowMatrix lifts(static_cast<Eigen::Index>(kBlock), static_cast<Eigen::Index>(lifted));
  Eigen::MatrixXd scores;
  for (std::size_t start = 0; start < ds.size(); start += kBlock) {
    const std::size_t rows = std::min(kBlock, ds.size() - start);
    for (std::size_t r = 0; r < rows; ++r) {
      hs.index().lift_into(ds.point(start + r),
                           std::span<double>(lifts.data() + r * lifted, lifted));
    }
    scores.noalias() = lifts.topRows(static_cast<Eigen::Index>(rows)) * hs.weight_matrix();
    for (std::size_t r = 0; r < rows; ++r) {
      const int y = ds.label(start + r);
      bool all_nonneg = true;
      for (std::size_t j = 0; j < k; ++j) {
        const double s = scores(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
        rep.halfspace_min_margin[j] = std::min(rep.halfspace_min_margin[j], std::abs(s));
        rep.min_margin = std::min(rep.min_margin, std::abs(s));
        if (s < 0.0) {
          all_nonneg = false;
          if (y > 0) ++rep.plus_violations[j];
        }
      }
      if ((y > 0) == all_nonneg) ++rep.consistent;
      if (y < 0 && all_nonneg) ++rep.minus_misses;
    }
  }
  rep.consistency = ds.empty() ? 1.0 : static_cast<double>(rep.consistent) / ds.size();
  return rep;
}

}  // namespace pancakes

#endif  // PANCAKES_REALIZE_HPP
