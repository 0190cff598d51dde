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


#include "pancakes/realize.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "pancakes/hclwe.hpp"
#include "pancakes/pancake.hpp"

namespace pancakes {
namespace {

std::vector<double> unit(std::size_t n, std::uint64_t seed) {
  Rng rng = make_stream(seed);
  return random_unit_vector(n, rng);
}

TEST(UnivariatePolyTest, RootsEvaluationDerivative) {
  const std::vector<double> roots{1.0, 2.0, -3.0};
  const auto p = UnivariatePoly::from_roots(roots);
  EXPECT_EQ(p.degree(), 3);
  EXPECT_EQ(p.leading(), 1.0);
  for (double r : roots) EXPECT_EQ(p(r), 0.0);
  EXPECT_EQ(p(0.0), 6.0);
  // p = z^3 - 7z + 6, p' = 3z^2 - 7
  EXPECT_EQ(p.derivative().coefficients(), (std::vector<double>{-7.0, 0.0, 3.0}));
  EXPECT_EQ(UnivariatePoly({1.0, 2.0, 0.0, 0.0}).degree(), 1);
}

TEST(UnivariatePolyTest, SturmCounts) {
  const std::vector<double> roots{1.0, 2.0, -3.0};
  const auto p = UnivariatePoly::from_roots(roots);
  EXPECT_EQ(p.count_roots(0.0, 2.5), 2);
  EXPECT_EQ(p.count_roots(-10.0, 10.0), 3);
  EXPECT_EQ(p.count_roots(2.0, 5.0), 0);  // half-open (a, b]
  EXPECT_EQ(p.count_roots_closed(2.0, 5.0), 1);
  const std::vector<double> close{0.5, 0.5000001};
  EXPECT_EQ(UnivariatePoly::from_roots(close).count_roots(0.0, 1.0), 2);
  EXPECT_EQ(UnivariatePoly({1.0, 0.0, 1.0}).count_roots(-5.0, 5.0), 0);
}

TEST(IntervalPtfsTest, DegreeTwoExample) {
  const std::vector<Interval> a{{-1.2, -0.8}, {0.8, 1.2}};
  const std::vector<Interval> b{{-0.2, 0.2}};
  const auto ptfs = interval_ptfs_degree2(a, b);
  ASSERT_EQ(ptfs.polys.size(), 1u);
  const auto& c = ptfs.polys[0].coefficients();
  ASSERT_EQ(c.size(), 3u);
  EXPECT_NEAR(c[0], -0.25, 1e-15);
  EXPECT_NEAR(c[1], 0.0, 1e-15);
  EXPECT_EQ(c[2], 1.0);
  for (double z : {-0.2, 0.0, 0.2}) EXPECT_LT(ptfs.polys[0](z), 0.0);
  for (double z : {-1.2, -0.8, 0.8, 1.2}) EXPECT_GT(ptfs.polys[0](z), 0.0);
  EXPECT_TRUE(certify_ptfs(ptfs).ok);
}

TEST(IntervalPtfsTest, RejectsBadLayouts) {
  const std::vector<Interval> a{{-1.2, -0.8}, {-0.7, -0.5}};
  const std::vector<Interval> b{{0.0, 0.2}};
  EXPECT_THROW(interval_ptfs_degree2(a, b), ConsistencyError);
  const std::vector<Interval> overlapping{{-0.1, 0.5}};
  const std::vector<Interval> plus{{0.4, 1.0}};
  EXPECT_THROW(interval_ptfs_degree2(plus, overlapping), ConsistencyError);
}

TEST(IntervalPtfsTest, PancakeInstanceCertifies) {
  const auto spec = build_pancake_spec(4, 256);
  const auto ptfs = interval_ptfs_degree2(spec.s_a(), spec.s_b());
  EXPECT_EQ(ptfs.polys.size(), spec.s_b().size());
  const auto cert = certify_ptfs(ptfs);
  EXPECT_TRUE(cert.ok);
  EXPECT_EQ(cert.plus_failures, 0u);
  EXPECT_EQ(cert.minus_failures, 0u);
  EXPECT_GT(cert.min_plus_value, 0.0);
  EXPECT_LT(cert.max_minus_value, 0.0);
}

TEST(IntervalPtfsTest, CertificateCatchesWrongSign) {
  const std::vector<Interval> a{{-1.2, -0.8}, {0.8, 1.2}};
  const std::vector<Interval> b{{-0.2, 0.2}};
  auto ptfs = interval_ptfs_degree2(a, b);
  ptfs.polys[0] = UnivariatePoly({-2.0, 0.0, 1.0});  // negative on both plus intervals too
  const auto cert = certify_ptfs(ptfs);
  EXPECT_FALSE(cert.ok);
  EXPECT_GT(cert.plus_failures, 0u);
}

TEST(BlockedPtfsTest, SinglePolynomialCoversAllMinusIntervals) {
  const HclweParams p0{1, 2.0, 0.01, 0.0, 1};
  const auto plus = support_intervals(p0);
  const auto minus = support_intervals(p0.with_phase(0.5));
  const auto ptfs = interval_ptfs_blocked(plus, minus, 3);
  ASSERT_EQ(ptfs.polys.size(), 1u);
  EXPECT_EQ(ptfs.polys[0].degree(), 6);
  const auto& p = ptfs.polys[0];
  for (const auto& iv : minus) {
    for (int i = 0; i <= 1000; ++i) ASSERT_LT(p(iv.lo + iv.length() * i / 1000.0), 0.0);
  }
  for (const auto& iv : plus) {
    for (int i = 0; i <= 1000; ++i) ASSERT_GT(p(iv.lo + iv.length() * i / 1000.0), 0.0);
  }
  EXPECT_TRUE(certify_ptfs(ptfs).ok);
}

TEST(BlockedPtfsTest, BlocksPartitionMinusIntervals) {
  const auto p0 = HclweParams::defaults(4);
  const auto plus = support_intervals(p0);
  const auto minus = support_intervals(p0.with_phase(0.5));
  const auto ptfs = interval_ptfs_blocked(plus, minus, 3);
  ASSERT_EQ(ptfs.polys.size(), 3u);
  std::vector<int> cover(minus.size(), 0);
  for (std::size_t j = 0; j < ptfs.polys.size(); ++j) {
    EXPECT_EQ(ptfs.polys[j].degree(), 6);
    EXPECT_EQ(ptfs.polys[j].leading(), 1.0);
    for (std::size_t i : ptfs.assignment[j]) {
      ++cover[i];
      EXPECT_LT(ptfs.polys[j](ptfs.minus[i].center()), 0.0);
    }
    for (const auto& iv : plus) EXPECT_GT(ptfs.polys[j](iv.center()), 0.0);
  }
  for (int c : cover) EXPECT_EQ(c, 1);
  EXPECT_TRUE(certify_ptfs(ptfs).ok);
}

TEST(BlockedPtfsTest, BlockSizeMustDivide) {
  const auto p0 = HclweParams::defaults(4);
  try {
    interval_ptfs_blocked(support_intervals(p0), support_intervals(p0.with_phase(0.5)), 2);
    FAIL() << "expected InvalidParameter";
  } catch (const InvalidParameter& e) {
    EXPECT_NE(std::string(e.what()).find("must divide"), std::string::npos);
  }
}

TEST(VeroneseTest, SmallLift) {
  const std::vector<double> x{2.0, 3.0};
  EXPECT_EQ(veronese_lift(x, 2), (std::vector<double>{1.0, 2.0, 3.0, 4.0, 6.0, 9.0}));
  const std::vector<double> zero(5, 0.0);
  const auto z = veronese_lift(zero, 3);
  EXPECT_EQ(z[0], 1.0);
  for (std::size_t i = 1; i < z.size(); ++i) EXPECT_EQ(z[i], 0.0);
}

TEST(VeroneseTest, GradedLexOrderAndExponents) {
  const MonomialIndex index(3, 3);
  int last_degree = 0;
  std::vector<int> last;
  for (std::size_t m = 0; m < index.size(); ++m) {
    const auto alpha = index.exponents(m);
    int d = 0;
    for (int a : alpha) d += a;
    EXPECT_EQ(d, index.monomial_degree(m));
    EXPECT_GE(d, last_degree);
    // Within a degree, exponent vectors decrease lexicographically.
    if (d == last_degree && m > 0) EXPECT_GT(last, alpha);
    last_degree = d;
    last = alpha;
  }
}

TEST(VeroneseTest, DimensionCounts) {
  for (std::size_t n : {1u, 2u, 5u, 16u}) {
    for (int degree : {1, 2, 3, 6}) {
      const MonomialIndex index(n, degree);
      EXPECT_EQ(static_cast<double>(index.size()),
                MonomialIndex::binomial(static_cast<double>(n) + degree, degree));
      EXPECT_GE(tuple_lift_dimension(n, degree), static_cast<double>(index.size()));
    }
  }
  EXPECT_EQ(MonomialIndex(16, 2).size(), 153u);
  EXPECT_EQ(MonomialIndex(16, 6).size(), 74613u);
  EXPECT_THROW(MonomialIndex(200, 8), OverflowError);
}

TEST(VeroneseTest, OverflowGuard) {
  const std::vector<double> x{1e200, 1.0};
  EXPECT_THROW(veronese_lift(x, 4), OverflowError);
}

TEST(LinearizeTest, LinearAndQuadraticCases) {
  const auto w = unit(4, 3);
  const auto h = ptf_to_halfspace(UnivariatePoly({0.0, 1.0}), w, 1);
  EXPECT_EQ(h.weights[0], 0.0);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(h.weights[i + 1], w[i], 1e-15);
  EXPECT_NEAR(h.scale, 1.0, 1e-15);

  const std::vector<double> e{1.0};
  const auto q = ptf_to_halfspace(UnivariatePoly({-1.0, 0.0, 1.0}), e, 2);
  EXPECT_NEAR(q.weights[0] * q.scale, -1.0, 1e-15);
  EXPECT_NEAR(q.weights[1] * q.scale, 0.0, 1e-15);
  EXPECT_NEAR(q.weights[2] * q.scale, 1.0, 1e-15);
  EXPECT_NEAR(q.scale, std::sqrt(2.0), 1e-15);
}

TEST(LinearizeTest, IdentityOnRandomInputs) {
  Rng rng = make_stream(77);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const int degree = 1 + trial % 5;
    const MonomialIndex index(n, degree + trial % 2);
    const auto w = random_unit_vector(n, rng);
    std::vector<double> coeffs(degree + 1);
    for (auto& c : coeffs) c = standard_normal(rng);
    const UnivariatePoly p(coeffs);
    const auto h = ptf_to_halfspace(p, w, index);
    std::vector<double> x(n);
    for (auto& v : x) v = 1.5 * standard_normal(rng);
    const auto lifted = index.lift(x);
    double lhs = 0.0;
    for (std::size_t i = 0; i < lifted.size(); ++i) lhs += h.weights[i] * h.scale * lifted[i];
    const double rhs = p(dot(w, x));
    EXPECT_LT(std::abs(lhs - rhs), 1e-9 * (1.0 + std::abs(rhs))) << "trial " << trial;
    double norm2 = 0.0;
    for (double v : h.weights) norm2 += v * v;
    EXPECT_NEAR(norm2, 1.0, 1e-12);
  }
}

TEST(LinearizeTest, DegreeOverflow) {
  const std::vector<double> w{1.0, 0.0};
  EXPECT_THROW(ptf_to_halfspace(UnivariatePoly({0.0, 0.0, 0.0, 1.0}), w, 2), InvalidParameter);
}

TEST(RealizationTest, PancakeInstanceIsRealized) {
  const auto spec = build_pancake_spec(4, 153);
  const auto w = unit(16, 5);
  const auto ptfs = interval_ptfs_degree2(spec.s_a(), spec.s_b()).with_direction(w);
  const auto hs = build_halfspace_set(ptfs, 2);
  EXPECT_EQ(hs.lifted_dim(), 153u);
  EXPECT_EQ(hs.size(), 3u);
  Rng rng = make_stream(6);
  const auto ds = sample_labeled_sq(spec, w, 20000, rng);
  const auto rep = verify_realization(ds, hs);
  EXPECT_EQ(rep.consistent, ds.size());
  EXPECT_EQ(rep.consistency, 1.0);
  EXPECT_GT(rep.min_margin, 0.0);
  EXPECT_EQ(rep.minus_misses, 0u);
  for (std::size_t v : rep.plus_violations) EXPECT_EQ(v, 0u);

  Rng null_rng = make_stream(7);
  const auto null = sample_null(16, 2000, VarianceConvention::kUnit, null_rng);
  const auto null_rep = verify_realization(null, hs);
  EXPECT_GE(null_rep.consistency, 0.0);
  EXPECT_LE(null_rep.consistency, 1.0);
}

TEST(RealizationTest, SmallHclweInstanceIsRealized) {
  const auto p0 = HclweParams::defaults(4);
  const auto p1 = p0.with_phase(0.5);
  const auto w = unit(4, 8);
  const auto ptfs =
      interval_ptfs_blocked(support_intervals(p0), support_intervals(p1), 3).with_direction(w);
  const auto hs = build_halfspace_set(ptfs, 6);
  Rng rng = make_stream(9);
  const auto ds = sample_labeled_clwe(p0, p1, w, 20000, rng);
  const auto rep = verify_realization(ds, hs);
  EXPECT_EQ(rep.consistency, 1.0);
  EXPECT_GT(rep.min_margin, 0.0);
}

TEST(RealizationTest, DimensionMismatch) {
  const std::vector<Interval> a{{-1.2, -0.8}, {0.8, 1.2}};
  const std::vector<Interval> b{{-0.2, 0.2}};
  const auto hs = build_halfspace_set(interval_ptfs_degree2(a, b).with_direction(unit(3, 1)), 2);
  const LabeledDataset ds(4);
  EXPECT_THROW(verify_realization(ds, hs), InvalidParameter);
}

}  // namespace
}  // namespace pancakes
