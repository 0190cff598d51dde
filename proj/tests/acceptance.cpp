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


// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 when
// any criterion fails. Tolerances and calibrated constants are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "pancakes/experiment.hpp"
#include "pancakes/gaussian_core.hpp"
#include "pancakes/harness.hpp"
#include "pancakes/hclwe.hpp"
#include "pancakes/hermite.hpp"
#include "pancakes/pancake.hpp"
#include "pancakes/realize.hpp"

namespace pancakes {
namespace {

// Frozen constants.
constexpr double kMomentTolerance = 1e-9;       // relative to max(1, E Z^l)
constexpr double kNearMatchC1 = 0.1;            // deviation <= exp(-c1 k ln N)
constexpr double kMarginC0 = 2e-4;              // margin >= c0 / (N sqrt(k ln N))
constexpr double kGapRelTolerance = 1e-12;
constexpr double kOracleAdvantageMin = 0.9;
constexpr double kConstantAdvantageMax = 0.1;
constexpr double kFalsePlantedMax = 0.15;
constexpr double kLiftedHoldoutMax = 0.1;
constexpr double kLinearHoldoutMin = 0.4;
constexpr double kSqTauFactor = 10.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

const std::vector<std::pair<int, long>> kPancakeGrid{{2, 256}, {4, 256}, {4, 4096}};

ExperimentConfig pancake_config() {
  ExperimentConfig cfg;
  cfg.k = 4;
  cfg.n = 16;
  cfg.m = 100000;
  cfg.tau = 0.05;
  cfg.seed = 1;
  return cfg;
}

ExperimentConfig hclwe_config() {
  ExperimentConfig cfg;
  cfg.family = "hclwe";
  cfg.n = 16;
  cfg.gamma = 8.0;
  cfg.beta = 1.0 / 16.0;
  cfg.d = 3;
  cfg.m = 100000;
  cfg.tau = 0.05;
  cfg.seed = 1;
  return cfg;
}

struct RealizationRun {
  std::string family;
  RealizationReport report;
  bool certified = false;
  double margin_floor = 0.0;  // c0 / (N sqrt(k ln N))
};

// Shared by the realizability and margin criteria.
std::vector<RealizationRun>& realization_runs() {
  static std::vector<RealizationRun> runs = [] {
    std::vector<RealizationRun> out;
    for (const auto& cfg : {pancake_config(), hclwe_config()}) {
      const Instance inst = make_instance(cfg);
      Rng rng = make_stream(cfg.seed, 1);
      const LabeledDataset planted = inst.planted(cfg.m, rng);
      const HalfspaceSet hs = build_halfspace_set(inst.ptfs, inst.lift_degree);
      RealizationRun run;
      run.family = cfg.family;
      run.report = verify_realization(planted, hs);
      run.certified = certify_ptfs(inst.ptfs).ok;
      const double big_n = static_cast<double>(hs.lifted_dim());
      const double k = static_cast<double>(hs.size());
      run.margin_floor = kMarginC0 / (big_n * std::sqrt(k * std::log(big_n)));
      out.push_back(std::move(run));
    }
    return out;
  }();
  return runs;
}

Outcome moment_matching() {
  double worst = 0.0;
  int worst_k = 0;
  for (int k = 2; k <= 16; ++k) {
    const double dev = relative_moment_deviation(gauss_hermite_weights(k), 2 * k - 1);
    if (dev > worst) {
      worst = dev;
      worst_k = k;
    }
  }
  return {worst < kMomentTolerance,
          "max relative deviation " + fmt(worst) + " (k=" + std::to_string(worst_k) + ")"};
}

Outcome near_matching() {
  bool ok = true;
  std::string detail;
  for (const auto& [k, big_n] : kPancakeGrid) {
    const PancakeSpec spec = build_pancake_spec(k, big_n);
    const double bound = std::exp(-kNearMatchC1 * k * std::log(static_cast<double>(big_n)));
    const double dev = moment_deviation(spec.planted(+1), k);
    ok = ok && dev <= bound;
    detail += "(" + std::to_string(k) + "," + std::to_string(big_n) + ") " + fmt(dev) + " <= " +
              fmt(bound) + "; ";
  }
  return {ok, detail};
}

Outcome chi_squared() {
  bool ok = true;
  std::string detail;
  for (const auto& [k, big_n] : kPancakeGrid) {
    const PancakeSpec spec = build_pancake_spec(k, big_n);
    const TruncatedMixture trunc = spec.planted(+1);
    const TruncatedMixture smooth = spec.smoothed(+1);
    const double chi_t = chi2_divergence_1d([&](double x) { return trunc.density(x); },
                                            {trunc.support(), trunc.breakpoints()});
    const double chi_s = chi2_divergence_1d([&](double x) { return smooth.density(x); },
                                            {{{-40.0, 40.0}}, smooth.breakpoints()});
    const double rhs = 4.0 * chi_s + 3.0;
    ok = ok && std::isfinite(chi_t) && chi_t < rhs;
    detail += "(" + std::to_string(k) + "," + std::to_string(big_n) + ") " + fmt(chi_t) + " < " +
              fmt(rhs) + "; ";
  }
  return {ok, detail};
}

Outcome realizability() {
  bool ok = true;
  std::string detail;
  for (const auto& run : realization_runs()) {
    const auto& r = run.report;
    std::size_t violations = r.minus_misses;
    for (std::size_t v : r.plus_violations) violations += v;
    ok = ok && r.samples > 0 && r.consistent == r.samples && violations == 0;
    detail += run.family + " " + std::to_string(r.samples) + " samples, " +
              std::to_string(violations) + " violations; ";
  }
  return {ok, detail};
}

Outcome support_geometry() {
  const std::vector<HclweParams> grid{
      {4, 4.0, 0.25, 0.0, 4}, {8, 2.0 * std::sqrt(8.0), 1.0 / 8, 0.0, 8},
      {16, 8.0, 1.0 / 16, 0.0, 16}, {16, 3.0, 0.5, 0.0, 16}, {32, 12.0, 0.01, 0.0, 32}};
  bool ok = true;
  double worst = 0.0;
  for (const auto& p : grid) {
    const double u = p.spacing();
    const double gap = cross_family_gap(p, p.with_phase(0.5));
    const double rel = std::abs(gap - 0.3 * u) / (0.3 * u);
    worst = std::max(worst, rel);
    ok = ok && rel < kGapRelTolerance && gap >= u / 5.0;
  }
  return {ok, std::to_string(grid.size()) + " parameter sets, max relative error vs 3u/10 " +
                  fmt(worst)};
}

Outcome margin() {
  bool ok = true;
  std::string detail;
  for (const auto& run : realization_runs()) {
    const double mm = run.report.min_margin;
    ok = ok && run.certified && mm > 0.0 && mm >= run.margin_floor;
    detail += run.family + " " + fmt(mm) + " >= " + fmt(run.margin_floor) + "; ";
  }
  return {ok, detail};
}

Outcome truncation() {
  bool ok = true;
  std::string detail;
  for (int n : {4, 8}) {
    for (double phase : {0.0, 0.5}) {
      const auto p = HclweParams::defaults(n, phase);
      const double tvd = truncation_tvd(p, 20);
      const double bound = 2.0 * truncation_mass(p.mixture_width(), n);
      ok = ok && tvd <= bound;
      detail += "n=" + std::to_string(n) + " c=" + fmt(phase) + " " + fmt(tvd) + " <= " + fmt(bound) + "; ";
    }
  }
  double prev = kInf;
  for (int n = 2; n <= 32; ++n) {
    const double mass = truncation_mass(HclweParams::defaults(n, 0.0).mixture_width(), n);
    ok = ok && mass < prev;
    prev = mass;
  }
  return {ok, detail + "mass decreasing on n=2..32"};
}

Outcome distinguisher() {
  ExperimentConfig cfg = pancake_config();
  cfg.m = 10000;
  const Instance inst = make_instance(cfg);
  const DatasetGenerator gen_planted = [&](Rng& r) { return inst.planted(cfg.m, r); };
  const DatasetGenerator gen_null = [&](Rng& r) { return inst.null(cfg.m, r); };
  const auto oracle = advantage_estimate(gen_planted, gen_null, oracle_learner(inst.w, inst.ptfs.plus),
                                         cfg.tau, 200, 11);
  const auto constant = advantage_estimate(gen_planted, gen_null, constant_learner(), cfg.tau, 200, 12);
  const bool ok = oracle.advantage >= kOracleAdvantageMin &&
                  constant.advantage <= kConstantAdvantageMax &&
                  oracle.false_planted_rate <= kFalsePlantedMax &&
                  constant.false_planted_rate <= kFalsePlantedMax;
  return {ok, "oracle advantage " + fmt(oracle.advantage) + ", constant advantage " +
                  fmt(constant.advantage) + ", false planted " + fmt(oracle.false_planted_rate) +
                  " / " + fmt(constant.false_planted_rate)};
}

Outcome upper_bound_route() {
  ExperimentConfig cfg;
  cfg.k = 2;
  cfg.n = 8;
  cfg.m = 10000;
  cfg.tau = 0.05;
  cfg.seed = 3;
  const Instance inst = make_instance(cfg);
  Rng rng = make_stream(cfg.seed, 1);
  const LabeledDataset ds = inst.planted(cfg.m, rng);
  const auto lifted = distinguish(
      ds, lifted_ptf_learner(inst.lift_degree, static_cast<int>(inst.ptfs.polys.size()), cfg.seed),
      cfg.tau);
  const auto linear = distinguish(ds, ltf_learner(cfg.seed), cfg.tau);
  const bool ok = lifted.error <= kLiftedHoldoutMax && linear.error >= kLinearHoldoutMin;
  return {ok, "degree-" + std::to_string(inst.lift_degree) + " holdout " + fmt(lifted.error) +
                  ", degree-1 holdout " + fmt(linear.error)};
}

Outcome sq_blindness() {
  const PancakeSpec spec = build_pancake_spec(4, 153);
  const std::size_t n = 16;
  Rng rng = make_stream(5);
  const auto w = random_unit_vector(n, rng);
  const SqTarget planted = pancake_target(spec, w);
  const SqTarget null = SqTarget::null(n, 1.0);

  std::vector<ProjectedQuery> family;
  std::vector<double> orth(n, 0.0);
  // A unit vector orthogonal to w.
  {
    const std::size_t j = std::abs(w[0]) < 0.9 ? 0 : 1;
    orth[j] = 1.0;
    const double a = dot(orth, w);
    for (std::size_t i = 0; i < n; ++i) orth[i] -= a * w[i];
    const double norm = std::sqrt(dot(orth, orth));
    for (auto& v : orth) v /= norm;
  }
  for (int degree = 0; degree <= spec.k; ++degree) {
    for (bool times_label : {false, true}) {
      family.push_back(hermite_query(degree, w, times_label));
      family.push_back(hermite_query(degree, orth, times_label));
    }
  }
  double gap = 0.0;
  for (const auto& q : family) gap = std::max(gap, std::abs(planted.expectation(q) - null.expectation(q)));
  const double tau = std::min(1.0, kSqTauFactor * gap);

  SqOracle on_planted(planted, tau, SqMode::kAdversarial);
  SqOracle on_null(null, tau, SqMode::kAdversarial);
  std::size_t identical = 0;
  for (const auto& q : family) identical += on_planted.query(q) == on_null.query(q);

  const auto separating = hermite_query(2 * spec.k, w, true);
  const double sp = on_planted.query(separating);
  const double sn = on_null.query(separating);
  const bool ok = identical == family.size() && sp != sn;
  return {ok, std::to_string(identical) + "/" + std::to_string(family.size()) +
                  " low-degree answers identical at tau " + fmt(tau) + " (gap " + fmt(gap) +
                  "); " + separating.name + " answers " + fmt(sp) + " vs " + fmt(sn)};
}

Outcome advantage_transfer() {
  const auto rep = advantage_transfer_check(8, 100, 7);
  return {rep.violations == 0, std::to_string(rep.triples) + " triples x 256 distinguishers, " +
                                   std::to_string(rep.violations) + " violations, worst slack " +
                                   fmt(rep.worst_slack)};
}

}  // namespace
}  // namespace pancakes

int main() {
  using namespace pancakes;
  const std::vector<Criterion> criteria{
      {1, "moment matching", 1.0, moment_matching},
      {2, "pancake near-matching", 10.0, near_matching},
      {3, "chi-squared bound", 10.0, chi_squared},
      {4, "realizability", 30.0, realizability},
      {5, "support geometry", 5.0, support_geometry},
      {6, "margin", 5.0, margin},
      {7, "truncation tvd", 5.0, truncation},
      {8, "distinguisher calibration", 120.0, distinguisher},
      {9, "upper-bound route", 120.0, upper_bound_route},
      {10, "sq blindness", 60.0, sq_blindness},
      {11, "advantage transfer", 5.0, advantage_transfer},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (out.detail.ends_with("; ")) out.detail.resize(out.detail.size() - 2);
    const bool in_budget = secs < c.budget_s;
    const bool pass = out.pass && in_budget;
    failures += !pass;
    std::printf("%s [%d] %s: %s (%.2f s, budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), out.detail.c_str(), secs, c.budget_s, in_budget ? "" : ", exceeded");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
