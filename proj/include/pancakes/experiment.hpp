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

// Experiment configuration and the two top-level commands: generate a
// planted/null dataset pair with a certification report, and run the
// distinguisher experiment.
//
// Random streams of a seed: 0 draws the hidden direction, 1 the planted
// dataset, 2 the null dataset. Distinguisher trials use a separate seed
// derived from the configured one.

#ifndef PANCAKES_EXPERIMENT_HPP
#define PANCAKES_EXPERIMENT_HPP

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pancakes/dataset.hpp"
#include "pancakes/dataset_io.hpp"
#include "pancakes/errors.hpp"
#include "pancakes/harness.hpp"
#include "pancakes/hclwe.hpp"
#include "pancakes/hermite.hpp"
#include "pancakes/pancake.hpp"
#include "pancakes/random.hpp"
#include "pancakes/realize.hpp"

namespace pancakes {

struct ExperimentConfig {
  std::string family = "pancake-sq";  // or "hclwe"
  int k = 4;                          // pancake: number of +1 components
  int n = 16;                         // ambient dimension
  long lifted_n = 0;                  // pancake N; 0 means C(n+2, 2)
  double trunc_c = kDefaultTruncationConstant;
  double gamma = 0.0;                 // hclwe; 0 means 2 sqrt(n)
  double beta = 0.0;                  // hclwe; 0 means 1/n
  int d = 1;                          // hclwe block size, must divide 2n+1
  std::size_t m = 10000;
  double tau = 0.05;
  std::uint64_t seed = 0;
  std::string learner = "oracle";     // oracle | constant | ltf | lifted-ptf
  std::string out = "pancakes";
  bool expose_planted = false;
  std::size_t trials = 200;
  std::string data;                   // experiment on a saved dataset instead

  [[nodiscard]] bool is_pancake() const { return family == "pancake-sq"; }

  [[nodiscard]] long effective_lifted_n() const {
    if (lifted_n > 0) return lifted_n;
    return static_cast<long>(MonomialIndex::binomial(n + 2.0, 2));
  }
  [[nodiscard]] double effective_gamma() const {
    return gamma > 0.0 ? gamma : 2.0 * std::sqrt(static_cast<double>(n));
  }
  [[nodiscard]] double effective_beta() const { return beta > 0.0 ? beta : 1.0 / n; }

  [[nodiscard]] HclweParams hclwe(double phase) const {
    return {n, effective_gamma(), effective_beta(), phase, n};
  }

  // Throws InvalidParameter naming the violated rule.
  void validate() const {
    if (family != "pancake-sq" && family != "hclwe") {
      throw InvalidParameter("family must be pancake-sq or hclwe, got '" + family + "'");
    }
    if (n < 2) throw InvalidParameter("n must be >= 2");
    if (is_pancake()) {
      if (k < 2 || k > kMaxHermiteDegree) throw InvalidParameter("k must lie in [2, 64]");
      if (effective_lifted_n() < 16) throw InvalidParameter("N must be >= 16");
      if (!(trunc_c > 0.0)) throw InvalidParameter("truncation constant c must be positive");
    } else {
      if (d < 1 || (2 * n + 1) % d != 0) {
        throw InvalidParameter("d must divide 2n+1 (d = " + std::to_string(d) +
                               ", 2n+1 = " + std::to_string(2 * n + 1) + ")");
      }
      if (!(effective_beta() > 0.0 && effective_beta() <= effective_gamma())) {
        throw InvalidParameter("hclwe needs 0 < beta <= gamma");
      }
    }
    if (m < 2 || m % 2 != 0) throw InvalidParameter("m must be even and >= 2");
    if (!(tau >= 5.0 / std::sqrt(static_cast<double>(m)) * (1.0 - 1e-12))) {
      throw InvalidParameter("tau must be >= 5/sqrt(m) (tau = " + std::to_string(tau) +
                             ", 5/sqrt(m) = " + std::to_string(5.0 / std::sqrt(double(m))) + ")");
    }
    if (learner != "oracle" && learner != "constant" && learner != "ltf" &&
        learner != "lifted-ptf") {
      throw InvalidParameter("learner must be oracle, constant, ltf or lifted-ptf, got '" +
                             learner + "'");
    }
    if (trials < 30) throw InvalidParameter("trials must be >= 30");
    if (out.empty()) throw InvalidParameter("output prefix must not be empty");
  }

  [[nodiscard]] nlohmann::json to_json() const {
    nlohmann::json j{{"family", family}, {"n", n},           {"m", m},
                     {"tau", tau},       {"seed", seed},     {"learner", learner},
                     {"trials", trials}, {"expose_planted", expose_planted}};
    if (is_pancake()) {
      j["k"] = k;
      j["N"] = effective_lifted_n();
      j["c"] = trunc_c;
    } else {
      j["gamma"] = effective_gamma();
      j["beta"] = effective_beta();
      j["d"] = d;
    }
    return j;
  }
};

/// Everything needed to sample, realize and learn one configured instance.
struct Instance {
  ExperimentConfig config;
  std::vector<double> w;
  PtfCollection ptfs;  // with direction w
  int lift_degree = 2;
  std::optional<PancakeSpec> pancake;
  std::optional<HclweParams> plus_params;
  std::optional<HclweParams> minus_params;

  [[nodiscard]] VarianceConvention null_convention() const {
    return pancake ? VarianceConvention::kUnit : VarianceConvention::kOneOverTwoPi;
  }

  [[nodiscard]] LabeledDataset planted(std::size_t m, Rng& rng) const {
    LabeledDataset ds = pancake ? sample_labeled_sq(*pancake, w, m, rng)
                                : sample_labeled_clwe(*plus_params, *minus_params, w, m, rng);
    ds.meta().seed = config.seed;
    return ds;
  }

  [[nodiscard]] LabeledDataset null(std::size_t m, Rng& rng) const {
    LabeledDataset ds = sample_null(w.size(), m, null_convention(), rng);
    ds.meta().seed = config.seed;
    return ds;
  }

  [[nodiscard]] Learner learner() const {
    const std::string& name = config.learner;
    if (name == "oracle") return oracle_learner(w, ptfs.plus);
    if (name == "constant") return constant_learner();
    if (name == "ltf") return ltf_learner(config.seed);
    return lifted_ptf_learner(lift_degree, static_cast<int>(ptfs.polys.size()), config.seed);
  }
};

inline Instance make_instance(const ExperimentConfig& cfg) {
  cfg.validate();
  Instance inst;
  inst.config = cfg;
  Rng rng = make_stream(cfg.seed, 0);
  inst.w = random_unit_vector(static_cast<std::size_t>(cfg.n), rng);
  if (cfg.is_pancake()) {
    inst.pancake = build_pancake_spec(cfg.k, cfg.effective_lifted_n(), cfg.trunc_c);
    inst.ptfs = interval_ptfs_degree2(inst.pancake->s_a(), inst.pancake->s_b()).with_direction(inst.w);
    inst.lift_degree = 2;
  } else {
    inst.plus_params = cfg.hclwe(0.0);
    inst.minus_params = cfg.hclwe(0.5);
    inst.plus_params->validate();
    inst.ptfs = interval_ptfs_blocked(support_intervals(*inst.plus_params),
                                      support_intervals(*inst.minus_params), cfg.d)
                    .with_direction(inst.w);
    inst.lift_degree = 2 * cfg.d;
  }
  return inst;
}

/// Checks that make the planted dataset trustworthy: PTF sign certificate,
/// realization by the lifted halfspaces, and the instance's own geometry.
inline nlohmann::json certification_record(const Instance& inst, const LabeledDataset& planted) {
  const PtfCertificate cert = certify_ptfs(inst.ptfs);
  const HalfspaceSet hs = build_halfspace_set(inst.ptfs, inst.lift_degree);
  const RealizationReport rep = verify_realization(planted, hs);
  const double big_n = static_cast<double>(hs.lifted_dim());
  const double k = static_cast<double>(hs.size());
  nlohmann::json j{{"record", "certification"},
                   {"ptf_certified", cert.ok},
                   {"ptf_min_plus_value", cert.min_plus_value},
                   {"ptf_max_minus_value", cert.max_minus_value},
                   {"halfspaces", hs.size()},
                   {"lift_degree", inst.lift_degree},
                   {"lifted_dim", hs.lifted_dim()},
                   {"tuple_lift_dim", hs.tuple_dim()},
                   {"realization", rep.to_json()},
                   {"consistency", rep.consistency},
                   {"min_margin", rep.min_margin},
                   {"margin_scale", 1.0 / (big_n * std::sqrt(k * std::log(big_n)))}};
  if (inst.pancake) {
    j["moment_deviation_plus"] = moment_deviation(inst.pancake->planted(+1), inst.pancake->k);
    j["moment_deviation_minus"] = moment_deviation(inst.pancake->planted(-1), inst.pancake->k);
    j["min_interval_gap"] = inst.pancake->min_gap;
    j["in_theorem_regime"] = inst.pancake->in_theorem_regime();
  } else {
    j["support_gap"] = cross_family_gap(*inst.plus_params, *inst.minus_params);
    j["support_gap_expected"] = 0.3 * inst.plus_params->spacing();
  }
  return j;
}

struct CommandResult {
  std::vector<nlohmann::json> records;
  std::string summary;
  std::vector<std::string> files;
};

namespace detail {

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw IoError("write to " + path + " failed");
}

inline void write_report(const std::string& prefix, CommandResult& res) {
  std::string lines;
  for (const auto& r : res.records) lines += r.dump() + "\n";
  write_text(prefix + ".report.jsonl", lines);
  write_text(prefix + ".summary.txt", res.summary);
  res.files.push_back(prefix + ".report.jsonl");
  res.files.push_back(prefix + ".summary.txt");
}

inline std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

// Seed for distinguisher trials, kept apart from the instance streams.
inline std::uint64_t trial_seed(std::uint64_t seed) { return seed ^ 0x9e3779b97f4a7c15ULL; }

}  // namespace detail

/// Writes <out>.planted.bin, <out>.null.bin, <out>.report.jsonl and
/// <out>.summary.txt. Output is a deterministic function of the config.
inline CommandResult cmd_generate(const ExperimentConfig& cfg) {
  const Instance inst = make_instance(cfg);
  Rng rp = make_stream(cfg.seed, 1);
  const LabeledDataset planted = inst.planted(cfg.m, rp);
  Rng rn = make_stream(cfg.seed, 2);
  const LabeledDataset null = inst.null(cfg.m, rn);
  planted.validate();
  null.validate();

  CommandResult res;
  res.records.push_back({{"record", "config"}, {"config", cfg.to_json()}});
  nlohmann::json cert = certification_record(inst, planted);
  cert["null_consistency"] =
      verify_realization(null, build_halfspace_set(inst.ptfs, inst.lift_degree)).consistency;
  res.records.push_back(cert);
  res.records.push_back({{"record", "dataset"},
                         {"planted", cfg.out + ".planted.bin"},
                         {"null", cfg.out + ".null.bin"},
                         {"direction_digest", direction_digest(inst.w)}});

  const SaveOptions opts{cfg.expose_planted};
  save_dataset(cfg.out + ".planted.bin", planted, opts);
  save_dataset(cfg.out + ".null.bin", null, opts);
  res.files = {cfg.out + ".planted.bin", cfg.out + ".null.bin"};

  std::ostringstream s;
  s << "generate " << cfg.family << " n=" << cfg.n << " m=" << cfg.m << " seed=" << cfg.seed << "\n"
    << "  halfspaces " << cert["halfspaces"] << " in lifted dimension " << cert["lifted_dim"]
    << " (degree " << inst.lift_degree << ")\n"
    << "  ptf certificate " << (cert["ptf_certified"].get<bool>() ? "ok" : "FAILED") << "\n"
    << "  planted consistency " << detail::fmt(cert["consistency"].get<double>())
    << ", min margin " << detail::fmt(cert["min_margin"].get<double>()) << "\n"
    << "  null consistency " << detail::fmt(cert["null_consistency"].get<double>())
    << " (recorded only)\n";
  res.summary = s.str();
  detail::write_report(cfg.out, res);
  return res;
}

/// Runs the distinguisher. With cfg.data set, a single verdict on that file;
/// otherwise an advantage estimate over cfg.trials fresh planted/null pairs.
inline CommandResult cmd_experiment(const ExperimentConfig& cfg) {
  const Instance inst = make_instance(cfg);
  CommandResult res;
  res.records.push_back({{"record", "config"}, {"config", cfg.to_json()}});
  std::ostringstream s;

  if (!cfg.data.empty()) {
    const LabeledDataset ds = load_dataset(cfg.data);
    if (ds.dim() != static_cast<std::size_t>(cfg.n)) {
      throw InvalidParameter("dataset dimension " + std::to_string(ds.dim()) +
                             " does not match n = " + std::to_string(cfg.n));
    }
    const std::string digest = direction_digest(inst.w);
    const std::string stored = ds.meta().hidden_direction
                                   ? direction_digest(*ds.meta().hidden_direction)
                                   : ds.meta().direction_digest;
    if (cfg.learner == "oracle" && !stored.empty() && stored != digest) {
      throw ConsistencyError("direction digest in " + cfg.data +
                             " does not match the configured instance");
    }
    const DistinguisherVerdict v = distinguish(ds, inst.learner(), cfg.tau);
    res.records.push_back({{"record", "verdict"},
                           {"data", cfg.data},
                           {"verdict", to_string(v.verdict)},
                           {"error", v.error},
                           {"threshold", v.threshold},
                           {"m", v.m}});
    s << "experiment on " << cfg.data << " with learner " << cfg.learner << "\n"
      << "  holdout error " << detail::fmt(v.error) << ", threshold " << detail::fmt(v.threshold)
      << " -> " << to_string(v.verdict) << "\n";
  } else {
    Rng rp = make_stream(cfg.seed, 1);
    const LabeledDataset planted = inst.planted(cfg.m, rp);
    res.records.push_back(certification_record(inst, planted));

    const DatasetGenerator gen_planted = [&](Rng& r) { return inst.planted(cfg.m, r); };
    const DatasetGenerator gen_null = [&](Rng& r) { return inst.null(cfg.m, r); };
    const AdvantageReport adv = advantage_estimate(gen_planted, gen_null, inst.learner(), cfg.tau,
                                                   cfg.trials, detail::trial_seed(cfg.seed));
    nlohmann::json a = adv.to_json();
    a["record"] = "advantage";
    a["learner"] = cfg.learner;
    a["hoeffding_false_planted_bound"] = 2.0 * std::exp(-static_cast<double>(cfg.m) * cfg.tau * cfg.tau / 9.0);
    res.records.push_back(a);
    s << "experiment " << cfg.family << " n=" << cfg.n << " m=" << cfg.m << " tau=" << cfg.tau
      << " learner=" << cfg.learner << " trials=" << cfg.trials << "\n"
      << "  advantage " << detail::fmt(adv.advantage) << " +- " << detail::fmt(adv.half_width)
      << "\n"
      << "  planted trials judged null " << detail::fmt(adv.planted_says_null)
      << ", null trials judged planted " << detail::fmt(adv.false_planted_rate) << "\n"
      << "  mean holdout error planted " << detail::fmt(adv.mean_planted_error) << ", null "
      << detail::fmt(adv.mean_null_error) << "\n";
  }
  res.summary = s.str();
  detail::write_report(cfg.out, res);
  return res;
}

}  // namespace pancakes

#endif  // PANCAKES_EXPERIMENT_HPP
