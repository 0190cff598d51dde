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


// Builds a pancake instance, checks that its lifted halfspaces realize the
// labels, and runs the distinguisher with a lifted and a linear learner.

#include <cstdio>

#include "pancakes/harness.hpp"
#include "pancakes/pancake.hpp"
#include "pancakes/realize.hpp"

int main() {
  using namespace pancakes;

  const int k = 2;
  const std::size_t n = 8;
  const long big_n = 45;  // C(n + 2, 2)
  const PancakeSpec spec = build_pancake_spec(k, big_n);
  std::printf("pancake k=%d N=%ld: delta %.4g, tau %.4g, min gap %.4g\n", k, big_n, spec.delta,
              spec.tau, spec.min_gap);

  Rng rng = make_stream(2026);
  const auto w = random_unit_vector(n, rng);
  const LabeledDataset ds = sample_labeled_sq(spec, w, 10000, rng);

  const PtfCollection ptfs = interval_ptfs_degree2(spec.s_a(), spec.s_b()).with_direction(w);
  const PtfCertificate cert = certify_ptfs(ptfs);
  const HalfspaceSet hs = build_halfspace_set(ptfs, 2);
  const RealizationReport rep = verify_realization(ds, hs);
  std::printf("%zu degree-2 PTF(s), certificate %s; %zu halfspace(s) in dimension %zu\n",
              ptfs.polys.size(), cert.ok ? "ok" : "FAILED", hs.size(), hs.lifted_dim());
  std::printf("consistency %.6f, min margin %.4g\n", rep.consistency, rep.min_margin);

  const double tau = 0.05;
  const auto lifted = distinguish(ds, lifted_ptf_learner(2, static_cast<int>(ptfs.polys.size())), tau);
  const auto linear = distinguish(ds, ltf_learner(), tau);
  std::printf("lifted learner: holdout error %.4f -> %s\n", lifted.error, to_string(lifted.verdict));
  std::printf("linear learner: holdout error %.4f -> %s\n", linear.error, to_string(linear.verdict));
  return 0;
}
