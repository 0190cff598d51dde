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

// Command-line front end. Exit codes: 0 success, 2 invalid configuration or
// failed check, 3 I/O failure.

#ifndef PANCAKES_TOOLS_CLI_HPP
#define PANCAKES_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pancakes/errors.hpp"
#include "pancakes/experiment.hpp"

namespace pancakes::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitIo = 3;

inline void add_config_flags(CLI::App& cmd, ExperimentConfig& cfg) {
  cmd.add_option("--family", cfg.family, "pancake-sq or hclwe")->capture_default_str();
  cmd.add_option("--k", cfg.k, "pancake: number of +1 components")->capture_default_str();
  cmd.add_option("--n", cfg.n, "ambient dimension")->capture_default_str();
  cmd.add_option("--N", cfg.lifted_n, "pancake: lifted dimension N (default C(n+2, 2))");
  cmd.add_option("--trunc-c", cfg.trunc_c, "pancake: truncation constant c")->capture_default_str();
  cmd.add_option("--gamma", cfg.gamma, "hclwe: gamma (default 2 sqrt(n))");
  cmd.add_option("--beta", cfg.beta, "hclwe: beta (default 1/n)");
  cmd.add_option("--d", cfg.d, "hclwe: intervals per polynomial, must divide 2n+1")->capture_default_str();
  cmd.add_option("--m", cfg.m, "samples per dataset")->capture_default_str();
  cmd.add_option("--tau", cfg.tau, "distinguisher threshold, >= 5/sqrt(m)")->capture_default_str();
  cmd.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  cmd.add_option("--learner", cfg.learner, "oracle, constant, ltf or lifted-ptf")->capture_default_str();
  cmd.add_option("--out", cfg.out, "output path prefix")->capture_default_str();
  cmd.add_option("--trials", cfg.trials, "distinguisher trials per class")->capture_default_str();
  cmd.add_flag("--expose-planted", cfg.expose_planted, "write the hidden direction into dataset files");
}

/// args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hard instances for learning intersections of halfspaces", "pancakes"};
  app.require_subcommand(1);
  ExperimentConfig gen_cfg;
  ExperimentConfig exp_cfg;
  CLI::App* gen = app.add_subcommand("generate", "write planted and null datasets with a certification report");
  add_config_flags(*gen, gen_cfg);
  CLI::App* exp = app.add_subcommand("experiment", "run the distinguisher and report its advantage");
  add_config_flags(*exp, exp_cfg);
  exp->add_option("--data", exp_cfg.data, "judge a saved dataset instead of fresh samples");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    const CommandResult res = gen->parsed() ? cmd_generate(gen_cfg) : cmd_experiment(exp_cfg);
    out << res.summary;
    for (const auto& f : res.files) out << "  wrote " << f << "\n";
    return kExitOk;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "invalid: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace pancakes::cli

#endif  // PANCAKES_TOOLS_CLI_HPP
