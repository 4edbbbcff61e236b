// Copyright 2026 The trajsafe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// trajsafe: score, guide, gen, analyze and eval-batch.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "trajsafe/commands.hpp"
#include "trajsafe/errors.hpp"

namespace
{

void add_common(CLI::App & cmd, trajsafe::CommonOptions & opts)
{
  cmd.add_option("--config", opts.config_path, "key = value configuration file")->check(CLI::ExistingFile);
  cmd.add_option("--forecaster", opts.forecaster, "agent forecaster")
    ->check(CLI::IsMember({"cv", "ctrv"}))
    ->capture_default_str();
  cmd.add_option("--jobs,-j", opts.jobs, "worker threads (1 = serial reference path)")
    ->check(CLI::Range(1, 1024))
    ->capture_default_str();
  cmd.add_option("--seed", opts.seed, "random seed")->capture_default_str();
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Trajectory safety scoring and guidance"};
  app.require_subcommand(1);

  trajsafe::CommonOptions common;
  std::string corpus_dir;
  std::string out_dir;

  auto * score = app.add_subcommand("score", "score mode 1 of every scene in a corpus");
  score->add_option("corpus", corpus_dir, "directory of *.scene.json files")->required()->check(CLI::ExistingDirectory);
  score->add_option("--out,-o", out_dir, "output directory")->required();
  add_common(*score, common);

  auto * guide = app.add_subcommand("guide", "select the safest candidate for every scene");
  guide->add_option("corpus", corpus_dir, "directory of *.scene.json files")->required()->check(CLI::ExistingDirectory);
  guide->add_option("--out,-o", out_dir, "output directory")->required();
  add_common(*guide, common);

  trajsafe::TemplateCounts counts{40, 40, 40, 40, 40};
  trajsafe::GeneratorOptions gen_options;
  auto * gen = app.add_subcommand("gen", "write a deterministic synthetic corpus");
  gen->add_option("out_dir", out_dir, "output directory")->required();
  gen->add_option("--straight", counts[0], "straight scenes")->capture_default_str();
  gen->add_option("--left-turn", counts[1], "left-turn scenes")->capture_default_str();
  gen->add_option("--pedestrian-crossing", counts[2], "pedestrian-crossing scenes")->capture_default_str();
  gen->add_option("--oncoming", counts[3], "oncoming-vehicle scenes")->capture_default_str();
  gen->add_option("--narrow-corridor", counts[4], "narrow-corridor scenes")->capture_default_str();
  gen->add_option("--recoverable-fraction", gen_options.recoverable_fraction,
                  "share of conflict scenes a generated candidate can fix")
    ->check(CLI::Range(0.0, 1.0))
    ->capture_default_str();
  add_common(*gen, common);

  std::string records_path;
  auto * analyze = app.add_subcommand("analyze", "recompute the failure report from records.ndjson");
  analyze->add_option("records", records_path, "records.ndjson ('-' for stdin)")->required();
  analyze->add_option("--out,-o", out_dir, "write report files here");
  add_common(*analyze, common);

  std::string request_path;
  std::string response_path;
  auto * eval = app.add_subcommand("eval-batch", "evaluate one binary loss batch (DSLB)");
  eval->add_option("--in", request_path, "request file ('-' for stdin)")->required();
  eval->add_option("--out", response_path, "response file ('-' for stdout)")->required();
  add_common(*eval, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp & e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return trajsafe::kExitUsage;
  }

  try {
    if (*score) {
      return trajsafe::cmd_score(corpus_dir, out_dir, common, std::cout);
    }
    if (*guide) {
      return trajsafe::cmd_guide(corpus_dir, out_dir, common, std::cout);
    }
    if (*gen) {
      return trajsafe::cmd_gen(out_dir, common.seed, counts, gen_options, std::cout);
    }
    if (*analyze) {
      std::optional<std::filesystem::path> out;
      if (!out_dir.empty()) {
        out = out_dir;
      }
      return trajsafe::cmd_analyze(records_path, out, std::cout);
    }
    if (*eval) {
      return trajsafe::cmd_eval_batch(request_path, response_path, common);
    }
  } catch (const trajsafe::Error & e) {
    std::cerr << "error: " << e.what() << '\n';
    return trajsafe::kExitData;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << '\n';
    return trajsafe::kExitData;
  }
  return trajsafe::kExitUsage;
}
