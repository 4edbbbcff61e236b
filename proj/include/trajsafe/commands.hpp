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

#ifndef TRAJSAFE__COMMANDS_HPP_
#define TRAJSAFE__COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "trajsafe/config.hpp"
#include "trajsafe/generator.hpp"
#include "trajsafe/report.hpp"
#include "trajsafe/scene_io.hpp"

namespace trajsafe
{

/// Exit status contract of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2 };

struct CommonOptions
{
  std::optional<std::filesystem::path> config_path;
  std::string forecaster{"cv"};
  int jobs{1};
  std::uint64_t seed{0};

  EngineConfig load_engine_config() const;
};

/// Output of a score or guide pass, kept in scene-id order.
struct RunResult
{
  std::vector<std::string> records;  ///< one JSON document per scene
  std::vector<SceneOutcome> outcomes;
  AnalysisReport analysis;
};

RunResult run_score(const Corpus & corpus, const EngineConfig & cfg, const Forecaster & forecaster, Execution exec);
RunResult run_guide(const Corpus & corpus, const EngineConfig & cfg, const Forecaster & forecaster, Execution exec);

/// Writes records.ndjson, report.json, histogram.tsv and report.txt.
void write_run(const std::filesystem::path & out_dir, const RunResult & run);

int cmd_score(
  const std::filesystem::path & corpus_dir, const std::filesystem::path & out_dir, const CommonOptions & opts,
  std::ostream & log);
int cmd_guide(
  const std::filesystem::path & corpus_dir, const std::filesystem::path & out_dir, const CommonOptions & opts,
  std::ostream & log);
/// Prints a summary line such as "5 scenes (straight 0, left_turn 0, ...)".
int cmd_gen(
  const std::filesystem::path & out_dir, std::uint64_t seed, const TemplateCounts & counts,
  const GeneratorOptions & options, std::ostream & log);
/// Recomputes the report from records; writes the report files to `out_dir`
/// when given and prints the table to `log`.
int cmd_analyze(
  const std::filesystem::path & records_path, const std::optional<std::filesystem::path> & out_dir,
  std::ostream & log);
/// Evaluates one binary loss batch request and writes the response.
int cmd_eval_batch(
  const std::filesystem::path & request_path, const std::filesystem::path & response_path,
  const CommonOptions & opts);

}  // namespace trajsafe

#endif  // TRAJSAFE__COMMANDS_HPP_
