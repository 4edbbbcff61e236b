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

#include "trajsafe/commands.hpp"

#include <iostream>
#include <iterator>
#include <system_error>

#include "trajsafe/batch_io.hpp"
#include "trajsafe/errors.hpp"

namespace trajsafe
{

namespace
{

void ensure_directory(const std::filesystem::path & dir)
{
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create directory " + dir.string() + (ec ? ": " + ec.message() : ""));
  }
}

std::string read_stream_or_file(const std::filesystem::path & path)
{
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  return read_file(path);
}

std::unique_ptr<Forecaster> forecaster_for(const CommonOptions & opts, const EngineConfig & cfg)
{
  return make_forecaster(opts.forecaster, cfg.yaw_rates);
}

// Nested parallelism stays off: scenes are spread across threads and each
// scene scores its candidates serially.
template <typename Fn>
RunResult run_scenes(const Corpus & corpus, RecordKind kind, Execution exec, Fn && per_scene)
{
  RunResult run;
  run.records.resize(corpus.size());
  run.outcomes.resize(corpus.size());
  parallel_for(corpus.size(), exec, [&](std::size_t i) {
    const Scene & scene = corpus.scenes[i];
    SceneOutcome & o = run.outcomes[i];
    o.id = scene.id;
    if (!scene_mode(scene, 1)) {
      o.skipped = true;
      o.error = "scene has no mode-1 candidate";
      run.records[i] = skipped_record(scene.id, o.error);
      return;
    }
    run.records[i] = per_scene(scene, o);
  });
  run.analysis = analyze_outcomes(kind, run.outcomes);
  return run;
}

int finish(const RunResult & run, const std::filesystem::path & out_dir, std::ostream & log)
{
  write_run(out_dir, run);
  log << report_table(run.analysis);
  const FailureReport & r = run.analysis.report;
  if (r.skipped > 0 && r.total_scenes == 0) {
    log << "error: every scene was skipped\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace

EngineConfig CommonOptions::load_engine_config() const
{
  if (!config_path) {
    return EngineConfig{};
  }
  return load_config(*config_path);
}

RunResult run_score(const Corpus & corpus, const EngineConfig & cfg, const Forecaster & forecaster, Execution exec)
{
  cfg.validate();
  return run_scenes(corpus, RecordKind::Score, exec, [&](const Scene & scene, SceneOutcome & o) {
    const auto forecasts = forecaster.forecast(scene);
    o.score = score(*scene_mode(scene, 1), scene, forecasts, cfg.metric);
    return score_record(scene.id, o.score);
  });
}

RunResult run_guide(const Corpus & corpus, const EngineConfig & cfg, const Forecaster & forecaster, Execution exec)
{
  cfg.validate();
  return run_scenes(corpus, RecordKind::Guide, exec, [&](const Scene & scene, SceneOutcome & o) {
    const auto modes = scene_modes(scene);
    const GuidanceResult result = guide(modes, scene, forecaster, cfg.metric, cfg.perturb);
    o.before = result.raw_mode1_score;
    o.score = result.selected().score;
    return guide_record(scene.id, result);
  });
}

void write_run(const std::filesystem::path & out_dir, const RunResult & run)
{
  ensure_directory(out_dir);
  std::string ndjson;
  for (const auto & rec : run.records) {
    ndjson += rec;
    ndjson += '\n';
  }
  write_file(out_dir / "records.ndjson", ndjson);
  write_file(out_dir / "report.json", report_json(run.analysis));
  write_file(out_dir / "histogram.tsv", histogram_tsv(run.analysis));
  write_file(out_dir / "report.txt", report_table(run.analysis));
}

int cmd_score(
  const std::filesystem::path & corpus_dir, const std::filesystem::path & out_dir, const CommonOptions & opts,
  std::ostream & log)
{
  const EngineConfig cfg = opts.load_engine_config();
  const auto forecaster = forecaster_for(opts, cfg);
  const Corpus corpus = load_corpus(corpus_dir);
  return finish(run_score(corpus, cfg, *forecaster, Execution{opts.jobs}), out_dir, log);
}

int cmd_guide(
  const std::filesystem::path & corpus_dir, const std::filesystem::path & out_dir, const CommonOptions & opts,
  std::ostream & log)
{
  const EngineConfig cfg = opts.load_engine_config();
  const auto forecaster = forecaster_for(opts, cfg);
  const Corpus corpus = load_corpus(corpus_dir);
  return finish(run_guide(corpus, cfg, *forecaster, Execution{opts.jobs}), out_dir, log);
}

int cmd_gen(
  const std::filesystem::path & out_dir, std::uint64_t seed, const TemplateCounts & counts,
  const GeneratorOptions & options, std::ostream & log)
{
  for (int c : counts) {
    if (c < 0) {
      throw ValidationError("counts", "template counts must be non-negative");
    }
  }
  if (!(options.recoverable_fraction >= 0.0 && options.recoverable_fraction <= 1.0)) {
    throw ValidationError("recoverable_fraction", "must lie in [0, 1]");
  }
  ensure_directory(out_dir);
  const auto corpus = generate_corpus(seed, counts, options);
  for (const auto & g : corpus) {
    write_scene_file(out_dir, g.scene);
  }
  log << corpus.size() << " scenes (";
  for (std::size_t k = 0; k < kAllTemplates.size(); ++k) {
    log << (k ? ", " : "") << to_string(kAllTemplates[k]) << ' ' << counts[k];
  }
  log << ")\n";
  return kExitOk;
}

int cmd_analyze(
  const std::filesystem::path & records_path, const std::optional<std::filesystem::path> & out_dir,
  std::ostream & log)
{
  RecordKind kind = RecordKind::Score;
  const auto outcomes = parse_records(read_stream_or_file(records_path), kind);
  const AnalysisReport analysis = analyze_outcomes(kind, outcomes);
  if (out_dir) {
    ensure_directory(*out_dir);
    write_file(*out_dir / "report.json", report_json(analysis));
    write_file(*out_dir / "histogram.tsv", histogram_tsv(analysis));
    write_file(*out_dir / "report.txt", report_table(analysis));
  }
  log << report_table(analysis);
  return kExitOk;
}

int cmd_eval_batch(
  const std::filesystem::path & request_path, const std::filesystem::path & response_path,
  const CommonOptions & opts)
{
  const EngineConfig cfg = opts.load_engine_config();
  const std::string response = evaluate_batch_bytes(read_stream_or_file(request_path), cfg.loss, Execution{opts.jobs});
  if (response_path == "-") {
    std::cout.write(response.data(), static_cast<std::streamsize>(response.size()));
    std::cout.flush();
  } else {
    write_file(response_path, response);
  }
  return kExitOk;
}

}  // namespace trajsafe
