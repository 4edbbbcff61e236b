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

#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "test_helpers.hpp"
#include "trajsafe/batch_io.hpp"
#include "trajsafe/commands.hpp"
#include "trajsafe/errors.hpp"

namespace trajsafe
{
namespace
{

namespace fs = std::filesystem;

std::vector<nlohmann::json> read_records(const fs::path & file)
{
  std::vector<nlohmann::json> out;
  std::istringstream in(read_file(file));
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  }
  return out;
}

TEST(Gen, ZeroCountsWriteNothing)
{
  const auto dir = test::temp_dir("gen-zero");
  std::ostringstream log;
  EXPECT_EQ(cmd_gen(dir / "corpus", 1, {0, 0, 0, 0, 0}, {}, log), kExitOk);
  EXPECT_EQ(log.str().rfind("0 scenes", 0), 0u);
  EXPECT_TRUE(fs::is_empty(dir / "corpus"));
}

TEST(Gen, SameSeedSameBytes)
{
  const auto dir = test::temp_dir("gen-repeat");
  std::ostringstream log;
  cmd_gen(dir / "a", 77, {2, 2, 2, 2, 2}, {}, log);
  cmd_gen(dir / "b", 77, {2, 2, 2, 2, 2}, {}, log);
  std::size_t files = 0;
  for (const auto & e : fs::directory_iterator(dir / "a")) {
    ++files;
    EXPECT_EQ(read_file(e.path()), read_file(dir / "b" / e.path().filename()));
  }
  EXPECT_EQ(files, 10u);
  EXPECT_NE(log.str().find("10 scenes (straight 2, left_turn 2"), std::string::npos);
}

TEST(Gen, RejectsBadArguments)
{
  const auto dir = test::temp_dir("gen-bad");
  std::ostringstream log;
  EXPECT_THROW(cmd_gen(dir, 1, {-1, 0, 0, 0, 0}, {}, log), ValidationError);
  GeneratorOptions wild;
  wild.recoverable_fraction = 1.5;
  EXPECT_THROW(cmd_gen(dir, 1, {1, 0, 0, 0, 0}, wild, log), ValidationError);
  write_file(dir / "file", "x");
  EXPECT_THROW(cmd_gen(dir / "file" / "sub", 1, {1, 0, 0, 0, 0}, {}, log), IoError);
}

TEST(Score, PedestrianScenesAllCollide)
{
  const auto dir = test::temp_dir("score-ped");
  std::ostringstream log;
  cmd_gen(dir / "corpus", 3, {0, 0, 5, 0, 0}, {}, log);
  EXPECT_EQ(cmd_score(dir / "corpus", dir / "out", {}, log), kExitOk);
  const auto records = read_records(dir / "out" / "records.ndjson");
  ASSERT_EQ(records.size(), 5u);
  for (const auto & r : records) {
    EXPECT_EQ(r["score"]["nc"], 0.0);
    EXPECT_EQ(r["score"]["pdms"], 0.0);
  }
  for (const char * f : {"report.json", "histogram.tsv", "report.txt"}) {
    EXPECT_TRUE(fs::exists(dir / "out" / f)) << f;
  }
  const auto report = nlohmann::json::parse(read_file(dir / "out" / "report.json"));
  EXPECT_EQ(report["report"]["pdms_zero_count"], 5);
  EXPECT_EQ(report["report"]["cause_counts"]["Collision"], 5);
}

TEST(Guide, RecoverableCorpusImproves)
{
  const auto dir = test::temp_dir("guide-small");
  std::ostringstream log;
  GeneratorOptions all;
  all.recoverable_fraction = 1.0;
  cmd_gen(dir / "corpus", 11, {10, 0, 4, 3, 3}, all, log);
  EXPECT_EQ(cmd_guide(dir / "corpus", dir / "out", {}, log), kExitOk);
  const auto report = nlohmann::json::parse(read_file(dir / "out" / "report.json"));
  EXPECT_EQ(report["mode"], "guide");
  EXPECT_GE(report["before"]["pdms_zero_count"].get<int>(), 10);
  EXPECT_GE(report["after"]["improved_from_zero_count"].get<int>(), 8);
  EXPECT_LE(report["after"]["pdms_zero_count"], report["before"]["pdms_zero_count"]);
  EXPECT_NE(read_file(dir / "out" / "histogram.tsv").find("count_before"), std::string::npos);
}

TEST(Analyze, ReproducesTheRunReport)
{
  const auto dir = test::temp_dir("analyze");
  std::ostringstream log;
  cmd_gen(dir / "corpus", 5, {2, 2, 2, 2, 2}, {}, log);
  for (const char * mode : {"score", "guide"}) {
    const fs::path out = dir / mode;
    if (std::string(mode) == "score") {
      cmd_score(dir / "corpus", out, {}, log);
    } else {
      cmd_guide(dir / "corpus", out, {}, log);
    }
    EXPECT_EQ(cmd_analyze(out / "records.ndjson", dir / (std::string(mode) + "-again"), log), kExitOk);
    for (const char * f : {"report.json", "histogram.tsv", "report.txt"}) {
      EXPECT_EQ(read_file(out / f), read_file(dir / (std::string(mode) + "-again") / f)) << mode << " " << f;
    }
  }
}

TEST(Analyze, EmptyAndTamperedRecords)
{
  const auto dir = test::temp_dir("analyze-bad");
  write_file(dir / "empty.ndjson", "");
  std::ostringstream log;
  EXPECT_EQ(cmd_analyze(dir / "empty.ndjson", std::nullopt, log), kExitOk);

  cmd_gen(dir / "corpus", 5, {0, 0, 2, 0, 0}, {}, log);
  cmd_score(dir / "corpus", dir / "out", {}, log);
  auto records = read_records(dir / "out" / "records.ndjson");
  records[1]["score"]["failure_causes"] = nlohmann::json::array();
  write_file(dir / "tampered.ndjson", records[0].dump() + "\n" + records[1].dump() + "\n");
  EXPECT_THROW(cmd_analyze(dir / "tampered.ndjson", std::nullopt, log), ValidationError);
  EXPECT_THROW(cmd_analyze(dir / "missing.ndjson", std::nullopt, log), IoError);
}

TEST(Score, AllSkippedExitsWithDataError)
{
  const auto dir = test::temp_dir("skipped");
  Scene s = test::open_road();
  s.id = "bare";
  fs::create_directories(dir / "corpus");
  write_scene_file(dir / "corpus", s);
  std::ostringstream log;
  EXPECT_EQ(cmd_score(dir / "corpus", dir / "out", {}, log), kExitData);
  const auto records = read_records(dir / "out" / "records.ndjson");
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0]["status"], "skipped");
  EXPECT_EQ(cmd_guide(dir / "corpus", dir / "out2", {}, log), kExitData);
}

TEST(Score, ConfigAndForecasterOptions)
{
  const auto dir = test::temp_dir("options");
  std::ostringstream log;
  cmd_gen(dir / "corpus", 9, {2, 0, 0, 0, 0}, {}, log);
  write_file(dir / "bad.toml", "[metric]\nnonsense = 1\n");
  CommonOptions opts;
  opts.config_path = dir / "bad.toml";
  EXPECT_THROW(cmd_score(dir / "corpus", dir / "out", opts, log), ParseError);
  opts.config_path.reset();
  opts.forecaster = "ctrv";
  EXPECT_EQ(cmd_score(dir / "corpus", dir / "out", opts, log), kExitOk);
  opts.forecaster = "oracle";
  EXPECT_THROW(cmd_score(dir / "corpus", dir / "out", opts, log), ValidationError);
}

TEST(EvalBatch, FileToFile)
{
  const auto dir = test::temp_dir("eval");
  const LossBatch batch = test::random_loss_batch(5, 3, 8);
  write_file(dir / "req.bin", encode_batch(batch));
  EXPECT_EQ(cmd_eval_batch(dir / "req.bin", dir / "resp.bin", {}), kExitOk);
  const BatchResponse r = decode_response(read_file(dir / "resp.bin"), 3, 8);
  EXPECT_EQ(r.values[0], loss_total(batch, LossConfig{}).l_dac);

  write_file(dir / "indicator.toml", "[loss]\ndac_mode = indicator\n");
  CommonOptions opts;
  opts.config_path = dir / "indicator.toml";
  cmd_eval_batch(dir / "req.bin", dir / "resp2.bin", opts);
  LossConfig ind;
  ind.dac_mode = DacMode::Indicator;
  EXPECT_EQ(decode_response(read_file(dir / "resp2.bin"), 3, 8).values[0], loss_total(batch, ind).l_dac);

  write_file(dir / "junk.bin", "garbage");
  EXPECT_THROW(cmd_eval_batch(dir / "junk.bin", dir / "resp3.bin", {}), ProtocolError);
}

}  // namespace
}  // namespace trajsafe
