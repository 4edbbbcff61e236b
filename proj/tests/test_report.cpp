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

#include <json.hpp>

#include "trajsafe/errors.hpp"
#include "trajsafe/report.hpp"

namespace trajsafe
{
namespace
{

SafetyScore make(double nc, double dac, double ddc, double ttc, double comf, double ep)
{
  SafetyScore s{nc, dac, ddc, ttc, comf, ep, 0.0, {}};
  aggregate(s, MetricConfig{});
  return s;
}

SceneOutcome ok(std::string id, SafetyScore s) { return {std::move(id), false, "", s, std::nullopt}; }

TEST(Histogram, BinEdges)
{
  EXPECT_EQ(histogram_bin(0.0), 0u);
  EXPECT_EQ(histogram_bin(0.049), 0u);
  EXPECT_EQ(histogram_bin(0.05), 1u);
  EXPECT_EQ(histogram_bin(0.999), 19u);
  EXPECT_EQ(histogram_bin(1.0), 19u);
  EXPECT_EQ(percent_1dp(0.23456), 23.5);
}

TEST(BuildReport, CountsCausesAndMeans)
{
  const std::vector<SceneOutcome> outcomes{
    ok("a", make(0, 1, 1, 1, 1, 1)),
    ok("b", make(0, 0, 1, 1, 1, 0.5)),
    ok("c", make(1, 1, 1, 1, 1, 1)),
    ok("d", make(1, 1, 0.5, 0, 1, 0.5)),
    {"e", true, "no candidates", {}, std::nullopt},
  };
  const FailureReport r = build_report(outcomes);
  EXPECT_EQ(r.total_scenes, 4u);
  EXPECT_EQ(r.skipped, 1u);
  EXPECT_EQ(r.pdms_zero_count, 2u);
  EXPECT_EQ(r.cause_counts, (std::array<std::size_t, 3>{2, 1, 0}));
  EXPECT_EQ(r.zero_counts, (std::array<std::size_t, 5>{2, 1, 0, 1, 0}));
  EXPECT_EQ(r.mean_percent[0], 50.0);
  EXPECT_EQ(r.mean_percent[5], 75.0);
  // d: 0.5 * (0 + 2 + 2.5) / 12 = 0.1875
  EXPECT_EQ(r.mean_pdms_percent, percent_1dp((1.0 + 0.1875) / 4.0));
  EXPECT_EQ(r.histogram[0], 2u);
  EXPECT_EQ(r.histogram[3], 1u);
  EXPECT_EQ(r.histogram[19], 1u);
  EXPECT_FALSE(r.improved_from_zero_count.has_value());
}

TEST(Records, ScoreRoundTrip)
{
  const SafetyScore s = make(1, 1, 0.5, 0, 1, 0.25);
  const std::string text = score_record("x", s) + "\n" + skipped_record("y", "missing mode 1") + "\n\n";
  RecordKind kind = RecordKind::Guide;
  const auto back = parse_records(text, kind);
  EXPECT_EQ(kind, RecordKind::Score);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].score, s);
  EXPECT_TRUE(back[1].skipped);
  EXPECT_EQ(back[1].error, "missing mode 1");

  const auto doc = nlohmann::json::parse(score_record("x", s));
  EXPECT_EQ(doc["status"], "ok");
  EXPECT_EQ(doc["score"]["failure_causes"].size(), 0u);
}

TEST(Records, EmptyInputIsAnEmptyScoreReport)
{
  RecordKind kind = RecordKind::Guide;
  EXPECT_TRUE(parse_records("", kind).empty());
  EXPECT_EQ(kind, RecordKind::Score);
  const AnalysisReport a = analyze_outcomes(kind, {});
  EXPECT_EQ(a.report.total_scenes, 0u);
  EXPECT_EQ(a.report.mean_pdms_percent, 0.0);
}

TEST(Records, MalformedLineNumbers)
{
  const std::string good = score_record("x", make(1, 1, 1, 1, 1, 1));
  RecordKind kind;
  try {
    parse_records(good + "\n" + good + "\n{oops\n", kind);
    FAIL();
  } catch (const ParseError & e) {
    EXPECT_EQ(e.offset(), 3u);
    EXPECT_EQ(e.unit(), ParseError::Unit::Line);
  }
  try {
    parse_records(good + "\n{\"id\": \"z\", \"status\": \"ok\"}\n", kind);
    FAIL();
  } catch (const ParseError & e) {
    EXPECT_EQ(e.offset(), 2u);
  }
}

TEST(Records, TamperedScoresAreRejected)
{
  auto doc = nlohmann::json::parse(score_record("x", make(0, 1, 1, 1, 1, 1)));
  RecordKind kind;
  auto bad = doc;
  bad["score"]["failure_causes"] = nlohmann::json::array();
  EXPECT_THROW(parse_records(bad.dump(), kind), ValidationError);
  bad = doc;
  bad["score"]["pdms"] = 0.5;
  EXPECT_THROW(parse_records(bad.dump(), kind), ValidationError);
  bad = doc;
  bad["score"]["ep"] = 1.5;
  EXPECT_THROW(parse_records(bad.dump(), kind), ValidationError);
}

TEST(Records, GuideRecordsNeedAfterAtLeastBefore)
{
  GuidanceResult g;
  Candidate top;
  top.score = make(0, 1, 1, 1, 1, 1);
  Candidate fix;
  fix.score = make(1, 1, 1, 1, 1, 0.5);
  fix.provenance.lateral_offset = -0.5;
  fix.perturbation_magnitude = 0.5;
  g.all_candidates = {top, fix};
  g.raw_mode1_score = top.score;
  g.selected_index = 1;
  g.improved = true;
  const std::string rec = guide_record("n", g);
  RecordKind kind;
  const auto back = parse_records(rec, kind);
  EXPECT_EQ(kind, RecordKind::Guide);
  EXPECT_EQ(back[0].before->pdms, 0.0);
  EXPECT_EQ(back[0].score, fix.score);

  const AnalysisReport a = analyze_outcomes(kind, back);
  EXPECT_EQ(a.before->pdms_zero_count, 1u);
  EXPECT_EQ(a.report.pdms_zero_count, 0u);
  EXPECT_EQ(a.report.improved_from_zero_count, 1u);

  auto doc = nlohmann::json::parse(rec);
  std::swap(doc["before"], doc["after"]);
  EXPECT_THROW(parse_records(doc.dump(), kind), ValidationError);
  EXPECT_THROW(parse_records(rec + "\n" + score_record("s", top.score), kind), ValidationError);
}

TEST(Outputs, JsonTsvAndTable)
{
  const std::vector<SceneOutcome> outcomes{ok("a", make(1, 1, 1, 1, 1, 1)), ok("b", make(0, 1, 1, 1, 1, 1))};
  const AnalysisReport a = analyze_outcomes(RecordKind::Score, outcomes);
  const auto doc = nlohmann::json::parse(report_json(a));
  EXPECT_EQ(doc["mode"], "score");
  EXPECT_EQ(doc["report"]["pdms_zero_count"], 1);
  EXPECT_EQ(doc["report"]["histogram"].size(), kHistogramBins);

  const std::string tsv = histogram_tsv(a);
  EXPECT_EQ(tsv.rfind("bin_low\tbin_high\tcount\n", 0), 0u);
  EXPECT_NE(tsv.find("0.00\t0.05\t1\n"), std::string::npos);
  EXPECT_NE(tsv.find("0.95\t1.00\t1\n"), std::string::npos);
  EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 21);

  const std::string table = report_table(a);
  EXPECT_NE(table.find("pdms = 0"), std::string::npos);
  EXPECT_NE(table.find("mean pdms %"), std::string::npos);
}

}  // namespace
}  // namespace trajsafe
