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

#include <atomic>
#include <numeric>
#include <stdexcept>

#include "trajsafe/commands.hpp"
#include "trajsafe/execution.hpp"
#include "trajsafe/generator.hpp"

namespace trajsafe
{
namespace
{

TEST(ParallelFor, VisitsEveryIndexOnce)
{
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), Execution::parallel(8), [&](std::size_t i) { ++hits[i]; });
  for (const auto & h : hits) {
    ASSERT_EQ(h.load(), 1);
  }
}

TEST(ParallelFor, RethrowsTheLowestIndexError)
{
  const auto run = [](Execution exec) {
    try {
      parallel_for(100, exec, [](std::size_t i) {
        if (i == 17 || i == 60) throw std::runtime_error("at " + std::to_string(i));
      });
    } catch (const std::runtime_error & e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_EQ(run(Execution::serial()), "at 17");
  EXPECT_EQ(run(Execution::parallel(8)), "at 17");
}

TEST(PairwiseSum, FixedAssociation)
{
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / static_cast<double>(i + 1);
  EXPECT_NEAR(pairwise_sum(v), std::accumulate(v.begin(), v.end(), 0.0), 1e-12);
  EXPECT_EQ(pairwise_sum(v), pairwise_sum(v));
  EXPECT_EQ(pairwise_sum({}), 0.0);
}

Corpus corpus_of(std::uint64_t seed, const TemplateCounts & counts)
{
  Corpus c;
  for (auto & g : generate_corpus(seed, counts)) c.scenes.push_back(std::move(g.scene));
  return c;
}

TEST(Runs, SerialAndParallelRecordsAreIdentical)
{
  const Corpus corpus = corpus_of(404, {6, 6, 6, 6, 6});
  const EngineConfig cfg;
  const ConstantVelocityForecaster cv;
  const RunResult s1 = run_score(corpus, cfg, cv, Execution::serial());
  const RunResult s8 = run_score(corpus, cfg, cv, Execution::parallel(8));
  EXPECT_EQ(s1.records, s8.records);
  EXPECT_EQ(s1.analysis, s8.analysis);
  const RunResult g1 = run_guide(corpus, cfg, cv, Execution::serial());
  const RunResult g8 = run_guide(corpus, cfg, cv, Execution::parallel(8));
  EXPECT_EQ(g1.records, g8.records);
  EXPECT_EQ(g1.analysis, g8.analysis);
}

}  // namespace
}  // namespace trajsafe
