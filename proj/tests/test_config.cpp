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

#include "test_helpers.hpp"
#include "trajsafe/config.hpp"
#include "trajsafe/errors.hpp"
#include "trajsafe/scene_io.hpp"

namespace trajsafe
{
namespace
{

TEST(ParseConfig, EmptyGivesDefaults)
{
  const EngineConfig c = parse_config("");
  EXPECT_EQ(c.metric.w_ttc, MetricConfig{}.w_ttc);
  EXPECT_EQ(c.loss.d_col, 2.0);
  EXPECT_EQ(c.perturb.speed_scales, (std::vector<double>{0.95, 1.0, 1.05}));
  EXPECT_TRUE(c.yaw_rates.empty());
}

TEST(ParseConfig, SectionsListsAndComments)
{
  const EngineConfig c = parse_config(R"(# engine settings
[metric]
w_ep = 4            # trailing comment
jerk_threshold = 12.5

[loss]
dac_mode = "indicator"
lambda_col = 0.5

[perturb]
lateral_offsets_m = [-0.25, 0.0, 0.25]
speed_scales = 0.9, 1.0
use_modes_up_to = 2

[forecast]
yaw_rate.car-7 = 0.2
)");
  EXPECT_EQ(c.metric.w_ep, 4.0);
  EXPECT_EQ(c.metric.jerk_threshold, 12.5);
  EXPECT_EQ(c.loss.dac_mode, DacMode::Indicator);
  EXPECT_EQ(c.loss.lambda_col, 0.5);
  EXPECT_EQ(c.perturb.lateral_offsets_m, (std::vector<double>{-0.25, 0.0, 0.25}));
  EXPECT_EQ(c.perturb.speed_scales, (std::vector<double>{0.9, 1.0}));
  EXPECT_EQ(c.perturb.use_modes_up_to, 2);
  EXPECT_EQ(c.yaw_rates.at("car-7"), 0.2);
}

TEST(ParseConfig, DottedKeysWithoutSections)
{
  const EngineConfig c = parse_config("loss.dac_mode = surrogate\nmetric.ttc_substeps = 20\n");
  EXPECT_EQ(c.loss.dac_mode, DacMode::SignedDistanceSurrogate);
  EXPECT_EQ(c.metric.ttc_substeps, 20);
}

TEST(ParseConfig, ErrorsCarryTheLineNumber)
{
  const auto line_of = [](const std::string & text) -> std::size_t {
    try {
      parse_config(text);
    } catch (const ParseError & e) {
      EXPECT_EQ(e.unit(), ParseError::Unit::Line);
      return e.offset();
    }
    return 0;
  };
  EXPECT_EQ(line_of("[metric]\nw_ep = 1\nmystery = 3\n"), 3u);
  EXPECT_EQ(line_of("\n\n[loss]\nd_col = far\n"), 4u);
  EXPECT_EQ(line_of("[metric\n"), 1u);
  EXPECT_EQ(line_of("[loss]\njust words\n"), 2u);
  EXPECT_EQ(line_of("[perturb]\nspeed_scales = [1.0, 0.9\n"), 2u);
  EXPECT_EQ(line_of("[loss]\ndac_mode = exact\n"), 2u);
  EXPECT_EQ(line_of("[perturb]\nuse_modes_up_to = 1.5\n"), 2u);
}

TEST(ParseConfig, SemanticChecksRun)
{
  EXPECT_THROW(parse_config("[perturb]\nspeed_scales = [0.9, 1.1]\n"), ValidationError);
  EXPECT_THROW(parse_config("[loss]\nlambda_dac = -1\n"), ValidationError);
  EXPECT_THROW(parse_config("[perturb]\nbrake_decels_mps2 = [3, 3]\n"), ValidationError);
}

TEST(LoadConfig, ReadsFileAndReportsMissing)
{
  const auto dir = test::temp_dir("config");
  write_file(dir / "engine.toml", "[metric]\nw_comf = 3\n");
  EXPECT_EQ(load_config(dir / "engine.toml").metric.w_comf, 3.0);
  EXPECT_THROW(load_config(dir / "absent.toml"), IoError);
}

}  // namespace
}  // namespace trajsafe
