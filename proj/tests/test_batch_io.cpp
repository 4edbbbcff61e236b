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

#include <cstring>

#include "test_helpers.hpp"
#include "trajsafe/batch_io.hpp"
#include "trajsafe/errors.hpp"

namespace trajsafe
{
namespace
{

void expect_same(const LossBatch & a, const LossBatch & b)
{
  ASSERT_EQ(a.dt, b.dt);
  ASSERT_EQ(a.horizon, b.horizon);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.samples[i].waypoints, b.samples[i].waypoints);
    EXPECT_EQ(a.samples[i].agent_positions, b.samples[i].agent_positions);
    EXPECT_EQ(a.samples[i].drivable_area, b.samples[i].drivable_area);
  }
}

TEST(BatchIo, RoundTrip)
{
  const LossBatch batch = test::random_loss_batch(4, 5, 8);
  const std::string bytes = encode_batch(batch);
  expect_same(decode_batch(bytes), batch);
  EXPECT_EQ(encode_batch(decode_batch(bytes)), bytes);
}

TEST(BatchIo, HeaderLayout)
{
  const LossBatch batch = test::random_loss_batch(4, 3, 6, 0.25);
  const std::string bytes = encode_batch(batch);
  ASSERT_GE(bytes.size(), 24u);
  EXPECT_EQ(bytes.substr(0, 4), "DSLB");
  // Little-endian u32 version, B, T then f64 dt.
  const auto u32_at = [&](std::size_t off) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(bytes[off + static_cast<std::size_t>(i)]);
    return v;
  };
  EXPECT_EQ(u32_at(4), 1u);
  EXPECT_EQ(u32_at(8), 3u);
  EXPECT_EQ(u32_at(12), 6u);
  double dt = 0.0;
  std::memcpy(&dt, bytes.data() + 16, 8);
  EXPECT_EQ(dt, 0.25);
}

TEST(BatchIo, EmptyBatch)
{
  LossBatch batch;
  batch.horizon = 8;
  const LossBatch back = decode_batch(encode_batch(batch));
  EXPECT_EQ(back.size(), 0u);
  EXPECT_EQ(back.horizon, 8u);
}

TEST(BatchIo, BadMagicIsNamed)
{
  std::string bytes = encode_batch(test::random_loss_batch(4, 1, 4));
  bytes.replace(0, 4, "NOPE");
  try {
    decode_batch(bytes);
    FAIL();
  } catch (const ProtocolError & e) {
    EXPECT_NE(std::string(e.what()).find("NOPE"), std::string::npos);
  }
}

TEST(BatchIo, UnknownVersionIsRejected)
{
  std::string bytes = encode_batch(test::random_loss_batch(4, 1, 4));
  bytes[4] = 2;
  EXPECT_THROW(decode_batch(bytes), ProtocolError);
}

TEST(BatchIo, EveryTruncationIsRejected)
{
  const std::string bytes = encode_batch(test::random_loss_batch(4, 2, 4));
  for (std::size_t n = 0; n < bytes.size(); ++n) {
    ASSERT_THROW(decode_batch(std::string_view(bytes).substr(0, n)), ProtocolError) << n;
  }
}

TEST(BatchIo, TrailingBytesAreRejected)
{
  const std::string bytes = encode_batch(test::random_loss_batch(4, 2, 4)) + "x";
  EXPECT_THROW(decode_batch(bytes), ProtocolError);
}

TEST(BatchIo, ResponseRoundTripAndSizeCheck)
{
  LossResult r;
  r.l_dac = 0.5;
  r.l_col = 0.25;
  r.l_comf = 2.0;
  r.grad = {1, 2, 3, 4, 5, 6, 7, 8};
  const std::string bytes = encode_response(r);
  EXPECT_EQ(bytes.size(), (3u + 8u) * 8u);
  const BatchResponse back = decode_response(bytes, 1, 4);
  EXPECT_EQ(back.values, (std::array<double, 3>{0.5, 0.25, 2.0}));
  EXPECT_EQ(back.grad, r.grad);
  EXPECT_THROW(decode_response(bytes, 2, 4), ProtocolError);
}

TEST(BatchIo, EvaluateMatchesDirectCall)
{
  const LossBatch batch = test::random_loss_batch(12, 6, 8);
  const LossConfig cfg;
  const BatchResponse resp =
    decode_response(evaluate_batch_bytes(encode_batch(batch), cfg), batch.size(), batch.horizon);
  const LossResult direct = loss_total(batch, cfg);
  EXPECT_EQ(resp.values[0], direct.l_dac);
  EXPECT_EQ(resp.values[1], direct.l_col);
  EXPECT_EQ(resp.values[2], direct.l_comf);
  EXPECT_EQ(resp.grad, direct.grad);
  EXPECT_EQ(evaluate_batch_bytes(encode_batch(batch), cfg, Execution::parallel(4)),
            evaluate_batch_bytes(encode_batch(batch), cfg));
}

}  // namespace
}  // namespace trajsafe
