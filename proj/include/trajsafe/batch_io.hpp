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

#ifndef TRAJSAFE__BATCH_IO_HPP_
#define TRAJSAFE__BATCH_IO_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "trajsafe/losses.hpp"

namespace trajsafe
{

// Request (all little-endian):
//   "DSLB" | version u32 | B u32 | T u32 | dt f64
//   per sample:
//     waypoints        T x 2 f64
//     agent count N    u32
//     agent positions  T x N x 2 f64 (step-major)
//     outer count      u32, then per outer:  vertex count u32, vertices x 2 f64
//     hole count       u32, then per hole:   vertex count u32, vertices x 2 f64
// Response:
//   l_dac, l_col, l_comf f64 | gradient of the weighted total, B x T x 2 f64
inline constexpr std::array<char, 4> kBatchMagic{'D', 'S', 'L', 'B'};
inline constexpr std::uint32_t kBatchVersion = 1;

std::string encode_batch(const LossBatch & batch);

/// Throws ProtocolError for a bad magic/version or truncated payload and
/// ValidationError for non-finite or ragged contents.
LossBatch decode_batch(std::string_view bytes);

struct BatchResponse
{
  std::array<double, 3> values{};
  std::vector<double> grad;
  friend bool operator==(const BatchResponse &, const BatchResponse &) = default;
};

std::string encode_response(const LossResult & result);
BatchResponse decode_response(std::string_view bytes, std::size_t batch_size, std::size_t horizon);

/// decode -> loss_total -> encode.
std::string evaluate_batch_bytes(std::string_view request, const LossConfig & cfg, Execution exec = {});

}  // namespace trajsafe

#endif  // TRAJSAFE__BATCH_IO_HPP_
