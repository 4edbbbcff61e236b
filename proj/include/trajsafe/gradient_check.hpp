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

#ifndef TRAJSAFE__GRADIENT_CHECK_HPP_
#define TRAJSAFE__GRADIENT_CHECK_HPP_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "trajsafe/losses.hpp"

namespace trajsafe
{

struct Coordinate
{
  std::size_t sample{0};
  std::size_t step{0};
  std::size_t axis{0};
  friend bool operator==(const Coordinate &, const Coordinate &) = default;
};

struct GradientCheckEntry
{
  std::string loss;
  double max_rel_error{0.0};
  Coordinate worst;
  std::size_t checked{0};
  std::size_t excluded{0};
  std::vector<Coordinate> flagged;  ///< coordinates whose error exceeds the tolerance
};

struct GradientCheckReport
{
  double step{0.0};
  double tolerance{0.0};
  std::vector<GradientCheckEntry> entries;

  bool passed() const;
  const GradientCheckEntry * find(const std::string & loss) const;
};

/// |a - n| / max(|a|, |n|, 1e-6). The floor keeps round-off in exactly-zero
/// gradients from reading as a relative error of order one.
double relative_error(double analytic, double numeric);

using LossValueFn = std::function<double(const LossBatch &)>;
using KinkFn = std::function<bool(const LossBatch &, Coordinate)>;

/// Compares `analytic` (B x T x 2) against central differences of `value`
/// with step `h`. Coordinates for which `near_kink` returns true are skipped.
GradientCheckEntry compare_gradient(
  const std::string & name, const LossBatch & batch, std::span<const double> analytic,
  const LossValueFn & value, double h, double tolerance, const KinkFn & near_kink = {});

/// Checks the surrogate drivable-area, collision and comfort gradients.
/// Coordinates within reach of a hinge kink (or of a non-smooth point such as
/// d = 0, |j| = 0, sd = 0) are excluded: reach is 1e-6 plus the distance a
/// +-h perturbation can move the kinked quantity.
GradientCheckReport check_gradients(
  const LossBatch & batch, const LossConfig & cfg, double h, double tolerance = 1e-4);

}  // namespace trajsafe

#endif  // TRAJSAFE__GRADIENT_CHECK_HPP_
