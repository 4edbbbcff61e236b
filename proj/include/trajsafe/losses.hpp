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

#ifndef TRAJSAFE__LOSSES_HPP_
#define TRAJSAFE__LOSSES_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "trajsafe/execution.hpp"
#include "trajsafe/forecast.hpp"
#include "trajsafe/geometry.hpp"
#include "trajsafe/scene.hpp"

namespace trajsafe
{

enum class DacMode {
  Indicator,               ///< exact mean of 1 - M(p); zero gradient
  SignedDistanceSurrogate  ///< mean of max(0, sd(p)); same zero set, usable gradient
};

struct LossConfig
{
  double lambda_dac{1.0};
  double lambda_col{1.0};
  double lambda_comf{1.0};
  double d_col{2.0};   // m
  double j_th{10.0};   // m/s^3
  DacMode dac_mode{DacMode::SignedDistanceSurrogate};

  void validate() const;
};

/// One scene of a training batch.
struct LossSample
{
  std::vector<Vec2> waypoints;                    ///< T predicted ego positions
  std::vector<std::vector<Vec2>> agent_positions; ///< [agent][t], T entries each
  PolygonSet drivable_area;
};

/// B samples sharing horizon T and step dt.
struct LossBatch
{
  double dt{kDefaultDt};
  std::size_t horizon{0};
  std::vector<LossSample> samples;

  std::size_t size() const noexcept { return samples.size(); }
  /// Index of d/d(waypoint[t].axis) of sample b in a flat gradient.
  std::size_t grad_index(std::size_t b, std::size_t t, std::size_t axis) const noexcept
  {
    return (b * horizon + t) * 2 + axis;
  }
  std::size_t grad_size() const noexcept { return samples.size() * horizon * 2; }

  /// Throws ValidationError on ragged shapes or non-finite values.
  void validate() const;
};

/// Loss value plus its gradient w.r.t. every waypoint coordinate, laid out
/// as B x T x 2 (see LossBatch::grad_index).
struct LossTerm
{
  double value{0.0};
  std::vector<double> grad;
};

struct LossResult
{
  double l_dac{0.0};
  double l_col{0.0};
  double l_comf{0.0};
  double l_total_excl_base{0.0};
  std::vector<double> grad;
};

/// Builds a batch from scored trajectories and the agent forecasts of each scene.
LossBatch make_loss_batch(
  std::span<const Trajectory> trajectories, std::span<const Scene> scenes,
  std::span<const std::vector<AgentForecast>> forecasts);

/// Drivable-area loss averaged over B*T waypoints.
LossTerm loss_dac(const LossBatch & batch, const LossConfig & cfg, Execution exec = {});

/// Hinge on ego-agent distance: mean over B of (1/(T*N_b)) sum max(0, d_col - d).
/// Scenes without agents contribute 0. The subgradient is 0 at d = 0 and at
/// the hinge kink d = d_col.
LossTerm loss_col(const LossBatch & batch, const LossConfig & cfg, Execution exec = {});

/// Hinge on the third-difference jerk magnitude, averaged over B*(T-3) terms.
/// Throws ValidationError when T < 4.
LossTerm loss_comf(const LossBatch & batch, const LossConfig & cfg, Execution exec = {});

/// lambda-weighted sum of the three terms and their gradients.
LossResult loss_total(const LossBatch & batch, const LossConfig & cfg, Execution exec = {});

}  // namespace trajsafe

#endif  // TRAJSAFE__LOSSES_HPP_
