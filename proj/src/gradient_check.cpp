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

#include "trajsafe/gradient_check.hpp"

#include <algorithm>
#include <cmath>

#include "trajsafe/errors.hpp"

namespace trajsafe
{

namespace
{

constexpr double kKinkMargin = 1e-6;

double & coord(LossBatch & batch, Coordinate c)
{
  Vec2 & p = batch.samples[c.sample].waypoints[c.step];
  return c.axis == 0 ? p.x : p.y;
}

}  // namespace

bool GradientCheckReport::passed() const
{
  return std::all_of(entries.begin(), entries.end(), [](const GradientCheckEntry & e) {
    return e.flagged.empty();
  });
}

const GradientCheckEntry * GradientCheckReport::find(const std::string & loss) const
{
  for (const auto & e : entries) {
    if (e.loss == loss) {
      return &e;
    }
  }
  return nullptr;
}

double relative_error(double analytic, double numeric)
{
  const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
  return std::abs(analytic - numeric) / denom;
}

GradientCheckEntry compare_gradient(
  const std::string & name, const LossBatch & batch, std::span<const double> analytic,
  const LossValueFn & value, double h, double tolerance, const KinkFn & near_kink)
{
  if (!(h > 0.0)) {
    throw ValidationError("h", "finite-difference step must be positive");
  }
  if (analytic.size() != batch.grad_size()) {
    throw ValidationError("analytic", "gradient size differs from B x T x 2");
  }
  GradientCheckEntry entry;
  entry.loss = name;
  LossBatch work = batch;
  for (std::size_t b = 0; b < batch.size(); ++b) {
    for (std::size_t t = 0; t < batch.horizon; ++t) {
      for (std::size_t axis = 0; axis < 2; ++axis) {
        const Coordinate c{b, t, axis};
        if (near_kink && near_kink(batch, c)) {
          ++entry.excluded;
          continue;
        }
        double & x = coord(work, c);
        const double original = x;
        x = original + h;
        const double plus = value(work);
        x = original - h;
        const double minus = value(work);
        x = original;
        const double numeric = (plus - minus) / (2.0 * h);
        const double err = relative_error(analytic[batch.grad_index(b, t, axis)], numeric);
        ++entry.checked;
        if (entry.checked == 1 || err > entry.max_rel_error) {
          entry.max_rel_error = err;
          entry.worst = c;
        }
        if (err > tolerance) {
          entry.flagged.push_back(c);
        }
      }
    }
  }
  return entry;
}

GradientCheckReport check_gradients(
  const LossBatch & batch, const LossConfig & cfg, double h, double tolerance)
{
  GradientCheckReport report;
  report.step = h;
  report.tolerance = tolerance;

  LossConfig surrogate = cfg;
  surrogate.dac_mode = DacMode::SignedDistanceSurrogate;

  const double reach = kKinkMargin + 2.0 * h;

  {
    const auto term = loss_dac(batch, surrogate);
    const auto kink = [&](const LossBatch & bt, Coordinate c) {
      const auto & s = bt.samples[c.sample];
      return std::abs(signed_distance_to_drivable(s.waypoints[c.step], s.drivable_area)) <= reach;
    };
    report.entries.push_back(compare_gradient(
      "dac", batch, term.grad, [&](const LossBatch & bt) { return loss_dac(bt, surrogate).value; }, h,
      tolerance, kink));
  }
  {
    const auto term = loss_col(batch, cfg);
    const auto kink = [&](const LossBatch & bt, Coordinate c) {
      const auto & s = bt.samples[c.sample];
      for (const auto & track : s.agent_positions) {
        const double d = norm(s.waypoints[c.step] - track[c.step]);
        if (d <= reach || std::abs(d - cfg.d_col) <= reach) {
          return true;
        }
      }
      return false;
    };
    report.entries.push_back(compare_gradient(
      "col", batch, term.grad, [&](const LossBatch & bt) { return loss_col(bt, cfg).value; }, h,
      tolerance, kink));
  }
  if (batch.horizon >= 4) {
    const auto term = loss_comf(batch, cfg);
    const double dt = batch.dt;
    // A +-h move of one waypoint shifts |j| by at most 3h/dt^3.
    const double jerk_reach = kKinkMargin + 2.0 * 3.0 * h / (dt * dt * dt);
    const auto kink = [&, dt](const LossBatch & bt, Coordinate c) {
      const auto & p = bt.samples[c.sample].waypoints;
      const std::size_t first = c.step >= 3 ? c.step - 3 : 0;
      for (std::size_t k = first; k <= c.step && k + 3 < bt.horizon; ++k) {
        const Vec2 v0 = (p[k + 1] - p[k]) / dt;
        const Vec2 v1 = (p[k + 2] - p[k + 1]) / dt;
        const Vec2 v2 = (p[k + 3] - p[k + 2]) / dt;
        const double mag = norm((v2 - 2.0 * v1 + v0) / (dt * dt));
        if (mag <= jerk_reach || std::abs(mag - cfg.j_th) <= jerk_reach) {
          return true;
        }
      }
      return false;
    };
    report.entries.push_back(compare_gradient(
      "comf", batch, term.grad, [&](const LossBatch & bt) { return loss_comf(bt, cfg).value; }, h,
      tolerance, kink));
  }
  return report;
}

}  // namespace trajsafe
