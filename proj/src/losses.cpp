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

#include "trajsafe/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trajsafe/errors.hpp"

namespace trajsafe
{

namespace
{

bool finite(const Vec2 & p) { return std::isfinite(p.x) && std::isfinite(p.y); }

void add_grad(std::vector<double> & grad, std::size_t index, const Vec2 & g)
{
  grad[index] += g.x;
  grad[index + 1] += g.y;
}

}  // namespace

void LossConfig::validate() const
{
  if (!(lambda_dac >= 0.0) || !(lambda_col >= 0.0) || !(lambda_comf >= 0.0)) {
    throw ValidationError("loss.lambda", "weights must be non-negative");
  }
  if (!(d_col > 0.0) || !std::isfinite(d_col)) {
    throw ValidationError("loss.d_col", "must be positive");
  }
  if (!(j_th > 0.0) || !std::isfinite(j_th)) {
    throw ValidationError("loss.j_th", "must be positive");
  }
}

void LossBatch::validate() const
{
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ValidationError("batch.dt", "must be positive");
  }
  for (std::size_t b = 0; b < samples.size(); ++b) {
    const auto & s = samples[b];
    const std::string where = "batch[" + std::to_string(b) + "]";
    if (s.waypoints.size() != horizon) {
      throw ValidationError(where + ".waypoints", "length differs from T");
    }
    if (!std::all_of(s.waypoints.begin(), s.waypoints.end(), finite)) {
      throw ValidationError(where + ".waypoints", "non-finite value");
    }
    for (const auto & track : s.agent_positions) {
      if (track.size() != horizon) {
        throw ValidationError(where + ".agents", "length differs from T");
      }
      if (!std::all_of(track.begin(), track.end(), finite)) {
        throw ValidationError(where + ".agents", "non-finite value");
      }
    }
  }
}

LossBatch make_loss_batch(
  std::span<const Trajectory> trajectories, std::span<const Scene> scenes,
  std::span<const std::vector<AgentForecast>> forecasts)
{
  if (trajectories.size() != scenes.size() || scenes.size() != forecasts.size()) {
    throw ValidationError("batch", "trajectories, scenes and forecasts differ in length");
  }
  LossBatch batch;
  if (!trajectories.empty()) {
    batch.dt = trajectories.front().dt;
    batch.horizon = trajectories.front().size();
  }
  for (std::size_t b = 0; b < trajectories.size(); ++b) {
    if (trajectories[b].size() != batch.horizon) {
      throw ValidationError("batch", "trajectories must share T");
    }
    LossSample sample;
    sample.waypoints = trajectories[b].points;
    sample.drivable_area = scenes[b].drivable_area;
    for (const auto & f : forecasts[b]) {
      if (f.positions.size() < batch.horizon) {
        throw ValidationError("batch", "forecast shorter than T for '" + f.agent_id + "'");
      }
      sample.agent_positions.emplace_back(
        f.positions.begin(), f.positions.begin() + static_cast<std::ptrdiff_t>(batch.horizon));
    }
    batch.samples.push_back(std::move(sample));
  }
  batch.validate();
  return batch;
}

LossTerm loss_dac(const LossBatch & batch, const LossConfig & cfg, Execution exec)
{
  const std::size_t B = batch.size();
  const std::size_t T = batch.horizon;
  LossTerm out{0.0, std::vector<double>(batch.grad_size(), 0.0)};
  if (B == 0 || T == 0) {
    return out;
  }
  const double scale = 1.0 / static_cast<double>(B * T);
  std::vector<double> partial(B, 0.0);
  parallel_for(B, exec, [&](std::size_t b) {
    const auto & s = batch.samples[b];
    double sum = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      const Vec2 & p = s.waypoints[t];
      if (cfg.dac_mode == DacMode::Indicator) {
        sum += point_in_polygon_set(p, s.drivable_area) ? 0.0 : 1.0;
        continue;
      }
      if (point_in_polygon_set(p, s.drivable_area)) {
        continue;
      }
      const BoundaryPoint nearest = closest_boundary_point(p, s.drivable_area);
      if (nearest.distance > 0.0) {
        sum += nearest.distance;
        add_grad(out.grad, batch.grad_index(b, t, 0), (scale / nearest.distance) * (p - nearest.point));
      }
    }
    partial[b] = sum;
  });
  out.value = pairwise_sum(partial) * scale;
  return out;
}

LossTerm loss_col(const LossBatch & batch, const LossConfig & cfg, Execution exec)
{
  const std::size_t B = batch.size();
  const std::size_t T = batch.horizon;
  LossTerm out{0.0, std::vector<double>(batch.grad_size(), 0.0)};
  if (B == 0 || T == 0) {
    return out;
  }
  std::vector<double> partial(B, 0.0);
  parallel_for(B, exec, [&](std::size_t b) {
    const auto & s = batch.samples[b];
    const std::size_t N = s.agent_positions.size();
    if (N == 0) {
      return;
    }
    const double per_scene = 1.0 / static_cast<double>(T * N);
    const double scale = per_scene / static_cast<double>(B);
    double sum = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      const Vec2 & p = s.waypoints[t];
      for (std::size_t n = 0; n < N; ++n) {
        const Vec2 diff = p - s.agent_positions[n][t];
        const double d = norm(diff);
        if (d < cfg.d_col) {
          sum += cfg.d_col - d;
          if (d > 0.0) {
            add_grad(out.grad, batch.grad_index(b, t, 0), (-scale / d) * diff);
          }
        }
      }
    }
    partial[b] = sum * per_scene;
  });
  out.value = pairwise_sum(partial) / static_cast<double>(B);
  return out;
}

LossTerm loss_comf(const LossBatch & batch, const LossConfig & cfg, Execution exec)
{
  const std::size_t B = batch.size();
  const std::size_t T = batch.horizon;
  if (T < 4) {
    throw ValidationError("batch.T", "comfort loss needs T >= 4, got " + std::to_string(T));
  }
  LossTerm out{0.0, std::vector<double>(batch.grad_size(), 0.0)};
  if (B == 0) {
    return out;
  }
  const double dt = batch.dt;
  const double dt3 = dt * dt * dt;
  const double scale = 1.0 / static_cast<double>(B * (T - 3));
  // d j_k / d p_{k+m} = kStencil[m] / dt^3
  constexpr double kStencil[4] = {-1.0, 3.0, -3.0, 1.0};
  std::vector<double> partial(B, 0.0);
  parallel_for(B, exec, [&](std::size_t b) {
    const auto & p = batch.samples[b].waypoints;
    std::vector<Vec2> v(T - 1);
    for (std::size_t t = 0; t + 1 < T; ++t) {
      v[t] = (p[t + 1] - p[t]) / dt;
    }
    double sum = 0.0;
    for (std::size_t k = 0; k + 3 < T; ++k) {
      const Vec2 jerk = (v[k + 2] - 2.0 * v[k + 1] + v[k]) / (dt * dt);
      const double mag = norm(jerk);
      if (mag > cfg.j_th) {
        sum += mag - cfg.j_th;
        const Vec2 u = jerk / mag;
        for (std::size_t m = 0; m < 4; ++m) {
          add_grad(out.grad, batch.grad_index(b, k + m, 0), (scale * kStencil[m] / dt3) * u);
        }
      }
    }
    partial[b] = sum;
  });
  out.value = pairwise_sum(partial) * scale;
  return out;
}

LossResult loss_total(const LossBatch & batch, const LossConfig & cfg, Execution exec)
{
  const LossTerm dac = loss_dac(batch, cfg, exec);
  const LossTerm col = loss_col(batch, cfg, exec);
  const LossTerm comf = loss_comf(batch, cfg, exec);
  LossResult r;
  r.l_dac = dac.value;
  r.l_col = col.value;
  r.l_comf = comf.value;
  r.l_total_excl_base = cfg.lambda_dac * dac.value + cfg.lambda_col * col.value + cfg.lambda_comf * comf.value;
  r.grad.resize(batch.grad_size());
  for (std::size_t i = 0; i < r.grad.size(); ++i) {
    r.grad[i] = cfg.lambda_dac * dac.grad[i] + cfg.lambda_col * col.grad[i] + cfg.lambda_comf * comf.grad[i];
  }
  return r;
}

}  // namespace trajsafe
