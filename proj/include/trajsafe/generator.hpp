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

#ifndef TRAJSAFE__GENERATOR_HPP_
#define TRAJSAFE__GENERATOR_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "trajsafe/scene.hpp"

namespace trajsafe
{

enum class SceneTemplate { Straight, LeftTurn, PedestrianCrossing, Oncoming, NarrowCorridor };

inline constexpr std::array<SceneTemplate, 5> kAllTemplates{
  SceneTemplate::Straight, SceneTemplate::LeftTurn, SceneTemplate::PedestrianCrossing,
  SceneTemplate::Oncoming, SceneTemplate::NarrowCorridor};

std::string_view to_string(SceneTemplate tmpl);
std::optional<SceneTemplate> template_from_string(std::string_view text);

struct GeneratorOptions
{
  /// Probability that a conflict scene is built so that a +-0.5 m shift or a
  /// brake profile avoids the failure. The rest are built so that no
  /// generated candidate does.
  double recoverable_fraction{0.75};
  /// Probability that a LeftTurn scene's top mode goes straight through the
  /// junction (direction + drivable-area failure) with the turn as mode 2.
  double left_turn_straight_fraction{0.5};
};

/// What the generator built into a scene.
struct GeneratedScene
{
  Scene scene;
  /// Mode 1 was constructed to score PDMS = 0.
  bool injected_failure{false};
  /// The injected failure is avoided by a +-0.5 m shift, a 5% speed change or
  /// a brake profile of mode 1.
  bool recoverable_by_perturbation{false};
};

GeneratedScene generate_scene_detailed(
  std::uint64_t seed, SceneTemplate tmpl, const GeneratorOptions & options = {});

/// Deterministic scene for (seed, template). The ego starts at the origin
/// heading east; modes 1..3 are stored as candidates. For PedestrianCrossing,
/// Oncoming and NarrowCorridor the straight constant-speed rollout (which is
/// also mode 1) scores PDMS = 0. All numbers are canonical (9 significant
/// digits) so the scene survives a serialize/parse round trip exactly.
Scene generate_scene(std::uint64_t seed, SceneTemplate tmpl, const GeneratorOptions & options = {});

/// Scene count per template, in kAllTemplates order.
using TemplateCounts = std::array<int, 5>;

/// Ids are `<template>-<index>` with a 4-digit index; scenes sorted by id.
std::vector<GeneratedScene> generate_corpus(
  std::uint64_t seed, const TemplateCounts & counts, const GeneratorOptions & options = {});

}  // namespace trajsafe

#endif  // TRAJSAFE__GENERATOR_HPP_
