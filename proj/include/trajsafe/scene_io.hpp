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

#ifndef TRAJSAFE__SCENE_IO_HPP_
#define TRAJSAFE__SCENE_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "trajsafe/scene.hpp"

namespace trajsafe
{

inline constexpr std::string_view kSceneFileExtension = ".scene.json";

/// Parses one scene document (UTF-8 JSON). Throws ParseError carrying the byte
/// offset for malformed syntax and ValidationError for invariant violations.
Scene parse_scene(std::string_view bytes);

/// Canonical form: fixed key order, one top-level key per line, every float
/// printed with 9 significant digits.
std::string serialize_scene(const Scene & scene);

/// Rounds `value` to the double nearest its 9-significant-digit decimal form.
/// Values passed through this survive serialize/parse bit-exactly.
double canonical_double(double value);

/// Scenes ordered by id. Immutable once loaded.
struct Corpus
{
  std::vector<Scene> scenes;
  std::size_t size() const noexcept { return scenes.size(); }
};

/// Loads every `*.scene.json` in `directory`. IoError for unreadable files,
/// ParseError (message names the file) for malformed ones, ValidationError
/// for duplicate ids.
Corpus load_corpus(const std::filesystem::path & directory);

/// Writes `<dir>/<id>.scene.json` in canonical form.
void write_scene_file(const std::filesystem::path & directory, const Scene & scene);

std::string read_file(const std::filesystem::path & path);
void write_file(const std::filesystem::path & path, std::string_view contents);

}  // namespace trajsafe

#endif  // TRAJSAFE__SCENE_IO_HPP_
