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

#include "trajsafe/scene_io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "trajsafe/errors.hpp"

namespace trajsafe
{

using nlohmann::json;

namespace
{

std::string fmt9(double value)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

const json & require(const json & obj, const char * key, const std::string & field)
{
  if (!obj.is_object() || !obj.contains(key)) {
    throw ValidationError(field, "missing key '" + std::string(key) + "'");
  }
  return obj.at(key);
}

double as_number(const json & v, const std::string & field)
{
  if (!v.is_number()) {
    throw ValidationError(field, "expected a number");
  }
  return v.get<double>();
}

Vec2 as_point(const json & v, const std::string & field)
{
  if (!v.is_array() || v.size() != 2) {
    throw ValidationError(field, "expected an [x, y] pair");
  }
  return {as_number(v[0], field), as_number(v[1], field)};
}

std::vector<Vec2> as_points(const json & v, const std::string & field)
{
  if (!v.is_array()) {
    throw ValidationError(field, "expected an array of [x, y] pairs");
  }
  std::vector<Vec2> out;
  out.reserve(v.size());
  for (const auto & p : v) {
    out.push_back(as_point(p, field));
  }
  return out;
}

Extent as_extent(const json & v, const std::string & field)
{
  const Vec2 e = as_point(v, field);
  return {e.x, e.y};
}

std::vector<Polygon> as_polygons(const json & v, const std::string & field)
{
  if (!v.is_array()) {
    throw ValidationError(field, "expected an array of polygons");
  }
  std::vector<Polygon> out;
  for (const auto & poly : v) {
    out.push_back(as_points(poly, field));
  }
  return out;
}

std::string as_string(const json & v, const std::string & field)
{
  if (!v.is_string()) {
    throw ValidationError(field, "expected a string");
  }
  return v.get<std::string>();
}

void append_point(std::string & out, const Vec2 & p)
{
  out += '[';
  out += fmt9(p.x);
  out += ',';
  out += fmt9(p.y);
  out += ']';
}

void append_points(std::string & out, const std::vector<Vec2> & pts)
{
  out += '[';
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ',';
    append_point(out, pts[i]);
  }
  out += ']';
}

void append_polygons(std::string & out, const std::vector<Polygon> & polys)
{
  out += '[';
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (i) out += ',';
    append_points(out, polys[i]);
  }
  out += ']';
}

}  // namespace

double canonical_double(double value)
{
  return std::strtod(fmt9(value).c_str(), nullptr);
}

Scene parse_scene(std::string_view bytes)
{
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error & e) {
    throw ParseError(std::string("malformed scene JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) {
    throw ParseError("scene document must be a JSON object", 0);
  }

  Scene scene;
  scene.id = as_string(require(doc, "id", "id"), "id");
  scene.dt = as_number(require(doc, "dt", "dt"), "dt");
  const json & horizon = require(doc, "horizon_steps", "horizon_steps");
  if (!horizon.is_number_integer()) {
    throw ValidationError("horizon_steps", "expected an integer");
  }
  scene.horizon_steps = horizon.get<int>();

  const json & ego = require(doc, "ego", "ego");
  scene.ego.position = as_point(require(ego, "position", "ego.position"), "ego.position");
  scene.ego.heading = as_number(require(ego, "heading", "ego.heading"), "ego.heading");
  scene.ego.speed = as_number(require(ego, "speed", "ego.speed"), "ego.speed");
  scene.ego.extent = as_extent(require(ego, "extent", "ego.extent"), "ego.extent");

  const json & agents = require(doc, "agents", "agents");
  if (!agents.is_array()) {
    throw ValidationError("agents", "expected an array");
  }
  for (const auto & a : agents) {
    AgentTrack track;
    track.agent_id = as_string(require(a, "agent_id", "agents"), "agents.agent_id");
    const auto cls = agent_class_from_string(as_string(require(a, "class", "agents"), "agents"));
    if (!cls) {
      throw ValidationError("agents.class", "unknown agent class");
    }
    track.cls = *cls;
    track.position = as_point(require(a, "position", "agents"), "agents.position");
    track.velocity = as_point(require(a, "velocity", "agents"), "agents.velocity");
    track.heading = as_number(require(a, "heading", "agents"), "agents.heading");
    track.extent = as_extent(require(a, "extent", "agents"), "agents.extent");
    scene.agents.push_back(std::move(track));
  }

  const json & area = require(doc, "drivable_area", "drivable_area");
  scene.drivable_area.outers = as_polygons(require(area, "outers", "drivable_area"), "drivable_area");
  scene.drivable_area.holes = as_polygons(require(area, "holes", "drivable_area"), "drivable_area");

  auto route_points = as_points(require(doc, "route", "route"), "route");
  try {
    scene.route = Polyline(std::move(route_points));
  } catch (const ValidationError & e) {
    throw ValidationError("route", e.what());
  }

  const auto command =
    command_from_string(as_string(require(doc, "intended_command", "intended_command"), "intended_command"));
  if (!command) {
    throw ValidationError("intended_command", "expected left, straight or right");
  }
  scene.intended_command = *command;

  if (doc.contains("candidates")) {
    const json & cands = doc.at("candidates");
    if (!cands.is_object()) {
      throw ValidationError("candidates", "expected an object keyed by mode rank");
    }
    for (const auto & [key, value] : cands.items()) {
      char * end = nullptr;
      const long rank = std::strtol(key.c_str(), &end, 10);
      if (key.empty() || *end != '\0') {
        throw ValidationError("candidates", "mode key '" + key + "' is not an integer");
      }
      scene.candidates[static_cast<int>(rank)] = as_points(value, "candidates");
    }
  }

  validate_scene(scene);
  return scene;
}

std::string serialize_scene(const Scene & scene)
{
  std::string out = "{\n";
  out += "\"id\":" + json(scene.id).dump() + ",\n";
  out += "\"dt\":" + fmt9(scene.dt) + ",\n";
  out += "\"horizon_steps\":" + std::to_string(scene.horizon_steps) + ",\n";

  out += "\"ego\":{\"position\":";
  append_point(out, scene.ego.position);
  out += ",\"heading\":" + fmt9(scene.ego.heading);
  out += ",\"speed\":" + fmt9(scene.ego.speed);
  out += ",\"extent\":";
  append_point(out, {scene.ego.extent.length, scene.ego.extent.width});
  out += "},\n";

  out += "\"agents\":[";
  for (std::size_t i = 0; i < scene.agents.size(); ++i) {
    const auto & a = scene.agents[i];
    out += i ? ",\n  " : "\n  ";
    out += "{\"agent_id\":" + json(a.agent_id).dump();
    out += ",\"class\":\"" + std::string(to_string(a.cls)) + "\"";
    out += ",\"position\":";
    append_point(out, a.position);
    out += ",\"velocity\":";
    append_point(out, a.velocity);
    out += ",\"heading\":" + fmt9(a.heading);
    out += ",\"extent\":";
    append_point(out, {a.extent.length, a.extent.width});
    out += '}';
  }
  out += scene.agents.empty() ? "],\n" : "\n],\n";

  out += "\"drivable_area\":{\"outers\":";
  append_polygons(out, scene.drivable_area.outers);
  out += ",\"holes\":";
  append_polygons(out, scene.drivable_area.holes);
  out += "},\n";

  out += "\"route\":";
  append_points(out, scene.route.points());
  out += ",\n";

  out += "\"intended_command\":\"" + std::string(to_string(scene.intended_command)) + "\"";
  if (!scene.candidates.empty()) {
    out += ",\n\"candidates\":{";
    bool first = true;
    for (const auto & [rank, pts] : scene.candidates) {
      out += first ? "\n  " : ",\n  ";
      first = false;
      out += "\"" + std::to_string(rank) + "\":";
      append_points(out, pts);
    }
    out += "\n}";
  }
  out += "\n}\n";
  return out;
}

std::string read_file(const std::filesystem::path & path)
{
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) {
    throw IoError("cannot read " + path.string() + ": is a directory");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    throw IoError("read failed for " + path.string());
  }
  return ss.str();
}

void write_file(const std::filesystem::path & path, std::string_view contents)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) {
    throw IoError("write failed for " + path.string());
  }
}

void write_scene_file(const std::filesystem::path & directory, const Scene & scene)
{
  write_file(directory / (scene.id + std::string(kSceneFileExtension)), serialize_scene(scene));
}

Corpus load_corpus(const std::filesystem::path & directory)
{
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(directory, ec)) {
    throw IoError("not a directory: " + directory.string());
  }
  std::vector<fs::path> files;
  for (const auto & entry : fs::directory_iterator(directory, ec)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > kSceneFileExtension.size() &&
        name.compare(name.size() - kSceneFileExtension.size(), kSceneFileExtension.size(),
                     kSceneFileExtension) == 0) {
      files.push_back(entry.path());
    }
  }
  if (ec) {
    throw IoError("cannot list " + directory.string() + ": " + ec.message());
  }
  std::sort(files.begin(), files.end());

  Corpus corpus;
  for (const auto & file : files) {
    const std::string bytes = read_file(file);
    try {
      corpus.scenes.push_back(parse_scene(bytes));
    } catch (const ParseError & e) {
      throw ParseError(file.string() + ": " + e.what(), e.offset());
    } catch (const ValidationError & e) {
      throw ValidationError(e.field(), file.string() + ": " + e.what());
    }
  }
  std::sort(corpus.scenes.begin(), corpus.scenes.end(),
            [](const Scene & a, const Scene & b) { return a.id < b.id; });
  std::set<std::string> seen;
  for (const auto & s : corpus.scenes) {
    if (!seen.insert(s.id).second) {
      throw ValidationError("id", "duplicate scene id '" + s.id + "'");
    }
  }
  return corpus;
}

}  // namespace trajsafe
