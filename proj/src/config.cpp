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

#include "trajsafe/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>

#include "trajsafe/errors.hpp"
#include "trajsafe/scene_io.hpp"

namespace trajsafe
{

namespace
{

std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view line)
{
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') {
      quoted = !quoted;
    } else if (line[i] == '#' && !quoted) {
      return line.substr(0, i);
    }
  }
  return line;
}

class Line
{
public:
  Line(std::string key, std::string_view value, std::size_t number)
  : key_(std::move(key)), value_(value), number_(number)
  {
  }

  double number() const { return to_number(value_); }

  int integer() const
  {
    const double d = number();
    if (d != std::floor(d) || std::abs(d) > 1e9) {
      fail("expected an integer");
    }
    return static_cast<int>(d);
  }

  std::string text() const
  {
    std::string_view v = value_;
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
      v = v.substr(1, v.size() - 2);
    }
    return std::string(v);
  }

  std::vector<double> list() const
  {
    std::string_view v = value_;
    if (!v.empty() && v.front() == '[') {
      if (v.back() != ']') {
        fail("unterminated list");
      }
      v = v.substr(1, v.size() - 2);
    }
    std::vector<double> out;
    if (trim(v).empty()) {
      return out;
    }
    std::size_t start = 0;
    while (true) {
      const auto comma = v.find(',', start);
      out.push_back(to_number(trim(v.substr(start, comma - start))));
      if (comma == std::string_view::npos) {
        break;
      }
      start = comma + 1;
    }
    return out;
  }

  [[noreturn]] void fail(const std::string & what) const
  {
    throw ParseError(
      "config line " + std::to_string(number_) + " (" + key_ + "): " + what, number_, ParseError::Unit::Line);
  }

  const std::string & key() const { return key_; }

private:
  double to_number(std::string_view s) const
  {
    const std::string buf(s);
    if (buf.empty()) {
      fail("expected a number");
    }
    char * end = nullptr;
    errno = 0;
    const double d = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || errno == ERANGE || !std::isfinite(d)) {
      fail("expected a finite number, got '" + buf + "'");
    }
    return d;
  }

  std::string key_;
  std::string_view value_;
  std::size_t number_;
};

using Setter = std::function<void(EngineConfig &, const Line &)>;

const std::map<std::string, Setter, std::less<>> & setters()
{
  static const std::map<std::string, Setter, std::less<>> table{
    {"metric.w_ttc", [](EngineConfig & c, const Line & l) { c.metric.w_ttc = l.number(); }},
    {"metric.w_comf", [](EngineConfig & c, const Line & l) { c.metric.w_comf = l.number(); }},
    {"metric.w_ep", [](EngineConfig & c, const Line & l) { c.metric.w_ep = l.number(); }},
    {"metric.ttc_projection_horizon",
     [](EngineConfig & c, const Line & l) { c.metric.ttc_projection_horizon = l.number(); }},
    {"metric.ttc_substeps", [](EngineConfig & c, const Line & l) { c.metric.ttc_substeps = l.integer(); }},
    {"metric.jerk_threshold", [](EngineConfig & c, const Line & l) { c.metric.jerk_threshold = l.number(); }},
    {"metric.accel_threshold", [](EngineConfig & c, const Line & l) { c.metric.accel_threshold = l.number(); }},
    {"metric.ddc_heading_tolerance",
     [](EngineConfig & c, const Line & l) { c.metric.ddc_heading_tolerance = l.number(); }},
    {"metric.min_turn_heading_change",
     [](EngineConfig & c, const Line & l) { c.metric.min_turn_heading_change = l.number(); }},
    {"loss.lambda_dac", [](EngineConfig & c, const Line & l) { c.loss.lambda_dac = l.number(); }},
    {"loss.lambda_col", [](EngineConfig & c, const Line & l) { c.loss.lambda_col = l.number(); }},
    {"loss.lambda_comf", [](EngineConfig & c, const Line & l) { c.loss.lambda_comf = l.number(); }},
    {"loss.d_col", [](EngineConfig & c, const Line & l) { c.loss.d_col = l.number(); }},
    {"loss.j_th", [](EngineConfig & c, const Line & l) { c.loss.j_th = l.number(); }},
    {"loss.dac_mode",
     [](EngineConfig & c, const Line & l) {
       const std::string mode = l.text();
       if (mode == "indicator") {
         c.loss.dac_mode = DacMode::Indicator;
       } else if (mode == "surrogate") {
         c.loss.dac_mode = DacMode::SignedDistanceSurrogate;
       } else {
         l.fail("dac_mode must be 'indicator' or 'surrogate'");
       }
     }},
    {"perturb.heading_scales", [](EngineConfig & c, const Line & l) { c.perturb.heading_scales = l.list(); }},
    {"perturb.speed_scales", [](EngineConfig & c, const Line & l) { c.perturb.speed_scales = l.list(); }},
    {"perturb.lateral_offsets_m",
     [](EngineConfig & c, const Line & l) { c.perturb.lateral_offsets_m = l.list(); }},
    {"perturb.use_modes_up_to", [](EngineConfig & c, const Line & l) { c.perturb.use_modes_up_to = l.integer(); }},
    {"perturb.brake_decels_mps2",
     [](EngineConfig & c, const Line & l) { c.perturb.brake_decels_mps2 = l.list(); }},
  };
  return table;
}

constexpr std::string_view kYawPrefix = "forecast.yaw_rate.";

}  // namespace

void EngineConfig::validate() const
{
  metric.validate();
  loss.validate();
  perturb.validate();
  for (const auto & [id, rate] : yaw_rates) {
    if (!std::isfinite(rate)) {
      throw ValidationError("forecast.yaw_rate." + id, "must be finite");
    }
  }
}

EngineConfig parse_config(std::string_view text)
{
  EngineConfig cfg;
  std::string section;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++number;

    const std::string_view line = trim(strip_comment(raw));
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ParseError("config line " + std::to_string(number) + ": malformed section header", number,
                         ParseError::Unit::Line);
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("config line " + std::to_string(number) + ": expected 'key = value'", number,
                       ParseError::Unit::Line);
    }
    const std::string_view bare_key = trim(line.substr(0, eq));
    const std::string key = section.empty() ? std::string(bare_key) : section + "." + std::string(bare_key);
    const Line entry(key, trim(line.substr(eq + 1)), number);

    if (key.compare(0, kYawPrefix.size(), kYawPrefix) == 0 && key.size() > kYawPrefix.size()) {
      cfg.yaw_rates[key.substr(kYawPrefix.size())] = entry.number();
      continue;
    }
    const auto it = setters().find(key);
    if (it == setters().end()) {
      entry.fail("unknown key");
    }
    it->second(cfg, entry);
  }
  cfg.validate();
  return cfg;
}

EngineConfig load_config(const std::filesystem::path & path)
{
  return parse_config(read_file(path));
}

}  // namespace trajsafe
