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

#include "trajsafe/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "trajsafe/errors.hpp"

namespace trajsafe
{

namespace
{

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr std::array<FailureCause, 3> kCauses{
  FailureCause::Collision, FailureCause::OffDrivableArea, FailureCause::DirectionViolation};

ordered_json score_json(const SafetyScore & s)
{
  ordered_json causes = ordered_json::array();
  for (auto c : s.failure_causes) {
    causes.push_back(std::string(to_string(c)));
  }
  return ordered_json{{"nc", s.nc},     {"dac", s.dac},   {"ddc", s.ddc},   {"ttc", s.ttc},
                      {"comf", s.comf}, {"ep", s.ep},     {"pdms", s.pdms}, {"failure_causes", causes}};
}

ordered_json provenance_json(const Provenance & p)
{
  return ordered_json{{"mode_rank", p.mode_rank},         {"heading_scale", p.heading_scale},
                      {"speed_scale", p.speed_scale},     {"lateral_offset", p.lateral_offset},
                      {"is_brake", p.is_brake},           {"brake_decel", p.brake_decel}};
}

class RecordReader
{
public:
  RecordReader(const json & doc, std::size_t line) : doc_(doc), line_(line) {}

  const json & field(const json & obj, const char * name) const
  {
    if (!obj.is_object() || !obj.contains(name)) {
      fail(std::string("missing field '") + name + "'");
    }
    return obj.at(name);
  }

  double number(const json & obj, const char * name) const
  {
    const json & v = field(obj, name);
    if (!v.is_number()) {
      fail(std::string("field '") + name + "' must be a number");
    }
    return v.get<double>();
  }

  std::string text(const json & obj, const char * name) const
  {
    const json & v = field(obj, name);
    if (!v.is_string()) {
      fail(std::string("field '") + name + "' must be a string");
    }
    return v.get<std::string>();
  }

  SafetyScore score(const json & obj) const
  {
    SafetyScore s;
    s.nc = number(obj, "nc");
    s.dac = number(obj, "dac");
    s.ddc = number(obj, "ddc");
    s.ttc = number(obj, "ttc");
    s.comf = number(obj, "comf");
    s.ep = number(obj, "ep");
    s.pdms = number(obj, "pdms");
    const json & causes = field(obj, "failure_causes");
    if (!causes.is_array()) {
      fail("field 'failure_causes' must be an array");
    }
    for (const auto & c : causes) {
      const auto it = std::find_if(kCauses.begin(), kCauses.end(), [&](FailureCause k) {
        return c.is_string() && c.get<std::string>() == to_string(k);
      });
      if (it == kCauses.end()) {
        fail("unknown failure cause " + c.dump());
      }
      s.failure_causes.push_back(*it);
    }
    return s;
  }

  const json & doc() const { return doc_; }
  std::size_t line() const { return line_; }

  [[noreturn]] void fail(const std::string & what) const
  {
    throw ParseError("records line " + std::to_string(line_) + ": " + what, line_, ParseError::Unit::Line);
  }

private:
  const json & doc_;
  std::size_t line_;
};

ordered_json report_to_json(const FailureReport & r)
{
  ordered_json causes;
  for (std::size_t i = 0; i < kCauses.size(); ++i) {
    causes[std::string(to_string(kCauses[i]))] = r.cause_counts[i];
  }
  ordered_json zeros;
  for (std::size_t i = 0; i < r.zero_counts.size(); ++i) {
    zeros[std::string(kSubmetricNames[i])] = r.zero_counts[i];
  }
  ordered_json means;
  for (std::size_t i = 0; i < r.mean_percent.size(); ++i) {
    means[std::string(kSubmetricNames[i])] = r.mean_percent[i];
  }
  means["pdms"] = r.mean_pdms_percent;
  ordered_json out{{"total_scenes", r.total_scenes},
                   {"skipped", r.skipped},
                   {"pdms_zero_count", r.pdms_zero_count},
                   {"cause_counts", causes},
                   {"zero_counts", zeros},
                   {"mean_percent", means},
                   {"histogram", r.histogram}};
  if (r.improved_from_zero_count) {
    out["improved_from_zero_count"] = *r.improved_from_zero_count;
  }
  return out;
}

std::string fmt(const char * pattern, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

}  // namespace

std::size_t histogram_bin(double pdms)
{
  const double clamped = std::clamp(pdms, 0.0, 1.0);
  return std::min(kHistogramBins - 1, static_cast<std::size_t>(std::floor(clamped * kHistogramBins)));
}

double percent_1dp(double fraction) { return std::round(fraction * 1000.0) / 10.0; }

FailureReport build_report(std::span<const SceneOutcome> outcomes, bool use_before)
{
  FailureReport r;
  std::array<double, 6> sums{};
  double pdms_sum = 0.0;
  for (const auto & o : outcomes) {
    if (o.skipped) {
      ++r.skipped;
      continue;
    }
    const SafetyScore & s = use_before ? o.before.value() : o.score;
    ++r.total_scenes;
    if (s.pdms == 0.0) {
      ++r.pdms_zero_count;
    }
    for (auto c : s.failure_causes) {
      ++r.cause_counts[static_cast<std::size_t>(c)];
    }
    const std::array<double, 6> values{s.nc, s.dac, s.ddc, s.ttc, s.comf, s.ep};
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i < r.zero_counts.size() && values[i] == 0.0) {
        ++r.zero_counts[i];
      }
      sums[i] += values[i];
    }
    pdms_sum += s.pdms;
    ++r.histogram[histogram_bin(s.pdms)];
  }
  if (r.total_scenes > 0) {
    const double n = static_cast<double>(r.total_scenes);
    for (std::size_t i = 0; i < sums.size(); ++i) {
      r.mean_percent[i] = percent_1dp(sums[i] / n);
    }
    r.mean_pdms_percent = percent_1dp(pdms_sum / n);
  }
  return r;
}

AnalysisReport analyze_outcomes(RecordKind kind, std::span<const SceneOutcome> outcomes)
{
  AnalysisReport a;
  a.kind = kind;
  a.report = build_report(outcomes);
  if (kind == RecordKind::Guide) {
    a.before = build_report(outcomes, true);
    std::size_t improved = 0;
    for (const auto & o : outcomes) {
      if (!o.skipped && o.before->pdms == 0.0 && o.score.pdms > 0.0) {
        ++improved;
      }
    }
    a.report.improved_from_zero_count = improved;
  }
  return a;
}

std::string score_record(const std::string & id, const SafetyScore & score)
{
  ordered_json rec{{"id", id}, {"status", "ok"}, {"score", score_json(score)}};
  return rec.dump();
}

std::string skipped_record(const std::string & id, const std::string & error)
{
  ordered_json rec{{"id", id}, {"status", "skipped"}, {"error", error}};
  return rec.dump();
}

std::string guide_record(const std::string & id, const GuidanceResult & result)
{
  ordered_json candidates = ordered_json::array();
  for (const auto & c : result.all_candidates) {
    candidates.push_back(ordered_json{{"provenance", provenance_json(c.provenance)},
                                      {"perturbation_magnitude", c.perturbation_magnitude},
                                      {"score", score_json(c.score)}});
  }
  const Candidate & sel = result.selected();
  ordered_json rec{{"id", id},
                   {"status", "ok"},
                   {"before", score_json(result.raw_mode1_score)},
                   {"after", score_json(sel.score)},
                   {"improved", result.improved},
                   {"fallback_used", result.fallback_used},
                   {"selected",
                    ordered_json{{"index", result.selected_index}, {"provenance", provenance_json(sel.provenance)}}},
                   {"candidates", candidates}};
  return rec.dump();
}

void check_score_consistency(const SafetyScore & s, const std::string & where)
{
  const std::array<double, 7> values{s.nc, s.dac, s.ddc, s.ttc, s.comf, s.ep, s.pdms};
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError(where, "submetric outside [0, 1]");
    }
  }
  std::vector<FailureCause> expected;
  if (s.nc == 0.0) expected.push_back(FailureCause::Collision);
  if (s.dac == 0.0) expected.push_back(FailureCause::OffDrivableArea);
  if (s.ddc == 0.0) expected.push_back(FailureCause::DirectionViolation);
  if (s.failure_causes != expected) {
    throw ValidationError(where, "failure_causes do not match the nc/dac/ddc gates");
  }
  if (!expected.empty() && s.pdms != 0.0) {
    throw ValidationError(where, "failed score with nonzero pdms");
  }
  if (expected.empty() && s.pdms == 0.0 && (s.ttc != 0.0 || s.comf != 0.0 || s.ep != 0.0)) {
    throw ValidationError(where, "pdms is 0 but no failure cause is recorded");
  }
}

std::vector<SceneOutcome> parse_records(std::string_view text, RecordKind & kind)
{
  kind = RecordKind::Score;
  std::optional<RecordKind> seen;
  std::vector<SceneOutcome> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view line =
      text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      continue;
    }
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error & e) {
      throw ParseError("records line " + std::to_string(line_no) + ": " + e.what(), line_no,
                       ParseError::Unit::Line);
    }
    const RecordReader r(doc, line_no);
    SceneOutcome o;
    o.id = r.text(doc, "id");
    const std::string status = r.text(doc, "status");
    const std::string where = "records line " + std::to_string(line_no);
    if (status == "skipped") {
      o.skipped = true;
      if (doc.contains("error") && doc["error"].is_string()) {
        o.error = doc["error"].get<std::string>();
      }
      out.push_back(std::move(o));
      continue;
    }
    if (status != "ok") {
      r.fail("unknown status '" + status + "'");
    }
    RecordKind this_kind = RecordKind::Score;
    if (doc.contains("before")) {
      this_kind = RecordKind::Guide;
      o.before = r.score(doc["before"]);
      o.score = r.score(r.field(doc, "after"));
      check_score_consistency(*o.before, where + " (before)");
      check_score_consistency(o.score, where + " (after)");
      if (o.score.pdms < o.before->pdms) {
        throw ValidationError(where, "post-guidance pdms below mode-1 pdms");
      }
    } else {
      o.score = r.score(r.field(doc, "score"));
      check_score_consistency(o.score, where);
    }
    if (seen && *seen != this_kind) {
      throw ValidationError(where, "score and guide records are mixed");
    }
    seen = this_kind;
    out.push_back(std::move(o));
  }
  if (seen) {
    kind = *seen;
  }
  return out;
}

std::string report_json(const AnalysisReport & a)
{
  ordered_json doc;
  if (a.kind == RecordKind::Guide) {
    doc["mode"] = "guide";
    doc["before"] = report_to_json(a.before.value());
    doc["after"] = report_to_json(a.report);
  } else {
    doc["mode"] = "score";
    doc["report"] = report_to_json(a.report);
  }
  return doc.dump(2) + "\n";
}

std::string histogram_tsv(const AnalysisReport & a)
{
  const bool guide = a.kind == RecordKind::Guide;
  std::string out = guide ? "bin_low\tbin_high\tcount\tcount_before\n" : "bin_low\tbin_high\tcount\n";
  for (std::size_t i = 0; i < kHistogramBins; ++i) {
    out += fmt("%.2f", static_cast<double>(i) * kHistogramBinWidth) + "\t" +
           fmt("%.2f", static_cast<double>(i + 1) * kHistogramBinWidth) + "\t" + std::to_string(a.report.histogram[i]);
    if (guide) {
      out += "\t" + std::to_string(a.before->histogram[i]);
    }
    out += "\n";
  }
  return out;
}

std::string report_table(const AnalysisReport & a)
{
  const bool guide = a.kind == RecordKind::Guide;
  std::vector<std::pair<std::string, std::vector<std::string>>> rows;
  const auto add = [&](std::string label, auto get) {
    std::vector<std::string> cells;
    if (guide) {
      cells.push_back(get(*a.before));
    }
    cells.push_back(get(a.report));
    rows.emplace_back(std::move(label), std::move(cells));
  };
  const auto count = [](std::size_t v) { return std::to_string(v); };
  add("scenes", [&](const FailureReport & r) { return count(r.total_scenes); });
  add("skipped", [&](const FailureReport & r) { return count(r.skipped); });
  add("pdms = 0", [&](const FailureReport & r) { return count(r.pdms_zero_count); });
  for (std::size_t i = 0; i < kCauses.size(); ++i) {
    add("  " + std::string(to_string(kCauses[i])), [&](const FailureReport & r) { return count(r.cause_counts[i]); });
  }
  for (std::size_t i = 0; i < 5; ++i) {
    add(std::string(kSubmetricNames[i]) + " = 0", [&](const FailureReport & r) { return count(r.zero_counts[i]); });
  }
  for (std::size_t i = 0; i < kSubmetricNames.size(); ++i) {
    add("mean " + std::string(kSubmetricNames[i]) + " %",
        [&](const FailureReport & r) { return fmt("%.1f", r.mean_percent[i]); });
  }
  add("mean pdms %", [&](const FailureReport & r) { return fmt("%.1f", r.mean_pdms_percent); });

  std::vector<std::string> header{"metric"};
  if (guide) {
    header.push_back("before");
    header.push_back("after");
  } else {
    header.push_back("value");
  }
  std::size_t label_w = header[0].size();
  std::size_t cell_w = 6;
  for (const auto & [label, cells] : rows) {
    label_w = std::max(label_w, label.size());
    for (const auto & c : cells) cell_w = std::max(cell_w, c.size());
  }
  const auto pad_right = [](const std::string & s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
  const auto pad_left = [](const std::string & s, std::size_t w) { return std::string(w - s.size(), ' ') + s; };

  std::string out = pad_right(header[0], label_w);
  for (std::size_t i = 1; i < header.size(); ++i) out += "  " + pad_left(header[i], cell_w);
  out += "\n" + std::string(label_w + (header.size() - 1) * (cell_w + 2), '-') + "\n";
  for (const auto & [label, cells] : rows) {
    out += pad_right(label, label_w);
    for (const auto & c : cells) out += "  " + pad_left(c, cell_w);
    out += "\n";
  }
  if (guide) {
    out += "improved from pdms 0: " + std::to_string(a.report.improved_from_zero_count.value_or(0)) + "\n";
  }
  return out;
}

}  // namespace trajsafe
