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

#ifndef TRAJSAFE__REPORT_HPP_
#define TRAJSAFE__REPORT_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trajsafe/guidance.hpp"
#include "trajsafe/metrics.hpp"

namespace trajsafe
{

inline constexpr std::size_t kHistogramBins = 20;
inline constexpr double kHistogramBinWidth = 0.05;

/// Submetric order used by the zero counts and means.
enum class Submetric { NC, DAC, DDC, TTC, COMF, EP };
inline constexpr std::array<std::string_view, 6> kSubmetricNames{"nc", "dac", "ddc", "ttc", "comf", "ep"};

/// Catastrophic-failure summary over the scored scenes of a corpus.
struct FailureReport
{
  std::size_t total_scenes{0};  ///< scored scenes; skipped ones are counted apart
  std::size_t skipped{0};
  std::size_t pdms_zero_count{0};
  std::array<std::size_t, 3> cause_counts{};  ///< Collision, OffDrivableArea, DirectionViolation
  std::array<std::size_t, 5> zero_counts{};   ///< nc, dac, ddc, ttc, comf
  std::array<double, 6> mean_percent{};       ///< nc .. ep, percent with 1 decimal
  double mean_pdms_percent{0.0};
  std::array<std::size_t, kHistogramBins> histogram{};
  std::optional<std::size_t> improved_from_zero_count;  ///< guidance reports only

  friend bool operator==(const FailureReport &, const FailureReport &) = default;
};

/// Histogram bin of a pdms value; pdms = 1 lands in the last bin.
std::size_t histogram_bin(double pdms);

/// Rounds a fraction in [0, 1] to a percentage with one decimal.
double percent_1dp(double fraction);

enum class RecordKind { Score, Guide };

/// One line of records.ndjson, reduced to what the aggregates need.
struct SceneOutcome
{
  std::string id;
  bool skipped{false};
  std::string error;
  SafetyScore score;                  ///< mode-1 score, or post-guidance score
  std::optional<SafetyScore> before;  ///< raw mode-1 score, guidance only
};

struct AnalysisReport
{
  RecordKind kind{RecordKind::Score};
  FailureReport report;                ///< score report, or post-guidance report
  std::optional<FailureReport> before; ///< guidance only

  friend bool operator==(const AnalysisReport &, const AnalysisReport &) = default;
};

FailureReport build_report(std::span<const SceneOutcome> outcomes, bool use_before = false);
AnalysisReport analyze_outcomes(RecordKind kind, std::span<const SceneOutcome> outcomes);

std::string score_record(const std::string & id, const SafetyScore & score);
std::string skipped_record(const std::string & id, const std::string & error);
std::string guide_record(const std::string & id, const GuidanceResult & result);

/// Parses records.ndjson. Malformed JSON or missing fields raise ParseError
/// with the 1-based line number; scores inconsistent with their failure
/// causes raise ValidationError. Mixed score/guide records are rejected. An
/// empty input yields no outcomes and RecordKind::Score.
std::vector<SceneOutcome> parse_records(std::string_view text, RecordKind & kind);

/// Throws ValidationError when the causes do not match the gates or when
/// pdms is 0 without a cause while some weighted submetric is nonzero.
void check_score_consistency(const SafetyScore & score, const std::string & where);

std::string report_json(const AnalysisReport & analysis);
/// bin_low, bin_high, count (post-guidance count for guidance reports, with a
/// trailing count_before column).
std::string histogram_tsv(const AnalysisReport & analysis);
/// Aligned plain-text summary.
std::string report_table(const AnalysisReport & analysis);

}  // namespace trajsafe

#endif  // TRAJSAFE__REPORT_HPP_
