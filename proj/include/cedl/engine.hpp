/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cedl/diagnostics.hpp"
#include "cedl/model.hpp"
#include "cedl/semantics.hpp"

namespace cedl
{

/// One timestamped sample from a monitored source.
struct RawObservation
{
  std::string source;
  double timestamp = 0;  // seconds
  std::map<std::string, double> measurements;

  friend bool operator==(const RawObservation &, const RawObservation &) = default;
};

/// A detected occurrence. Points have start == end; intervals have start < end.
/// Composite occurrences list the operand occurrences that produced them.
struct EventInstance
{
  std::string event_name;
  double start = 0;
  double end = 0;
  std::vector<EventInstance> constituents;

  [[nodiscard]] bool is_point() const noexcept { return start == end; }
  [[nodiscard]] double span() const noexcept { return end - start; }

  static EventInstance point(std::string name, double t) { return {std::move(name), t, t, {}}; }
  static EventInstance interval(std::string name, double start, double end)
  {
    return {std::move(name), start, end, {}};
  }

  friend bool operator==(const EventInstance &, const EventInstance &) = default;
};

/// Total order: (start, end), then constituents lexicographically, then name.
bool instance_less(const EventInstance & a, const EventInstance & b);

struct DetectionConfig
{
  double max_gap = 1.0;          // largest sample gap that still continues a run
  double point_tolerance = 0.0;  // CONCURRENT slack for point occurrences
  double horizon = 3600.0;       // largest span of any combined tuple

  /// Error diagnostic when a knob is non-finite or out of range.
  [[nodiscard]] std::optional<Diagnostic> validate() const;
};

struct MatchResult
{
  bool matched = false;
  std::optional<Diagnostic> diagnostic;  // E_BAD_PERCENT
};

/// Whether `obs` is an occurrence of `event`: same source, every declared measurement
/// present and within its constraint.
MatchResult match_atomic(const ResolvedEvent & event, const RawObservation & obs);

/// Merges time-ordered point occurrences of one event into maximal runs whose
/// consecutive gaps are at most `cfg.max_gap`. Single-sample runs stay points.
std::vector<EventInstance> intervalize(
  std::span<const EventInstance> points, const DetectionConfig & cfg);

struct EvalResult
{
  std::vector<EventInstance> instances;
  std::vector<Diagnostic> diagnostics;
};

/// Applies one operator node to already evaluated operand streams (one stream per
/// operand, each sorted by start). The node's own operand sub-expressions are not
/// evaluated here. Produced instances are named `result_name`.
EvalResult eval_operator(
  const OperatorExpr & node, std::span<const std::vector<EventInstance>> operand_streams,
  const DetectionConfig & cfg, std::string_view result_name);

struct DetectionResult
{
  /// Every atomic and complex event of the model, including those with no occurrence.
  std::map<std::string, std::vector<EventInstance>> instances;
  std::vector<Diagnostic> diagnostics;

  friend bool operator==(const DetectionResult &, const DetectionResult &) = default;
};

DetectionResult detect(
  const CompiledModel & model, std::span<const RawObservation> log, const DetectionConfig & cfg);

/// Reference semantics for `detect`: enumerates every operand tuple and checks each
/// operator's definition pairwise, with no indexing or pruning. Meant for testing.
DetectionResult brute_force_detect(
  const CompiledModel & model, std::span<const RawObservation> log, const DetectionConfig & cfg);

// ----------------------------------------------------------------------------
// File formats
// ----------------------------------------------------------------------------

struct ObservationLog
{
  std::vector<RawObservation> observations;
  std::vector<Diagnostic> diagnostics;  // one warning per skipped line
  std::vector<std::size_t> skipped_lines;  // 1-based, parallel to diagnostics
};

/// Reads JSON Lines records `{"source":"Server1","t":12.0,"m":{"CPULoad":95.0}}`.
/// Blank lines are ignored; malformed lines are skipped with an E_LOG_PARSE warning.
ObservationLog parse_observation_log(std::string_view text);

/// One JSON Lines record per instance, grouped by event name:
/// `{"event":"CriticalServer","start":0.0,"end":50.0,"constituents":[...]}`.
std::string to_jsonl(const DetectionResult & result);

}  // namespace cedl
