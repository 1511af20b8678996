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

#include "cedl/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cedl/parser.hpp"

namespace cedl
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Relative slack applied to pruning bounds only; the final predicates are exact.
double loosen(double bound) { return bound + 1e-9 * (1.0 + std::abs(bound)); }

double span_limit(const OperatorExpr & node, const DetectionConfig & cfg)
{
  if ((node.kind == OperatorKind::Exists || node.kind == OperatorKind::Follows) && node.window) {
    return std::min(cfg.horizon, *node.window);
  }
  return cfg.horizon;
}

/// Running aggregates of a partially chosen tuple.
struct TupleState
{
  double min_start = kInf;
  double max_end = -kInf;
  double min_end = kInf;  // over every member, points included
  double prev_end = -kInf;
  double interval_max_start = -kInf;
  double interval_min_end = kInf;
  double point_min = kInf;
  double point_max = -kInf;
  bool any_point = false;
  bool any_interval = false;

  [[nodiscard]] TupleState with(const EventInstance & inst) const
  {
    TupleState next = *this;
    next.min_start = std::min(min_start, inst.start);
    next.max_end = std::max(max_end, inst.end);
    next.min_end = std::min(min_end, inst.end);
    next.prev_end = inst.end;
    if (inst.is_point()) {
      next.any_point = true;
      next.point_min = std::min(point_min, inst.start);
      next.point_max = std::max(point_max, inst.start);
    } else {
      next.any_interval = true;
      next.interval_max_start = std::max(interval_max_start, inst.start);
      next.interval_min_end = std::min(interval_min_end, inst.end);
    }
    return next;
  }
};

class OperatorSearch
{
public:
  OperatorSearch(
    const OperatorExpr & node, std::span<const std::vector<EventInstance>> streams,
    const DetectionConfig & cfg, std::string_view name)
  : node_(node), streams_(streams), cfg_(cfg), name_(name), limit_(span_limit(node, cfg))
  {
  }

  std::vector<EventInstance> run()
  {
    chosen_.assign(streams_.size(), nullptr);
    if (!streams_.empty()) {
      extend(0, TupleState{});
    }
    std::sort(out_.begin(), out_.end(), instance_less);
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return std::move(out_);
  }

private:
  [[nodiscard]] bool concurrent_t() const
  {
    return node_.kind == OperatorKind::Concurrent && node_.duration.has_value();
  }

  void extend(std::size_t k, const TupleState & state)
  {
    const auto & stream = streams_[k];
    double lo = -kInf;
    double hi = kInf;
    if (k > 0) {
      lo = -loosen(-(state.max_end - limit_));
      hi = loosen(state.min_start + limit_);
      if (node_.kind == OperatorKind::Concurrent) {
        const double slack = concurrent_t() ? 0.0 : cfg_.point_tolerance;
        hi = std::min(hi, loosen(state.min_end + slack));
      }
      if (node_.kind == OperatorKind::Follows) {
        lo = std::max(lo, state.prev_end);
      }
    }

    auto first = std::partition_point(
      stream.begin(), stream.end(), [&](const EventInstance & e) { return e.start < lo; });
    for (auto it = first; it != stream.end() && it->start <= hi; ++it) {
      const EventInstance & inst = *it;
      if (node_.kind == OperatorKind::Follows && k > 0 && !(state.prev_end < inst.start)) {
        continue;
      }
      if (concurrent_t() && inst.is_point()) {
        continue;
      }
      chosen_[k] = &inst;
      const TupleState next = state.with(inst);
      if (next.max_end - next.min_start > limit_) {
        continue;
      }
      if (k + 1 < streams_.size()) {
        extend(k + 1, next);
      } else if (accepts(next)) {
        emit(next);
      }
    }
  }

  [[nodiscard]] bool accepts(const TupleState & s) const
  {
    if (node_.kind != OperatorKind::Concurrent) {
      return true;  // span and FOLLOWS ordering are enforced while extending
    }
    if (node_.duration) {
      const double overlap = s.interval_min_end - s.interval_max_start;
      if (node_.duration->kind == DurationBound::Kind::Minimum) {
        return overlap >= node_.duration->seconds;
      }
      return overlap > 0 && overlap <= node_.duration->seconds;
    }
    if (!s.any_interval) {
      return s.point_max - s.point_min <= cfg_.point_tolerance;
    }
    if (!s.any_point) {
      return s.interval_max_start < s.interval_min_end;
    }
    return s.point_min >= s.interval_max_start && s.point_max <= s.interval_min_end &&
           s.point_max - s.point_min <= cfg_.point_tolerance;
  }

  void emit(const TupleState & s)
  {
    EventInstance inst{std::string(name_), s.min_start, s.max_end, {}};
    inst.constituents.reserve(chosen_.size());
    for (const auto * c : chosen_) {
      inst.constituents.push_back(*c);
    }
    out_.push_back(std::move(inst));
  }

  const OperatorExpr & node_;
  std::span<const std::vector<EventInstance>> streams_;
  const DetectionConfig & cfg_;
  std::string_view name_;
  double limit_;
  std::vector<const EventInstance *> chosen_;
  std::vector<EventInstance> out_;
};

bool finite_observation(const RawObservation & obs)
{
  return std::isfinite(obs.timestamp) &&
         std::all_of(obs.measurements.begin(), obs.measurements.end(), [](const auto & kv) {
           return std::isfinite(kv.second);
         });
}

class Detector
{
public:
  Detector(const CompiledModel & model, const DetectionConfig & cfg) : model_(model), cfg_(cfg) {}

  DetectionResult run(std::span<const RawObservation> log)
  {
    if (auto bad = cfg_.validate()) {
      result_.diagnostics.push_back(*bad);
      return std::move(result_);
    }

    std::vector<std::size_t> order(log.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return log[a].timestamp < log[b].timestamp;
    });

    std::map<std::string, std::vector<std::size_t>, std::less<>> by_source;
    for (std::size_t idx : order) {
      if (!finite_observation(log[idx])) {
        result_.diagnostics.push_back(warning(
          codes::kBadObservation, "observation with a non-finite timestamp or value skipped",
          log[idx].source));
        continue;
      }
      by_source[log[idx].source].push_back(idx);
    }

    for (const auto & ev : model_.atomic_events) {
      std::vector<EventInstance> points;
      if (auto it = by_source.find(ev.source_instance.str()); it != by_source.end()) {
        for (std::size_t idx : it->second) {
          auto m = match_atomic(ev, log[idx]);
          if (m.diagnostic) {
            result_.diagnostics.push_back(std::move(*m.diagnostic));
          }
          if (m.matched) {
            points.push_back(EventInstance::point(ev.name.str(), log[idx].timestamp));
          }
        }
      }
      result_.instances[ev.name.str()] = intervalize(points, cfg_);
    }

    for (const auto & ce : model_.complex_events) {
      result_.instances[ce.name.str()] = evaluate(ce.pattern, ce.name.str());
    }
    return std::move(result_);
  }

private:
  std::vector<EventInstance> stream_for(const std::string & name)
  {
    if (auto alias = model_.aliases.find(name); alias != model_.aliases.end()) {
      std::vector<EventInstance> merged;
      for (const auto & member : alias->second) {
        const auto & part = result_.instances[member.str()];
        merged.insert(merged.end(), part.begin(), part.end());
      }
      std::sort(merged.begin(), merged.end(), instance_less);
      return merged;
    }
    return result_.instances[name];
  }

  std::vector<EventInstance> evaluate(const OperatorExpr & expr, const std::string & name)
  {
    if (expr.is_ref()) {
      return stream_for(expr.event->str());
    }
    std::vector<std::vector<EventInstance>> streams;
    streams.reserve(expr.operands.size());
    for (const auto & operand : expr.operands) {
      streams.push_back(evaluate(operand, name));
    }
    auto r = eval_operator(expr, streams, cfg_, name);
    result_.diagnostics.insert(
      result_.diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
    return std::move(r.instances);
  }

  const CompiledModel & model_;
  const DetectionConfig & cfg_;
  DetectionResult result_;
};

}  // namespace

bool instance_less(const EventInstance & a, const EventInstance & b)
{
  if (a.start != b.start) {
    return a.start < b.start;
  }
  if (a.end != b.end) {
    return a.end < b.end;
  }
  const std::size_t n = std::min(a.constituents.size(), b.constituents.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (instance_less(a.constituents[i], b.constituents[i])) {
      return true;
    }
    if (instance_less(b.constituents[i], a.constituents[i])) {
      return false;
    }
  }
  if (a.constituents.size() != b.constituents.size()) {
    return a.constituents.size() < b.constituents.size();
  }
  return a.event_name < b.event_name;
}

std::optional<Diagnostic> DetectionConfig::validate() const
{
  if (!std::isfinite(max_gap) || max_gap <= 0) {
    return error(codes::kBadConfig, "max_gap must be a positive number of seconds");
  }
  if (!std::isfinite(point_tolerance) || point_tolerance < 0) {
    return error(codes::kBadConfig, "point_tolerance must be a non-negative number of seconds");
  }
  if (!std::isfinite(horizon) || horizon <= 0) {
    return error(codes::kBadConfig, "horizon must be a positive number of seconds");
  }
  return std::nullopt;
}

MatchResult match_atomic(const ResolvedEvent & event, const RawObservation & obs)
{
  if (obs.source != event.source_instance.str()) {
    return {};
  }
  std::vector<double> values;
  values.reserve(event.measurements.size());
  for (const auto & m : event.measurements) {
    auto it = obs.measurements.find(m.name.str());
    if (it == obs.measurements.end()) {
      return {};
    }
    values.push_back(it->second);
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto & m = event.measurements[i];
    if (m.kind == MeasurementKind::Percentage && !(values[i] >= 0 && values[i] <= 100)) {
      return {
        false, warning(
                 codes::kBadPercent,
                 "percentage " + m.name.str() + " = " + format_number(values[i]) + " at t=" +
                   format_number(obs.timestamp) + " is outside [0, 100]; sample skipped",
                 event.name.str())};
    }
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto & m = event.measurements[i];
    if (!m.constraint || !satisfies(*m.constraint, values[i])) {
      return {};
    }
  }
  return {true, std::nullopt};
}

std::vector<EventInstance> intervalize(
  std::span<const EventInstance> points, const DetectionConfig & cfg)
{
  std::vector<EventInstance> out;
  std::size_t run_begin = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const bool last = i + 1 == points.size();
    if (!last && points[i + 1].start - points[i].start <= cfg.max_gap) {
      continue;
    }
    const auto & first = points[run_begin];
    const auto & final = points[i];
    if (first.start == final.start) {
      out.push_back(EventInstance::point(first.event_name, first.start));
    } else {
      out.push_back(EventInstance::interval(first.event_name, first.start, final.start));
    }
    run_begin = i + 1;
  }
  return out;
}

EvalResult eval_operator(
  const OperatorExpr & node, std::span<const std::vector<EventInstance>> operand_streams,
  const DetectionConfig & cfg, std::string_view result_name)
{
  EvalResult result;
  if (node.is_ref()) {
    return result;
  }
  if (node.kind == OperatorKind::Concurrent && node.duration) {
    for (std::size_t k = 0; k < operand_streams.size(); ++k) {
      const auto points = std::count_if(
        operand_streams[k].begin(), operand_streams[k].end(),
        [](const EventInstance & e) { return e.is_point(); });
      if (points > 0) {
        result.diagnostics.push_back(warning(
          codes::kConcurrentTPoint,
          "CONCURRENT_T is interval only; ignored " + std::to_string(points) +
            " point occurrence(s) of operand " + std::to_string(k + 1),
          std::string(result_name)));
      }
    }
  }
  result.instances = OperatorSearch(node, operand_streams, cfg, result_name).run();
  return result;
}

DetectionResult detect(
  const CompiledModel & model, std::span<const RawObservation> log, const DetectionConfig & cfg)
{
  return Detector(model, cfg).run(log);
}

}  // namespace cedl
