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

// Reference implementation of detection. Everything here is deliberately naive and
// written from the operator definitions, not from the pruned search in engine.cpp.

#include <algorithm>
#include <cmath>
#include <limits>

#include "cedl/engine.hpp"
#include "cedl/parser.hpp"

namespace cedl
{

namespace
{

bool constraint_holds(const ValueConstraint & c, double x)
{
  switch (c.index()) {
    case 0:
      return x >= std::get<Minimum>(c).value;
    case 1:
      return x <= std::get<Maximum>(c).value;
    default:
      return std::get<In>(c).lo <= x && x <= std::get<In>(c).hi;
  }
}

/// Mirrors the E_BAD_PERCENT wording of match_atomic so both paths report alike.
Diagnostic bad_percent(const ResolvedEvent & ev, const MeasurementDecl & m, double v, double t)
{
  return warning(
    codes::kBadPercent,
    "percentage " + m.name.str() + " = " + format_number(v) + " at t=" + format_number(t) +
      " is outside [0, 100]; sample skipped",
    ev.name.str());
}

std::vector<EventInstance> split_runs(
  const std::vector<double> & times, const std::string & name, double max_gap)
{
  std::vector<EventInstance> out;
  const std::size_t n = times.size();
  for (std::size_t i = 0; i < n; ++i) {
    const bool starts_run = i == 0 || times[i] - times[i - 1] > max_gap;
    if (!starts_run) {
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && !(times[j + 1] - times[j] > max_gap)) {
      ++j;
    }
    out.push_back(EventInstance{name, times[i], times[j], {}});
  }
  return out;
}

bool tuple_qualifies(
  const OperatorExpr & node, const std::vector<const EventInstance *> & t, const DetectionConfig & cfg)
{
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (t[j]->end - t[i]->start > cfg.horizon) {
        return false;
      }
      if (node.window && node.kind != OperatorKind::Concurrent &&
          t[j]->end - t[i]->start > *node.window) {
        return false;
      }
    }
  }

  switch (node.kind) {
    case OperatorKind::Exists:
      return true;
    case OperatorKind::Follows:
      for (std::size_t k = 0; k + 1 < n; ++k) {
        if (!(t[k]->end < t[k + 1]->start)) {
          return false;
        }
      }
      return true;
    case OperatorKind::Concurrent:
      break;
    case OperatorKind::Ref:
      return false;
  }

  if (node.duration) {
    double overlap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (t[i]->start == t[i]->end) {
        return false;
      }
      for (std::size_t j = 0; j < n; ++j) {
        overlap = std::min(overlap, t[j]->end - t[i]->start);
      }
    }
    if (node.duration->kind == DurationBound::Kind::Minimum) {
      return overlap >= node.duration->seconds;
    }
    return overlap > 0 && overlap <= node.duration->seconds;
  }

  bool any_point = false;
  bool any_interval = false;
  for (const auto * e : t) {
    (e->start == e->end ? any_point : any_interval) = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool pi = t[i]->start == t[i]->end;
      const bool pj = t[j]->start == t[j]->end;
      if (pi && pj && std::abs(t[i]->start - t[j]->start) > cfg.point_tolerance) {
        return false;
      }
      if (!pi && !pj && !any_point && !(t[i]->start < t[j]->end)) {
        return false;
      }
      if (pi && !pj && !(t[j]->start <= t[i]->start && t[i]->start <= t[j]->end)) {
        return false;
      }
    }
  }
  return true;
}

std::vector<EventInstance> enumerate(
  const OperatorExpr & node, const std::vector<std::vector<EventInstance>> & streams,
  const DetectionConfig & cfg, const std::string & name)
{
  std::vector<EventInstance> out;
  const std::size_t n = streams.size();
  for (const auto & s : streams) {
    if (s.empty()) {
      return out;
    }
  }
  std::vector<std::size_t> odometer(n, 0);
  std::vector<const EventInstance *> tuple(n);
  while (true) {
    for (std::size_t k = 0; k < n; ++k) {
      tuple[k] = &streams[k][odometer[k]];
    }
    if (tuple_qualifies(node, tuple, cfg)) {
      EventInstance inst{name, tuple[0]->start, tuple[0]->end, {}};
      for (const auto * e : tuple) {
        inst.start = std::min(inst.start, e->start);
        inst.end = std::max(inst.end, e->end);
        inst.constituents.push_back(*e);
      }
      out.push_back(std::move(inst));
    }
    std::size_t k = 0;
    while (k < n && ++odometer[k] == streams[k].size()) {
      odometer[k] = 0;
      ++k;
    }
    if (k == n) {
      break;
    }
  }
  std::sort(out.begin(), out.end(), instance_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct BruteForce
{
  const CompiledModel & model;
  const DetectionConfig & cfg;
  DetectionResult result;

  std::vector<EventInstance> stream(const std::string & name)
  {
    auto alias = model.aliases.find(name);
    if (alias == model.aliases.end()) {
      return result.instances[name];
    }
    std::vector<EventInstance> all;
    for (const auto & member : alias->second) {
      for (const auto & e : result.instances[member.str()]) {
        all.push_back(e);
      }
    }
    std::sort(all.begin(), all.end(), instance_less);
    return all;
  }

  std::vector<EventInstance> evaluate(const OperatorExpr & e, const std::string & name)
  {
    if (e.kind == OperatorKind::Ref) {
      return stream(e.event->str());
    }
    std::vector<std::vector<EventInstance>> streams;
    for (std::size_t k = 0; k < e.operands.size(); ++k) {
      auto s = evaluate(e.operands[k], name);
      if (e.kind == OperatorKind::Concurrent && e.duration) {
        std::size_t points = 0;
        std::vector<EventInstance> kept;
        for (auto & inst : s) {
          if (inst.start == inst.end) {
            ++points;
          } else {
            kept.push_back(std::move(inst));
          }
        }
        if (points > 0) {
          result.diagnostics.push_back(warning(
            codes::kConcurrentTPoint,
            "CONCURRENT_T is interval only; ignored " + std::to_string(points) +
              " point occurrence(s) of operand " + std::to_string(k + 1),
            name));
        }
        s = std::move(kept);
      }
      streams.push_back(std::move(s));
    }
    return enumerate(e, streams, cfg, name);
  }
};

}  // namespace

DetectionResult brute_force_detect(
  const CompiledModel & model, std::span<const RawObservation> log, const DetectionConfig & cfg)
{
  BruteForce bf{model, cfg, {}};
  if (auto bad = cfg.validate()) {
    bf.result.diagnostics.push_back(*bad);
    return std::move(bf.result);
  }

  std::vector<RawObservation> sorted(log.begin(), log.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto & a, const auto & b) {
    return a.timestamp < b.timestamp;
  });
  std::vector<RawObservation> usable;
  for (const auto & obs : sorted) {
    bool finite = std::isfinite(obs.timestamp);
    for (const auto & [key, value] : obs.measurements) {
      finite = finite && std::isfinite(value);
    }
    if (!finite) {
      bf.result.diagnostics.push_back(warning(
        codes::kBadObservation, "observation with a non-finite timestamp or value skipped",
        obs.source));
      continue;
    }
    usable.push_back(obs);
  }

  for (const auto & ev : model.atomic_events) {
    std::vector<double> times;
    for (const auto & obs : usable) {
      if (obs.source != ev.source_instance.str()) {
        continue;
      }
      bool present = true;
      for (const auto & m : ev.measurements) {
        present = present && obs.measurements.count(m.name.str()) != 0;
      }
      if (!present) {
        continue;
      }
      bool percent_ok = true;
      for (const auto & m : ev.measurements) {
        const double v = obs.measurements.at(m.name.str());
        if (m.kind == MeasurementKind::Percentage && (v < 0 || v > 100)) {
          bf.result.diagnostics.push_back(bad_percent(ev, m, v, obs.timestamp));
          percent_ok = false;
          break;
        }
      }
      if (!percent_ok) {
        continue;
      }
      bool all_hold = true;
      for (const auto & m : ev.measurements) {
        all_hold = all_hold && constraint_holds(*m.constraint, obs.measurements.at(m.name.str()));
      }
      if (all_hold) {
        times.push_back(obs.timestamp);
      }
    }
    bf.result.instances[ev.name.str()] = split_runs(times, ev.name.str(), cfg.max_gap);
  }

  for (const auto & ce : model.complex_events) {
    bf.result.instances[ce.name.str()] = bf.evaluate(ce.pattern, ce.name.str());
  }
  return std::move(bf.result);
}

}  // namespace cedl
