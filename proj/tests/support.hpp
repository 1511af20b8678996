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

// Helpers shared by the unit tests and the acceptance binary.

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cedl/engine.hpp"
#include "cedl/model.hpp"
#include "cedl/parser.hpp"
#include "cedl/semantics.hpp"

namespace cedl::test
{

inline std::string fixture_path(std::string_view rel)
{
  return std::string(CEDL_FIXTURES) + "/" + std::string(rel);
}

inline std::string read_fixture(std::string_view rel)
{
  std::ifstream in(fixture_path(rel), std::ios::binary);
  if (!in) {
    throw std::runtime_error("missing fixture " + std::string(rel));
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ModelAst parse_ok(std::string_view text)
{
  auto result = parse_model(text);
  if (!result.ok()) {
    const auto & e = result.errors.front();
    throw std::runtime_error(
      "parse failed at " + std::to_string(e.pos.line) + ":" + std::to_string(e.pos.column) + ": " +
      e.message);
  }
  return *result.model;
}

inline StructuralConfig config_ok(std::string_view json)
{
  auto cfg = load_structural_config(json);
  if (!cfg.ok()) {
    throw std::runtime_error("bad config: " + cfg.diagnostics.front().message);
  }
  return *cfg.value;
}

inline CompiledModel compile_ok(std::string_view text, std::string_view config_json = "")
{
  auto out = resolve(parse_ok(text), config_ok(config_json));
  if (!out.ok()) {
    throw std::runtime_error("resolve failed: " + out.diagnostics.front().code + " " +
                             out.diagnostics.front().message);
  }
  return *out.value;
}

inline bool has_code(const std::vector<Diagnostic> & diags, std::string_view code)
{
  for (const auto & d : diags) {
    if (d.code == code) {
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Random models for the round-trip property
// ---------------------------------------------------------------------------

class RandomModel
{
public:
  explicit RandomModel(std::mt19937 & rng) : rng_(rng) {}

  ModelAst make()
  {
    ModelAst m;
    for (int i = 0, n = pick(0, 3); i < n; ++i) {
      m.add(SourceTypeDef{fresh(), static_cast<TopologyElementKind>(pick(0, 2))});
    }
    for (int i = 0, n = pick(0, 3); i < n; ++i) {
      EventStubDef s{fresh(), name(), std::nullopt, measurements(true), actions()};
      if (coin()) {
        s.characteristic = name();
      }
      m.add(std::move(s));
    }
    for (int i = 0, n = pick(0, 4); i < n; ++i) {
      EventDef e{fresh(), SourceRef{InstanceSource{name()}}, measurements(false), actions(), {}, {}};
      if (coin()) {
        e.source = TypeSource{name()};
      }
      if (coin()) {
        e.implements = name();
        e.implementation = measurements(false);
      }
      m.add(std::move(e));
    }
    for (int i = 0, n = pick(0, 3); i < n; ++i) {
      m.add(ComplexEventDef{fresh(), pattern(0)});
    }
    return m;
  }

  /// A finite double; mixes short decimals with full-precision values.
  double number()
  {
    switch (pick(0, 4)) {
      case 0:
        return pick(-1000, 1000);
      case 1:
        return pick(0, 100000) / 1000.0;
      case 2:
        return std::uniform_real_distribution<double>(-1e6, 1e6)(rng_);
      case 3:
        return std::uniform_real_distribution<double>(0, 1e-6)(rng_);
      default:
        return pick(1, 64) / 64.0;
    }
  }

  double positive()
  {
    double v = std::abs(number());
    return v > 0 ? v : 0.5;
  }

private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return pick(0, 1) == 1; }

  Identifier name()
  {
    static constexpr std::string_view kHead = "ABCXYZabcxyz_";
    static constexpr std::string_view kTail = "abcXYZ019_";
    std::string s(1, kHead[pick(0, kHead.size() - 1)]);
    for (int i = 0, n = pick(0, 6); i < n; ++i) {
      s += kTail[pick(0, kTail.size() - 1)];
    }
    if (is_keyword(s)) {
      s += "_k";
    }
    return Identifier(s);
  }

  // Declaration names carry a counter so they never clash.
  Identifier fresh() { return Identifier(name().str() + "_" + std::to_string(counter_++)); }

  std::optional<ValueConstraint> constraint()
  {
    switch (pick(0, 2)) {
      case 0:
        return Minimum{number()};
      case 1:
        return Maximum{number()};
      default: {
        double lo = number();
        double hi = lo + positive();
        if (!(lo < hi)) {
          hi = std::nextafter(lo, INFINITY);
        }
        return In{lo, hi};
      }
    }
  }

  std::vector<MeasurementDecl> measurements(bool allow_stub)
  {
    std::vector<MeasurementDecl> out;
    for (int i = 0, n = pick(0, 3); i < n; ++i) {
      MeasurementDecl d{coin() ? MeasurementKind::Percentage : MeasurementKind::Scalar, name(), {}};
      if (!allow_stub || coin()) {
        d.constraint = constraint();
      }
      out.push_back(std::move(d));
    }
    return out;
  }

  std::vector<ActionDecl> actions()
  {
    std::vector<ActionDecl> out;
    for (int i = 0, n = pick(0, 2); i < n; ++i) {
      out.push_back(ActionDecl{name()});
    }
    return out;
  }

  OperatorExpr pattern(int depth)
  {
    std::vector<OperatorExpr> ops;
    for (int i = 0, n = pick(2, 3); i < n; ++i) {
      ops.push_back(depth < 2 && pick(0, 3) == 0 ? pattern(depth + 1) : OperatorExpr::ref(name()));
    }
    switch (pick(0, 5)) {
      case 0:
        return OperatorExpr::exists(std::move(ops));
      case 1:
        return OperatorExpr::exists(std::move(ops), positive());
      case 2:
        return OperatorExpr::follows(std::move(ops));
      case 3:
        return OperatorExpr::follows(std::move(ops), positive());
      case 4:
        return OperatorExpr::concurrent(std::move(ops));
      default: {
        auto kind = coin() ? DurationBound::Kind::Minimum : DurationBound::Kind::Maximum;
        return OperatorExpr::concurrent(std::move(ops), DurationBound{kind, positive()});
      }
    }
  }

  std::mt19937 & rng_;
  int counter_ = 0;
};

// ---------------------------------------------------------------------------
// Random detection scenarios for oracle comparisons
// ---------------------------------------------------------------------------

/// Three atomic events over two sources, chosen so that random samples switch them
/// on and off and produce a mix of points and intervals.
inline constexpr std::string_view kEngineBase = R"(
SourceType Host extends PhysicalElement
Event A { source s0 ScalarMeasurement x Minimum 5 }
Event B { source s1 ScalarMeasurement y Maximum 4 }
Event C { source s0 ScalarMeasurement y In (3, 7) }
)";

inline constexpr std::string_view kEngineConfig =
  R"({"instances":[{"name":"s0","type":"Host"},{"name":"s1","type":"Host"}]})";

inline std::vector<RawObservation> random_log(std::mt19937 & rng, int max_observations)
{
  std::uniform_int_distribution<int> count(0, max_observations);
  std::uniform_int_distribution<int> tick(0, 80);
  std::uniform_int_distribution<int> value(0, 10);
  std::uniform_int_distribution<int> choice(0, 5);
  std::vector<RawObservation> log;
  for (int i = 0, n = count(rng); i < n; ++i) {
    RawObservation obs;
    obs.source = choice(rng) < 3 ? "s0" : "s1";
    // Half-second ticks make boundary ties common; the odd off-grid time checks rounding.
    obs.timestamp = choice(rng) == 0 ? std::uniform_real_distribution<double>(0, 40)(rng)
                                     : tick(rng) * 0.5;
    if (choice(rng) != 0) {
      obs.measurements["x"] = value(rng);
    }
    if (choice(rng) != 0) {
      obs.measurements["y"] = value(rng);
    }
    log.push_back(std::move(obs));
  }
  std::stable_sort(log.begin(), log.end(), [](const auto & a, const auto & b) {
    return a.timestamp < b.timestamp;
  });
  return log;
}

inline DetectionConfig random_detection_config(std::mt19937 & rng)
{
  static constexpr double kGaps[] = {0.5, 1, 2, 3.5};
  static constexpr double kTolerances[] = {0, 0, 0.5, 2};
  static constexpr double kHorizons[] = {5, 12, 30, 3600};
  std::uniform_int_distribution<int> i4(0, 3);
  DetectionConfig cfg;
  cfg.max_gap = kGaps[i4(rng)];
  cfg.point_tolerance = kTolerances[i4(rng)];
  cfg.horizon = kHorizons[i4(rng)];
  return cfg;
}

/// Pattern text over A, B, C with 2 or 3 operands; `nest` allows one nested operator.
inline std::string random_pattern(std::mt19937 & rng, bool nest)
{
  static constexpr std::string_view kRefs[] = {"A", "B", "C"};
  static constexpr std::string_view kWindows[] = {"0.5", "1", "2.5", "4", "7", "12", "30"};
  std::uniform_int_distribution<int> pick(0, 999);
  auto operand = [&](bool allow_nest) {
    if (allow_nest && pick(rng) % 4 == 0) {
      return "FOLLOWS(" + std::string(kRefs[pick(rng) % 3]) + " " +
             std::string(kRefs[pick(rng) % 3]) + ")";
    }
    return std::string(kRefs[pick(rng) % 3]);
  };
  std::string ops = operand(nest);
  for (int i = 0, n = 1 + pick(rng) % 2; i < n; ++i) {
    ops += " " + operand(false);
  }
  std::string w(kWindows[pick(rng) % 7]);
  switch (pick(rng) % 7) {
    case 0:
      return "EXISTS(" + ops + ")";
    case 1:
      return "EXISTS(" + ops + ").timewin(" + w + ")";
    case 2:
      return "FOLLOWS(" + ops + ")";
    case 3:
      return "FOLLOWS_T(" + ops + "; T:Maximum " + w + ")";
    case 4:
      return "CONCURRENT(" + ops + ")";
    case 5:
      return "CONCURRENT_T(" + ops + "; T:Minimum " + w + ")";
    default:
      return "CONCURRENT_T(" + ops + "; T:Maximum " + w + ")";
  }
}

inline CompiledModel engine_model(std::string_view pattern)
{
  return compile_ok(std::string(kEngineBase) + "ComplexEvent P { " + std::string(pattern) + " }\n",
                    kEngineConfig);
}

/// Sub-multiset check over sorted instance lists.
inline bool is_subset(const std::vector<EventInstance> & small, const std::vector<EventInstance> & big)
{
  return std::includes(big.begin(), big.end(), small.begin(), small.end(), instance_less);
}

}  // namespace cedl::test
