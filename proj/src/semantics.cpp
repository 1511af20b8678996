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

#include "cedl/semantics.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "json.hpp"

namespace cedl
{

namespace
{

using json = nlohmann::json;

std::string quote_name(std::string_view s) { return "'" + std::string(s) + "'"; }

bool percent_in_range(double v) { return v >= 0 && v <= 100; }

void check_percentages(
  const std::vector<MeasurementDecl> & ms, const Identifier & owner, std::vector<Diagnostic> & diags)
{
  for (const auto & m : ms) {
    if (m.kind != MeasurementKind::Percentage || !m.constraint) {
      continue;
    }
    bool ok = true;
    if (const auto * min = std::get_if<Minimum>(&*m.constraint)) {
      ok = percent_in_range(min->value);
    } else if (const auto * max = std::get_if<Maximum>(&*m.constraint)) {
      ok = percent_in_range(max->value);
    } else {
      const auto & in = std::get<In>(*m.constraint);
      ok = percent_in_range(in.lo) && percent_in_range(in.hi);
    }
    if (!ok) {
      diags.push_back(error(
        codes::kBadPercent,
        "percentage measurement " + quote_name(m.name.str()) + " is constrained outside [0, 100]",
        owner.str()));
    }
  }
}

std::vector<MeasurementDecl>::iterator find_measurement(
  std::vector<MeasurementDecl> & ms, const Identifier & name)
{
  return std::find_if(ms.begin(), ms.end(), [&](const MeasurementDecl & m) { return m.name == name; });
}

/// Measurements and actions of an event after merging in the implemented stub.
struct MergedBody
{
  std::vector<MeasurementDecl> measurements;
  std::vector<ActionDecl> actions;
};

class Resolver
{
public:
  Resolver(const ModelAst & ast, const StructuralConfig & config) : ast_(ast), config_(config) {}

  Outcome<CompiledModel> run()
  {
    check_config();
    check_stubs();
    out_.source_types = ast_.source_types();
    for (const auto & ev : ast_.events()) {
      resolve_event(ev);
    }
    resolve_complex_events();

    if (has_errors(diags_)) {
      return Outcome<CompiledModel>::failure(std::move(diags_));
    }
    return Outcome<CompiledModel>::success(std::move(out_), std::move(diags_));
  }

private:
  [[nodiscard]] const SourceTypeDef * source_type(const Identifier & name) const
  {
    auto decl = ast_.find(name.str());
    if (!decl) {
      return nullptr;
    }
    auto * const * st = std::get_if<const SourceTypeDef *>(&*decl);
    return st ? *st : nullptr;
  }

  [[nodiscard]] const EventStubDef * stub(const Identifier & name) const
  {
    auto decl = ast_.find(name.str());
    if (!decl) {
      return nullptr;
    }
    auto * const * s = std::get_if<const EventStubDef *>(&*decl);
    return s ? *s : nullptr;
  }

  void check_config()
  {
    std::set<std::string> seen;
    for (const auto & inst : config_.instances) {
      if (!seen.insert(inst.name.str()).second) {
        diags_.push_back(error(
          codes::kDupName, "source instance " + quote_name(inst.name.str()) + " is configured twice",
          inst.name.str()));
      }
      if (!source_type(inst.type_name)) {
        diags_.push_back(error(
          codes::kUnresolvedName,
          "source instance " + quote_name(inst.name.str()) + " has undeclared source type " +
            quote_name(inst.type_name.str()),
          inst.name.str()));
      }
    }
  }

  void check_stubs()
  {
    for (const auto & s : ast_.stubs()) {
      if (!source_type(s.source_type)) {
        diags_.push_back(error(
          codes::kUnresolvedName,
          "event stub refers to undeclared source type " + quote_name(s.source_type.str()),
          s.name.str()));
      }
      check_percentages(s.measurements, s.name, diags_);
    }
  }

  /// The source type an event is bound to, or nullopt if its source does not resolve.
  std::optional<Identifier> bound_type(const EventDef & ev)
  {
    if (const auto * inst = std::get_if<InstanceSource>(&ev.source)) {
      const auto * configured = config_.find(inst->name.str());
      if (!configured) {
        diags_.push_back(error(
          codes::kUnresolvedName, "unknown source instance " + quote_name(inst->name.str()),
          ev.name.str()));
        return std::nullopt;
      }
      return configured->type_name;
    }
    const auto & type_name = std::get<TypeSource>(ev.source).type_name;
    if (!source_type(type_name)) {
      diags_.push_back(error(
        codes::kUnresolvedName, "OFTYPE refers to undeclared source type " + quote_name(type_name.str()),
        ev.name.str()));
      return std::nullopt;
    }
    return type_name;
  }

  std::optional<MergedBody> merge_body(const EventDef & ev, const std::optional<Identifier> & type)
  {
    const std::size_t errors_before = diags_.size();
    MergedBody body;
    const EventStubDef * base = nullptr;

    if (ev.implements) {
      if (*ev.implements == ev.name) {
        diags_.push_back(error(codes::kCycle, "event implements itself", ev.name.str()));
        return std::nullopt;
      }
      base = stub(*ev.implements);
      if (!base) {
        diags_.push_back(error(
          codes::kUnresolvedName, "implemented event stub " + quote_name(ev.implements->str()) +
                                    " is not declared",
          ev.name.str()));
        return std::nullopt;
      }
      if (type && *type != base->source_type) {
        diags_.push_back(error(
          codes::kSourceTypeMismatch,
          "source is of type " + quote_name(type->str()) + " but stub " + quote_name(base->name.str()) +
            " requires sourceType " + quote_name(base->source_type.str()),
          ev.name.str()));
      }
      body.measurements = base->measurements;
      body.actions = base->actions;
    }

    for (const auto & impl : ev.implementation) {
      auto it = find_measurement(body.measurements, impl.name);
      if (it == body.measurements.end()) {
        diags_.push_back(error(
          codes::kUnresolvedName,
          "@Implementation names " + quote_name(impl.name.str()) + ", which stub " +
            quote_name(ev.implements->str()) + " does not declare",
          ev.name.str()));
        continue;
      }
      if (it->kind != impl.kind) {
        diags_.push_back(error(
          codes::kMeasurementKindMismatch,
          "@Implementation of " + quote_name(impl.name.str()) + " changes the measurement kind",
          ev.name.str()));
        continue;
      }
      if (!impl.constraint) {
        diags_.push_back(error(
          codes::kStubNotImplemented,
          "@Implementation of " + quote_name(impl.name.str()) + " assigns no value", ev.name.str()));
        continue;
      }
      it->constraint = impl.constraint;
    }

    for (const auto & local : ev.measurements) {
      if (!local.constraint) {
        diags_.push_back(error(
          codes::kUnconstrained, "measurement " + quote_name(local.name.str()) + " has no constraint",
          ev.name.str()));
        continue;
      }
      auto it = find_measurement(body.measurements, local.name);
      if (it != body.measurements.end()) {
        *it = local;
      } else {
        body.measurements.push_back(local);
      }
    }

    if (!ev.actions.empty()) {
      body.actions = ev.actions;
    }

    for (const auto & m : body.measurements) {
      if (!m.constraint) {
        diags_.push_back(error(
          codes::kStubNotImplemented,
          "value-truncated measurement " + quote_name(m.name.str()) + " of stub " +
            quote_name(base ? base->name.str() : std::string{}) + " is not implemented",
          ev.name.str()));
      }
    }
    check_percentages(body.measurements, ev.name, diags_);

    const bool failed = std::any_of(
      diags_.begin() + static_cast<std::ptrdiff_t>(errors_before), diags_.end(),
      [](const Diagnostic & d) { return d.severity == Severity::Error; });
    if (failed) {
      return std::nullopt;
    }
    return body;
  }

  void resolve_event(const EventDef & ev)
  {
    auto type = bound_type(ev);
    auto body = merge_body(ev, type);
    if (!type || !body) {
      return;
    }

    if (const auto * inst = std::get_if<InstanceSource>(&ev.source)) {
      out_.atomic_events.push_back(
        ResolvedEvent{ev.name, inst->name, body->measurements, body->actions});
      return;
    }

    std::vector<Identifier> expanded;
    for (const auto & inst : config_.instances) {
      if (inst.type_name != *type) {
        continue;
      }
      Identifier generated(ev.name.str() + "__" + inst.name.str());
      if (ast_.contains(generated.str()) || out_.provenance.count(generated.str()) != 0) {
        diags_.push_back(error(
          codes::kDupName,
          "generated event name " + quote_name(generated.str()) + " collides with another declaration",
          ev.name.str()));
        continue;
      }
      out_.provenance.emplace(generated.str(), Provenance{ev.name, ev.implements, inst.name});
      out_.atomic_events.push_back(
        ResolvedEvent{generated, inst.name, body->measurements, body->actions});
      expanded.push_back(std::move(generated));
    }
    if (expanded.empty()) {
      diags_.push_back(warning(
        codes::kOfTypeEmpty, "no configured instances of source type " + quote_name(type->str()),
        ev.name.str()));
    }
    out_.aliases.emplace(ev.name.str(), std::move(expanded));
  }

  [[nodiscard]] bool is_event_name(const std::string & name) const
  {
    if (out_.aliases.count(name) != 0) {
      return true;
    }
    auto decl = ast_.find(name);
    return decl && (std::holds_alternative<const EventDef *>(*decl) ||
                    std::holds_alternative<const ComplexEventDef *>(*decl));
  }

  /// Every operand of CONCURRENT_T must be able to yield interval occurrences. Atomic
  /// events are intervalized and composites span their constituents, so no current
  /// construct is point-only.
  static bool can_produce_intervals(const OperatorExpr &) { return true; }

  void check_pattern(const ComplexEventDef & ce, const OperatorExpr & e)
  {
    if (e.is_ref()) {
      if (!is_event_name(e.event->str())) {
        diags_.push_back(error(
          codes::kUnresolvedName, quote_name(e.event->str()) + " does not name an event",
          ce.name.str()));
      }
      return;
    }
    for (const auto & operand : e.operands) {
      if (e.kind == OperatorKind::Concurrent && e.duration && !can_produce_intervals(operand)) {
        diags_.push_back(error(
          codes::kConcurrentTPoint, "CONCURRENT_T operand can only produce point events",
          ce.name.str()));
      }
      check_pattern(ce, operand);
    }
  }

  void resolve_complex_events()
  {
    const auto & all = ast_.complex_events();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < all.size(); ++i) {
      index.emplace(all[i].name.str(), i);
      check_pattern(all[i], all[i].pattern);
    }

    enum class Mark { None, Active, Done };
    std::vector<Mark> marks(all.size(), Mark::None);
    std::vector<std::size_t> order;

    std::function<void(std::size_t)> visit = [&](std::size_t i) {
      marks[i] = Mark::Active;
      std::vector<Identifier> refs;
      collect_refs(all[i].pattern, refs);
      for (const auto & ref : refs) {
        auto it = index.find(ref.str());
        if (it == index.end()) {
          continue;
        }
        if (marks[it->second] == Mark::Active) {
          diags_.push_back(error(
            codes::kCycle,
            "complex event " + quote_name(all[i].name.str()) + " depends on itself through " +
              quote_name(ref.str()),
            all[i].name.str()));
        } else if (marks[it->second] == Mark::None) {
          visit(it->second);
        }
      }
      marks[i] = Mark::Done;
      order.push_back(i);
    };
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (marks[i] == Mark::None) {
        visit(i);
      }
    }
    for (std::size_t i : order) {
      out_.complex_events.push_back(all[i]);
    }
  }

  const ModelAst & ast_;
  const StructuralConfig & config_;
  CompiledModel out_;
  std::vector<Diagnostic> diags_;
};

// ----------------------------------------------------------------------------
// Truncation
// ----------------------------------------------------------------------------

Outcome<EventStubDef> as_stub(const TruncationInput & input, const StructuralConfig & config)
{
  if (const auto * s = std::get_if<EventStubDef>(&input)) {
    return Outcome<EventStubDef>::success(*s);
  }
  const auto & ev = std::get<EventDef>(input);
  std::optional<Identifier> type;
  if (const auto * inst = std::get_if<InstanceSource>(&ev.source)) {
    const auto * configured = config.find(inst->name.str());
    if (!configured) {
      return Outcome<EventStubDef>::failure(error(
        codes::kUnresolvedName, "unknown source instance " + quote_name(inst->name.str()),
        ev.name.str()));
    }
    type = configured->type_name;
  } else {
    type = std::get<TypeSource>(ev.source).type_name;
  }

  EventStubDef out{ev.name, *type, std::nullopt, ev.measurements, ev.actions};
  for (const auto & impl : ev.implementation) {
    if (find_measurement(out.measurements, impl.name) == out.measurements.end()) {
      out.measurements.push_back(impl);
    }
  }
  return Outcome<EventStubDef>::success(std::move(out));
}

}  // namespace

const SourceInstance * StructuralConfig::find(std::string_view name) const
{
  auto it = std::find_if(instances.begin(), instances.end(), [&](const SourceInstance & s) {
    return s.name.str() == name;
  });
  return it == instances.end() ? nullptr : &*it;
}

Outcome<StructuralConfig> load_structural_config(std::string_view json_text)
{
  using Result = Outcome<StructuralConfig>;
  if (json_text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    return Result::success({});
  }
  const json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    return Result::failure(error(codes::kConfigParse, "configuration is not a JSON object"));
  }
  auto instances = doc.find("instances");
  if (instances == doc.end() || !instances->is_array()) {
    return Result::failure(error(codes::kConfigParse, "configuration lacks an \"instances\" array"));
  }
  StructuralConfig config;
  std::vector<Diagnostic> diags;
  for (const auto & entry : *instances) {
    if (
      !entry.is_object() || !entry.contains("name") || !entry.contains("type") ||
      !entry["name"].is_string() || !entry["type"].is_string()) {
      diags.push_back(error(
        codes::kConfigParse, "instance records need string fields \"name\" and \"type\""));
      continue;
    }
    const auto name = entry["name"].get<std::string>();
    const auto type = entry["type"].get<std::string>();
    if (!is_identifier(name) || !is_identifier(type)) {
      diags.push_back(error(codes::kConfigParse, "instance " + quote_name(name) + " or its type " +
                                                   quote_name(type) + " is not an identifier",
                            name));
      continue;
    }
    config.instances.push_back(SourceInstance{Identifier(name), Identifier(type)});
  }
  if (has_errors(diags)) {
    return Result::failure(std::move(diags));
  }
  return Result::success(std::move(config));
}

const ResolvedEvent * CompiledModel::find_atomic(std::string_view name) const
{
  auto it = std::find_if(atomic_events.begin(), atomic_events.end(), [&](const ResolvedEvent & e) {
    return e.name.str() == name;
  });
  return it == atomic_events.end() ? nullptr : &*it;
}

const ComplexEventDef * CompiledModel::find_complex(std::string_view name) const
{
  auto it = std::find_if(
    complex_events.begin(), complex_events.end(),
    [&](const ComplexEventDef & e) { return e.name.str() == name; });
  return it == complex_events.end() ? nullptr : &*it;
}

Outcome<CompiledModel> resolve(const ModelAst & ast, const StructuralConfig & config)
{
  return Resolver(ast, config).run();
}

Outcome<ModelAst> merge_models(const std::vector<ModelAst> & models)
{
  ModelAst merged;
  std::vector<Diagnostic> diags;
  auto add_all = [&](const ModelAst & from, const auto & decls) {
    for (const auto & decl : decls) {
      try {
        merged.add(decl);
        if (auto loc = from.location_of(decl.name.str())) {
          merged.set_location(decl.name.str(), *loc);
        }
      } catch (const DuplicateNameError & e) {
        diags.push_back(error(codes::kDupName, e.what(), e.name()));
      }
    }
  };
  for (const auto & m : models) {
    add_all(m, m.source_types());
    add_all(m, m.stubs());
    add_all(m, m.events());
    add_all(m, m.complex_events());
  }
  if (!diags.empty()) {
    return Outcome<ModelAst>::failure(std::move(diags));
  }
  return Outcome<ModelAst>::success(std::move(merged));
}

Outcome<EventStubDef> truncate_structural(
  const TruncationInput & input, std::string_view element, const StructuralConfig & config)
{
  auto base = as_stub(input, config);
  if (!base.ok()) {
    return base;
  }
  EventStubDef & s = *base.value;
  auto m = std::find_if(s.measurements.begin(), s.measurements.end(), [&](const MeasurementDecl & d) {
    return d.name.str() == element;
  });
  if (m != s.measurements.end()) {
    s.measurements.erase(m);
    return base;
  }
  auto a = std::find_if(s.actions.begin(), s.actions.end(), [&](const ActionDecl & d) {
    return d.action_type.str() == element;
  });
  if (a != s.actions.end()) {
    s.actions.erase(a);
    return base;
  }
  return Outcome<EventStubDef>::failure(error(
    codes::kNoSuchElement, "no measurement or action named " + quote_name(element), s.name.str()));
}

Outcome<EventStubDef> truncate_value(
  const TruncationInput & input, std::string_view element, const StructuralConfig & config)
{
  auto base = as_stub(input, config);
  if (!base.ok()) {
    return base;
  }
  EventStubDef & s = *base.value;
  auto m = std::find_if(s.measurements.begin(), s.measurements.end(), [&](const MeasurementDecl & d) {
    return d.name.str() == element;
  });
  if (m == s.measurements.end()) {
    return Outcome<EventStubDef>::failure(
      error(codes::kNoSuchElement, "no measurement named " + quote_name(element), s.name.str()));
  }
  if (!m->constraint) {
    return Outcome<EventStubDef>::failure(error(
      codes::kAlreadyStub, "measurement " + quote_name(element) + " carries no value", s.name.str()));
  }
  m->constraint.reset();
  return base;
}

}  // namespace cedl
