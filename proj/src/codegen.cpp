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

#include "cedl/codegen.hpp"

#include "cedl/parser.hpp"

namespace cedl
{

namespace
{

std::string constraint_clause(const MeasurementDecl & m)
{
  const std::string & field = m.name.str();
  const auto & c = *m.constraint;
  if (const auto * min = std::get_if<Minimum>(&c)) {
    return field + " >= " + format_number(min->value);
  }
  if (const auto * max = std::get_if<Maximum>(&c)) {
    return field + " <= " + format_number(max->value);
  }
  const auto & in = std::get<In>(c);
  return field + " between " + format_number(in.lo) + " and " + format_number(in.hi);
}

GeneratedUnit filter_statement(const ResolvedEvent & ev)
{
  std::string text = "insert into " + ev.name.str() + " select * from Observation(source='" +
                     ev.source_instance.str() + "'";
  for (const auto & m : ev.measurements) {
    text += ", " + constraint_clause(m);
  }
  text += ")";
  return {ev.name, std::move(text), true, std::nullopt};
}

std::string within(double seconds) { return " where timer:within(" + format_number(seconds) + " sec)"; }

class PatternWriter
{
public:
  explicit PatternWriter(const CompiledModel & model) : model_(model) {}

  /// Pattern expression for `e`, or nullopt with `why_` set.
  std::optional<std::string> write(const OperatorExpr & e, bool nested)
  {
    switch (e.kind) {
      case OperatorKind::Ref:
        return stream(e.event->str());
      case OperatorKind::Concurrent:
        why_ = std::string(operator_keyword(e)) +
               " needs interval concurrency (overlap) semantics, which the generated pattern "
               "dialect cannot express; evaluate this event with the native engine";
        return std::nullopt;
      case OperatorKind::Exists:
      case OperatorKind::Follows:
        break;
    }
    const char * glue = e.kind == OperatorKind::Follows ? " -> " : " and ";
    std::string body;
    for (std::size_t i = 0; i < e.operands.size(); ++i) {
      auto part = write(e.operands[i], true);
      if (!part) {
        return std::nullopt;
      }
      body += (i == 0 ? "" : glue) + *part;
    }
    if (e.kind == OperatorKind::Exists) {
      body = "(" + body + ")";
    }
    if (e.window) {
      body += within(*e.window);
    }
    if (nested && (e.kind == OperatorKind::Follows || e.window)) {
      body = "(" + body + ")";
    }
    return body;
  }

  [[nodiscard]] const std::string & why() const { return why_; }

private:
  std::optional<std::string> stream(const std::string & name)
  {
    auto alias = model_.aliases.find(name);
    if (alias == model_.aliases.end()) {
      return name;
    }
    if (alias->second.empty()) {
      why_ = "OFTYPE event " + name + " has no configured instances";
      return std::nullopt;
    }
    if (alias->second.size() == 1) {
      return alias->second.front().str();
    }
    std::string out = "(";
    for (std::size_t i = 0; i < alias->second.size(); ++i) {
      out += (i == 0 ? "" : " or ") + alias->second[i].str();
    }
    return out + ")";
  }

  const CompiledModel & model_;
  std::string why_;
};

GeneratedUnit pattern_statement(const CompiledModel & model, const ComplexEventDef & ce)
{
  PatternWriter writer(model);
  if (auto pattern = writer.write(ce.pattern, false)) {
    return {
      ce.name, "insert into " + ce.name.str() + " select * from pattern [every " + *pattern + "]",
      true, std::nullopt};
  }
  return {ce.name, "-- unsupported: " + writer.why(), false, writer.why()};
}

}  // namespace

std::vector<GeneratedUnit> generate(const CompiledModel & model)
{
  std::vector<GeneratedUnit> units;
  units.reserve(model.atomic_events.size() + model.complex_events.size());
  for (const auto & ev : model.atomic_events) {
    units.push_back(filter_statement(ev));
  }
  for (const auto & ce : model.complex_events) {
    units.push_back(pattern_statement(model, ce));
  }
  return units;
}

std::string render_epl(const std::vector<GeneratedUnit> & units)
{
  std::string out;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (i > 0) {
      out += '\n';
    }
    out += "-- name: " + units[i].statement_name.str() + "\n" + units[i].text + "\n";
  }
  return out;
}

}  // namespace cedl
