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

#include "cedl/model.hpp"

#include <cmath>

namespace cedl
{

bool is_identifier(std::string_view text)
{
  if (text.empty()) {
    return false;
  }
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(text.front())) {
    return false;
  }
  for (char c : text) {
    if (!alpha(c) && !digit(c)) {
      return false;
    }
  }
  return true;
}

Identifier::Identifier(std::string text) : text_(std::move(text))
{
  if (!is_identifier(text_)) {
    throw std::invalid_argument("invalid identifier '" + text_ + "'");
  }
}

std::ostream & operator<<(std::ostream & os, const Identifier & id) { return os << id.str(); }

std::optional<TopologyElementKind> parent(TopologyElementKind kind)
{
  switch (kind) {
    case TopologyElementKind::TopologyElement:
      return std::nullopt;
    case TopologyElementKind::PhysicalElement:
    case TopologyElementKind::LogicalElement:
      return TopologyElementKind::TopologyElement;
  }
  return std::nullopt;
}

std::string_view to_string(TopologyElementKind kind)
{
  switch (kind) {
    case TopologyElementKind::TopologyElement:
      return "TopologyElement";
    case TopologyElementKind::PhysicalElement:
      return "PhysicalElement";
    case TopologyElementKind::LogicalElement:
      return "LogicalElement";
  }
  return "TopologyElement";
}

std::optional<TopologyElementKind> topology_kind_from_string(std::string_view text)
{
  for (auto kind :
       {TopologyElementKind::TopologyElement, TopologyElementKind::PhysicalElement,
        TopologyElementKind::LogicalElement}) {
    if (to_string(kind) == text) {
      return kind;
    }
  }
  return std::nullopt;
}

std::string_view to_string(MeasurementKind kind)
{
  return kind == MeasurementKind::Percentage ? "PercentageMeasurement" : "ScalarMeasurement";
}

bool satisfies(const ValueConstraint & constraint, double value)
{
  if (!std::isfinite(value)) {
    return false;
  }
  if (const auto * min = std::get_if<Minimum>(&constraint)) {
    return value >= min->value;
  }
  if (const auto * max = std::get_if<Maximum>(&constraint)) {
    return value <= max->value;
  }
  const auto & in = std::get<In>(constraint);
  return in.lo <= value && value <= in.hi;
}

OperatorExpr OperatorExpr::ref(Identifier name)
{
  OperatorExpr e;
  e.kind = OperatorKind::Ref;
  e.event = std::move(name);
  return e;
}

OperatorExpr OperatorExpr::exists(std::vector<OperatorExpr> operands, std::optional<double> timewin)
{
  OperatorExpr e;
  e.kind = OperatorKind::Exists;
  e.operands = std::move(operands);
  e.window = timewin;
  return e;
}

OperatorExpr OperatorExpr::follows(std::vector<OperatorExpr> operands, std::optional<double> window)
{
  OperatorExpr e;
  e.kind = OperatorKind::Follows;
  e.operands = std::move(operands);
  e.window = window;
  return e;
}

OperatorExpr OperatorExpr::concurrent(
  std::vector<OperatorExpr> operands, std::optional<DurationBound> duration)
{
  OperatorExpr e;
  e.kind = OperatorKind::Concurrent;
  e.operands = std::move(operands);
  e.duration = duration;
  return e;
}

std::string_view operator_keyword(const OperatorExpr & expr)
{
  switch (expr.kind) {
    case OperatorKind::Exists:
      return "EXISTS";
    case OperatorKind::Follows:
      return expr.window ? "FOLLOWS_T" : "FOLLOWS";
    case OperatorKind::Concurrent:
      return expr.duration ? "CONCURRENT_T" : "CONCURRENT";
    case OperatorKind::Ref:
      break;
  }
  return "";
}

void collect_refs(const OperatorExpr & expr, std::vector<Identifier> & out)
{
  if (expr.is_ref()) {
    out.push_back(*expr.event);
    return;
  }
  for (const auto & operand : expr.operands) {
    collect_refs(operand, out);
  }
}

// ----------------------------------------------------------------------------
// ModelAst
// ----------------------------------------------------------------------------

void ModelAst::claim(const Identifier & name, Slot slot, std::size_t position)
{
  if (index_.count(name.str()) != 0) {
    throw DuplicateNameError(name.str());
  }
  index_.emplace(name.str(), std::make_pair(slot, position));
}

void ModelAst::add(SourceTypeDef decl)
{
  claim(decl.name, Slot::SourceType, source_types_.size());
  source_types_.push_back(std::move(decl));
}

void ModelAst::add(EventStubDef decl)
{
  claim(decl.name, Slot::Stub, stubs_.size());
  stubs_.push_back(std::move(decl));
}

void ModelAst::add(EventDef decl)
{
  claim(decl.name, Slot::Event, events_.size());
  events_.push_back(std::move(decl));
}

void ModelAst::add(ComplexEventDef decl)
{
  claim(decl.name, Slot::ComplexEvent, complex_events_.size());
  complex_events_.push_back(std::move(decl));
}

bool ModelAst::contains(std::string_view name) const { return index_.find(name) != index_.end(); }

bool ModelAst::empty() const noexcept { return index_.empty(); }

std::optional<DeclRef> ModelAst::find(std::string_view name) const
{
  auto it = index_.find(name);
  if (it == index_.end()) {
    return std::nullopt;
  }
  const auto [slot, position] = it->second;
  switch (slot) {
    case Slot::SourceType:
      return DeclRef{&source_types_[position]};
    case Slot::Stub:
      return DeclRef{&stubs_[position]};
    case Slot::Event:
      return DeclRef{&events_[position]};
    case Slot::ComplexEvent:
      return DeclRef{&complex_events_[position]};
  }
  return std::nullopt;
}

std::optional<ModelAst::Location> ModelAst::location_of(const std::string & name) const
{
  auto it = locations_.find(name);
  if (it == locations_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::optional<DeclRef> lookup(const ModelAst & model, std::string_view name)
{
  return model.find(name);
}

}  // namespace cedl
