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

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cedl
{

// ============================================================================
// Identifiers
// ============================================================================

bool is_identifier(std::string_view text);

/// Any name in a model: `[A-Za-z_][A-Za-z0-9_]*`.
class Identifier
{
public:
  /// Throws std::invalid_argument when `text` is not a valid identifier.
  explicit Identifier(std::string text);

  [[nodiscard]] const std::string & str() const noexcept { return text_; }

  friend bool operator==(const Identifier &, const Identifier &) = default;
  friend auto operator<=>(const Identifier &, const Identifier &) = default;

private:
  std::string text_;
};

std::ostream & operator<<(std::ostream & os, const Identifier & id);

// ============================================================================
// Topology
// ============================================================================

/// The CIM-derived topology tree that source types extend.
enum class TopologyElementKind { TopologyElement, PhysicalElement, LogicalElement };

std::optional<TopologyElementKind> parent(TopologyElementKind kind);
std::string_view to_string(TopologyElementKind kind);
std::optional<TopologyElementKind> topology_kind_from_string(std::string_view text);

// ============================================================================
// Measurements and constraints
// ============================================================================

enum class MeasurementKind { Percentage, Scalar };

std::string_view to_string(MeasurementKind kind);

struct Minimum
{
  double value = 0;
  friend bool operator==(const Minimum &, const Minimum &) = default;
};

struct Maximum
{
  double value = 0;
  friend bool operator==(const Maximum &, const Maximum &) = default;
};

/// Closed range [lo, hi]; lo < hi.
struct In
{
  double lo = 0;
  double hi = 0;
  friend bool operator==(const In &, const In &) = default;
};

using ValueConstraint = std::variant<Minimum, Maximum, In>;

bool satisfies(const ValueConstraint & constraint, double value);

struct MeasurementDecl
{
  MeasurementKind kind = MeasurementKind::Scalar;
  Identifier name;
  std::optional<ValueConstraint> constraint;  // absent: value-truncated stub measurement

  [[nodiscard]] bool is_stub() const noexcept { return !constraint.has_value(); }
  friend bool operator==(const MeasurementDecl &, const MeasurementDecl &) = default;
};

struct ActionDecl
{
  Identifier action_type;
  friend bool operator==(const ActionDecl &, const ActionDecl &) = default;
};

// ============================================================================
// Declarations
// ============================================================================

struct InstanceSource
{
  Identifier name;
  friend bool operator==(const InstanceSource &, const InstanceSource &) = default;
};

/// `source OFTYPE T`
struct TypeSource
{
  Identifier type_name;
  friend bool operator==(const TypeSource &, const TypeSource &) = default;
};

using SourceRef = std::variant<InstanceSource, TypeSource>;

struct EventDef
{
  Identifier name;
  SourceRef source;
  std::vector<MeasurementDecl> measurements;
  std::vector<ActionDecl> actions;
  std::optional<Identifier> implements;
  std::vector<MeasurementDecl> implementation;  // the @Implementation block

  friend bool operator==(const EventDef &, const EventDef &) = default;
};

struct EventStubDef
{
  Identifier name;
  Identifier source_type;
  std::optional<Identifier> characteristic;
  std::vector<MeasurementDecl> measurements;
  std::vector<ActionDecl> actions;

  friend bool operator==(const EventStubDef &, const EventStubDef &) = default;
};

enum class OperatorKind { Ref, Exists, Follows, Concurrent };

/// Time qualifier of CONCURRENT_T (`T:Minimum τ` / `T:Maximum τ`).
struct DurationBound
{
  enum class Kind { Minimum, Maximum };
  Kind kind = Kind::Minimum;
  double seconds = 0;

  friend bool operator==(const DurationBound &, const DurationBound &) = default;
};

/// A node of a complex-event pattern.
///
/// `window` is the EXISTS `.timewin(τ)` or the FOLLOWS_T span bound; `duration`
/// is the CONCURRENT_T overlap bound. Composite nodes carry at least two operands.
struct OperatorExpr
{
  OperatorKind kind = OperatorKind::Ref;
  std::optional<Identifier> event;  // set iff kind == Ref
  std::vector<OperatorExpr> operands;
  std::optional<double> window;
  std::optional<DurationBound> duration;

  static OperatorExpr ref(Identifier name);
  static OperatorExpr exists(std::vector<OperatorExpr> operands, std::optional<double> timewin = {});
  static OperatorExpr follows(std::vector<OperatorExpr> operands, std::optional<double> window = {});
  static OperatorExpr concurrent(
    std::vector<OperatorExpr> operands, std::optional<DurationBound> duration = {});

  [[nodiscard]] bool is_ref() const noexcept { return kind == OperatorKind::Ref; }

  friend bool operator==(const OperatorExpr &, const OperatorExpr &) = default;
};

/// Keyword spelling of a composite node: EXISTS, FOLLOWS, FOLLOWS_T, CONCURRENT, CONCURRENT_T.
std::string_view operator_keyword(const OperatorExpr & expr);

/// Every event name referenced anywhere in the pattern, in pre-order.
void collect_refs(const OperatorExpr & expr, std::vector<Identifier> & out);

struct ComplexEventDef
{
  Identifier name;
  OperatorExpr pattern;

  friend bool operator==(const ComplexEventDef &, const ComplexEventDef &) = default;
};

struct SourceTypeDef
{
  Identifier name;
  TopologyElementKind extends = TopologyElementKind::TopologyElement;

  friend bool operator==(const SourceTypeDef &, const SourceTypeDef &) = default;
};

// ============================================================================
// ModelAst
// ============================================================================

class DuplicateNameError : public std::runtime_error
{
public:
  explicit DuplicateNameError(const std::string & name)
  : std::runtime_error("duplicate declaration name '" + name + "'"), name_(name)
  {
  }
  [[nodiscard]] const std::string & name() const noexcept { return name_; }

private:
  std::string name_;
};

using DeclRef = std::variant<
  const SourceTypeDef *, const EventStubDef *, const EventDef *, const ComplexEventDef *>;

/// Parsed declarations, grouped by kind in source order. Names are unique across
/// all four groups; the add_* members throw DuplicateNameError otherwise.
class ModelAst
{
public:
  void add(SourceTypeDef decl);
  void add(EventStubDef decl);
  void add(EventDef decl);
  void add(ComplexEventDef decl);

  [[nodiscard]] bool contains(std::string_view name) const;
  [[nodiscard]] std::optional<DeclRef> find(std::string_view name) const;
  [[nodiscard]] bool empty() const noexcept;

  [[nodiscard]] const std::vector<SourceTypeDef> & source_types() const noexcept
  {
    return source_types_;
  }
  [[nodiscard]] const std::vector<EventStubDef> & stubs() const noexcept { return stubs_; }
  [[nodiscard]] const std::vector<EventDef> & events() const noexcept { return events_; }
  [[nodiscard]] const std::vector<ComplexEventDef> & complex_events() const noexcept
  {
    return complex_events_;
  }

  /// Line/column of a declaration's name token, when it came from source text.
  /// Not part of structural equality.
  struct Location
  {
    std::size_t line = 1;
    std::size_t column = 1;
  };
  void set_location(const std::string & name, Location loc) { locations_[name] = loc; }
  [[nodiscard]] std::optional<Location> location_of(const std::string & name) const;

  friend bool operator==(const ModelAst & a, const ModelAst & b)
  {
    return a.source_types_ == b.source_types_ && a.stubs_ == b.stubs_ && a.events_ == b.events_ &&
           a.complex_events_ == b.complex_events_;
  }

private:
  enum class Slot { SourceType, Stub, Event, ComplexEvent };
  void claim(const Identifier & name, Slot slot, std::size_t position);

  std::vector<SourceTypeDef> source_types_;
  std::vector<EventStubDef> stubs_;
  std::vector<EventDef> events_;
  std::vector<ComplexEventDef> complex_events_;
  std::map<std::string, std::pair<Slot, std::size_t>, std::less<>> index_;
  std::map<std::string, Location, std::less<>> locations_;
};

std::optional<DeclRef> lookup(const ModelAst & model, std::string_view name);

}  // namespace cedl

template <>
struct std::hash<cedl::Identifier>
{
  std::size_t operator()(const cedl::Identifier & id) const noexcept
  {
    return std::hash<std::string>{}(id.str());
  }
};
