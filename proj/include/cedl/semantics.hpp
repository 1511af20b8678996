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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cedl/diagnostics.hpp"
#include "cedl/model.hpp"

namespace cedl
{

struct SourceInstance
{
  Identifier name;
  Identifier type_name;

  friend bool operator==(const SourceInstance &, const SourceInstance &) = default;
};

/// The concrete event sources of the monitored system.
struct StructuralConfig
{
  std::vector<SourceInstance> instances;

  [[nodiscard]] const SourceInstance * find(std::string_view name) const;
};

/// Reads `{"instances":[{"name":"ws1","type":"WebServer"}, ...]}`. Empty text is an
/// empty configuration.
Outcome<StructuralConfig> load_structural_config(std::string_view json_text);

/// An atomic event bound to one concrete source, with every measurement constrained.
struct ResolvedEvent
{
  Identifier name;
  Identifier source_instance;
  std::vector<MeasurementDecl> measurements;
  std::vector<ActionDecl> actions;

  friend bool operator==(const ResolvedEvent &, const ResolvedEvent &) = default;
};

struct Provenance
{
  Identifier origin_event;
  std::optional<Identifier> stub;
  Identifier instance;

  friend bool operator==(const Provenance &, const Provenance &) = default;
};

struct CompiledModel
{
  std::vector<SourceTypeDef> source_types;
  std::vector<ResolvedEvent> atomic_events;
  /// Sorted so that every complex event follows the complex events it references.
  std::vector<ComplexEventDef> complex_events;
  /// Generated `<Event>__<Instance>` name -> where it came from.
  std::map<std::string, Provenance> provenance;
  /// OFTYPE event name -> its generated events, in configuration order. A pattern Ref
  /// to such a name stands for the union of their occurrences.
  std::map<std::string, std::vector<Identifier>> aliases;

  [[nodiscard]] const ResolvedEvent * find_atomic(std::string_view name) const;
  [[nodiscard]] const ComplexEventDef * find_complex(std::string_view name) const;

  friend bool operator==(const CompiledModel &, const CompiledModel &) = default;
};

/// Validates `ast` against `config` and produces the executable model: OFTYPE events
/// are expanded per instance, stub implementations are merged, names are resolved and
/// complex events are ordered by dependency.
Outcome<CompiledModel> resolve(const ModelAst & ast, const StructuralConfig & config);

/// Concatenates several parsed files into one model; clashing names yield E_DUP_NAME.
Outcome<ModelAst> merge_models(const std::vector<ModelAst> & models);

using TruncationInput = std::variant<EventDef, EventStubDef>;

/// Removes the measurement or action named `element`. The source is generalized to
/// its type, so the result is always a stub (keeping the input's name).
Outcome<EventStubDef> truncate_structural(
  const TruncationInput & input, std::string_view element, const StructuralConfig & config);

/// Removes the constraint of measurement `element`, leaving a measurement stub.
Outcome<EventStubDef> truncate_value(
  const TruncationInput & input, std::string_view element, const StructuralConfig & config);

}  // namespace cedl
