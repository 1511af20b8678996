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
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cedl/diagnostics.hpp"
#include "cedl/model.hpp"

namespace cedl
{

// Generic-ontology concepts. Every concept has a name unique across the generic document.

struct SourceTypeConcept
{
  std::string name;
  TopologyElementKind kind = TopologyElementKind::TopologyElement;
  friend bool operator==(const SourceTypeConcept &, const SourceTypeConcept &) = default;
};

struct QuantifierConcept
{
  std::string name;
  friend bool operator==(const QuantifierConcept &, const QuantifierConcept &) = default;
};

/// Links a source type with a quantifier; something that can actually be measured.
struct MetricConcept
{
  std::string name;
  std::string source_type;
  std::string quantifier;
  friend bool operator==(const MetricConcept &, const MetricConcept &) = default;
};

struct RangeConcept
{
  std::string name;
  double lo = 0;
  double hi = 0;
  friend bool operator==(const RangeConcept &, const RangeConcept &) = default;
};

/// A qualitative indicator: a metric restricted to a range.
struct QualifierConcept
{
  std::string name;
  std::string metric;
  std::string range;
  friend bool operator==(const QualifierConcept &, const QualifierConcept &) = default;
};

/// Directed association between two source types.
struct ComplexRelationshipConcept
{
  std::string name;
  std::string from_type;
  std::string to_type;
  friend bool operator==(const ComplexRelationshipConcept &, const ComplexRelationshipConcept &) =
    default;
};

/// Undirected grouping of source types.
struct ComplexGroupConcept
{
  std::string name;
  std::vector<std::string> member_types;
  friend bool operator==(const ComplexGroupConcept &, const ComplexGroupConcept &) = default;
};

/// A high-level goal attached to a group. The rule text is kept verbatim.
struct ConstraintConcept
{
  std::string name;
  std::string group;
  std::string rule;
  friend bool operator==(const ConstraintConcept &, const ConstraintConcept &) = default;
};

using GenericConcept = std::variant<
  SourceTypeConcept, QuantifierConcept, MetricConcept, RangeConcept, QualifierConcept,
  ComplexRelationshipConcept, ComplexGroupConcept, ConstraintConcept>;

const std::string & concept_name(const GenericConcept & c);
/// The `kind` tag used in generic.json ("SourceType", "Metric", ...).
std::string_view concept_kind(const GenericConcept & c);

struct DomainConcept
{
  std::string name;
  std::map<std::string, std::string> attributes;
  friend bool operator==(const DomainConcept &, const DomainConcept &) = default;
};

struct MappingEntry
{
  std::string domain_name;
  std::string generic_name;
  friend bool operator==(const MappingEntry &, const MappingEntry &) = default;
};

struct KnowledgeBase
{
  std::vector<GenericConcept> generic;
  std::vector<DomainConcept> domain;
  std::vector<MappingEntry> mapping;

  [[nodiscard]] const GenericConcept * find_generic(std::string_view name) const;
  [[nodiscard]] const DomainConcept * find_domain(std::string_view name) const;

  template <typename Concept>
  [[nodiscard]] const Concept * find(std::string_view name) const
  {
    const auto * c = find_generic(name);
    return c ? std::get_if<Concept>(c) : nullptr;
  }

  template <typename Concept>
  [[nodiscard]] std::vector<const Concept *> all() const
  {
    std::vector<const Concept *> out;
    for (const auto & c : generic) {
      if (const auto * typed = std::get_if<Concept>(&c)) {
        out.push_back(typed);
      }
    }
    return out;
  }
};

/// Loads and validates the three documents (generic.json, domain.json, mapping.json).
/// Blank text counts as an empty array.
Outcome<KnowledgeBase> load_kb(
  std::string_view generic_doc, std::string_view domain_doc, std::string_view mapping_doc);

struct JoinResult
{
  std::vector<std::pair<DomainConcept, GenericConcept>> pairs;  // mapping order
  std::vector<DomainConcept> unmapped;                           // domain order
};

JoinResult join(const KnowledgeBase & kb);

/// Generates `SourceType` declarations for every source type and one event stub per
/// qualifier, e.g. `critical(m1(Webserver, load), r1(0.9, 1))` becomes
/// `EventStub LoadWebserverCritical { sourceType Webserver characteristic Critical
/// ScalarMeasurement WebserverCritical In (0.9, 1) }`.
Outcome<ModelAst> expand_to_cedl(const KnowledgeBase & kb);

/// Upper-cases the first character.
std::string capitalize(std::string_view text);

/// One report line per structural concept (relationships, groups, constraints).
std::vector<std::string> structure_summary(const KnowledgeBase & kb);

}  // namespace cedl
