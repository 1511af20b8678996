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

#include "cedl/kb.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "cedl/parser.hpp"
#include "json.hpp"

namespace cedl
{

namespace
{

using json = nlohmann::json;

std::string quote_name(std::string_view s) { return "'" + std::string(s) + "'"; }

bool blank(std::string_view text)
{
  return text.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

/// Parses a document that must be a JSON array; blank text is an empty array.
std::optional<json> parse_array(
  std::string_view text, std::string_view which, std::vector<Diagnostic> & diags)
{
  if (blank(text)) {
    return json::array();
  }
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) {
    diags.push_back(error(codes::kKbParse, std::string(which) + " document is not a JSON array"));
    return std::nullopt;
  }
  return doc;
}

/// Reads the string field `key`, recording E_KB_PARSE when it is missing.
std::optional<std::string> string_field(
  const json & record, std::string_view key, std::string_view owner, std::vector<Diagnostic> & diags)
{
  auto it = record.find(key);
  if (it == record.end() || !it->is_string()) {
    diags.push_back(error(
      codes::kKbParse, "record " + quote_name(owner) + " needs string field \"" + std::string(key) + "\"",
      std::string(owner)));
    return std::nullopt;
  }
  return it->get<std::string>();
}

std::optional<double> number_field(
  const json & record, std::string_view key, std::string_view owner, std::vector<Diagnostic> & diags)
{
  auto it = record.find(key);
  if (it == record.end() || !it->is_number() || !std::isfinite(it->get<double>())) {
    diags.push_back(error(
      codes::kKbParse, "record " + quote_name(owner) + " needs numeric field \"" + std::string(key) + "\"",
      std::string(owner)));
    return std::nullopt;
  }
  return it->get<double>();
}

/// Names that end up in generated CEDL must be identifiers.
bool require_identifier(
  const std::string & name, std::string_view kind, std::vector<Diagnostic> & diags)
{
  if (is_identifier(name)) {
    return true;
  }
  diags.push_back(error(
    codes::kKbParse, std::string(kind) + " name " + quote_name(name) + " is not an identifier", name));
  return false;
}

std::optional<GenericConcept> parse_concept(const json & record, std::vector<Diagnostic> & diags)
{
  if (!record.is_object()) {
    diags.push_back(error(codes::kKbParse, "generic concept records must be JSON objects"));
    return std::nullopt;
  }
  auto kind = string_field(record, "kind", "<generic>", diags);
  if (!kind) {
    return std::nullopt;
  }
  auto name = string_field(record, "name", *kind, diags);
  if (!name) {
    return std::nullopt;
  }
  const std::size_t before = diags.size();
  auto str = [&](std::string_view key) { return string_field(record, key, *name, diags).value_or(""); };
  auto num = [&](std::string_view key) { return number_field(record, key, *name, diags).value_or(0); };

  std::optional<GenericConcept> out;
  if (*kind == "SourceType") {
    auto topo_text = str("topology");
    auto topo = topology_kind_from_string(topo_text);
    if (diags.size() == before && !topo) {
      diags.push_back(error(
        codes::kKbParse, "source type " + quote_name(*name) + " has unknown topology kind " +
                           quote_name(topo_text),
        *name));
    }
    require_identifier(*name, "source type", diags);
    out = SourceTypeConcept{*name, topo.value_or(TopologyElementKind::TopologyElement)};
  } else if (*kind == "Quantifier") {
    require_identifier(*name, "quantifier", diags);
    out = QuantifierConcept{*name};
  } else if (*kind == "Metric") {
    out = MetricConcept{*name, str("sourceType"), str("quantifier")};
  } else if (*kind == "Range") {
    out = RangeConcept{*name, num("lo"), num("hi")};
  } else if (*kind == "Qualifier") {
    require_identifier(*name, "qualifier", diags);
    out = QualifierConcept{*name, str("metric"), str("range")};
  } else if (*kind == "ComplexRelationship") {
    out = ComplexRelationshipConcept{*name, str("from"), str("to")};
  } else if (*kind == "ComplexGroup") {
    ComplexGroupConcept group{*name, {}};
    auto members = record.find("members");
    if (members == record.end() || !members->is_array()) {
      diags.push_back(error(
        codes::kKbParse, "record " + quote_name(*name) + " needs array field \"members\"", *name));
    } else {
      for (const auto & m : *members) {
        if (!m.is_string()) {
          diags.push_back(
            error(codes::kKbParse, "group " + quote_name(*name) + " has a non-string member", *name));
          continue;
        }
        group.member_types.push_back(m.get<std::string>());
      }
    }
    out = std::move(group);
  } else if (*kind == "Constraint") {
    out = ConstraintConcept{*name, str("group"), str("rule")};
  } else {
    diags.push_back(
      error(codes::kKbParse, "unknown generic concept kind " + quote_name(*kind), *name));
    return std::nullopt;
  }
  if (diags.size() != before) {
    return std::nullopt;
  }
  return out;
}

template <typename Concept>
void check_ref(
  const KnowledgeBase & kb, const std::string & owner, const std::string & target,
  std::string_view expected_kind, std::vector<Diagnostic> & diags)
{
  if (!kb.find<Concept>(target)) {
    diags.push_back(error(
      codes::kKbDanglingRef,
      quote_name(owner) + " refers to " + quote_name(target) + ", which is not a " +
        std::string(expected_kind),
      owner));
  }
}

void validate_references(const KnowledgeBase & kb, std::vector<Diagnostic> & diags)
{
  for (const auto & c : kb.generic) {
    if (const auto * m = std::get_if<MetricConcept>(&c)) {
      check_ref<SourceTypeConcept>(kb, m->name, m->source_type, "SourceType", diags);
      check_ref<QuantifierConcept>(kb, m->name, m->quantifier, "Quantifier", diags);
    } else if (const auto * r = std::get_if<RangeConcept>(&c)) {
      if (!(r->lo < r->hi)) {
        diags.push_back(error(
          codes::kKbBadRange,
          "range " + quote_name(r->name) + " has lo " + format_number(r->lo) + " >= hi " +
            format_number(r->hi),
          r->name));
      }
    } else if (const auto * q = std::get_if<QualifierConcept>(&c)) {
      check_ref<MetricConcept>(kb, q->name, q->metric, "Metric", diags);
      check_ref<RangeConcept>(kb, q->name, q->range, "Range", diags);
    } else if (const auto * rel = std::get_if<ComplexRelationshipConcept>(&c)) {
      check_ref<SourceTypeConcept>(kb, rel->name, rel->from_type, "SourceType", diags);
      check_ref<SourceTypeConcept>(kb, rel->name, rel->to_type, "SourceType", diags);
    } else if (const auto * g = std::get_if<ComplexGroupConcept>(&c)) {
      for (const auto & member : g->member_types) {
        check_ref<SourceTypeConcept>(kb, g->name, member, "SourceType", diags);
      }
    } else if (const auto * con = std::get_if<ConstraintConcept>(&c)) {
      check_ref<ComplexGroupConcept>(kb, con->name, con->group, "ComplexGroup", diags);
    }
  }

  std::set<std::string> mapped;
  for (const auto & entry : kb.mapping) {
    if (!kb.find_domain(entry.domain_name)) {
      diags.push_back(error(
        codes::kKbDanglingRef, "mapping names unknown domain concept " + quote_name(entry.domain_name),
        entry.domain_name));
    }
    if (!kb.find_generic(entry.generic_name)) {
      diags.push_back(error(
        codes::kKbDanglingRef,
        "mapping names unknown generic concept " + quote_name(entry.generic_name), entry.domain_name));
    }
    if (!mapped.insert(entry.domain_name).second) {
      diags.push_back(error(
        codes::kKbMultiMapping,
        "domain concept " + quote_name(entry.domain_name) + " is mapped more than once",
        entry.domain_name));
    }
  }
}

std::string attribute_text(const json & value)
{
  return value.is_string() ? value.get<std::string>() : value.dump();
}

}  // namespace

const std::string & concept_name(const GenericConcept & c)
{
  return std::visit([](const auto & v) -> const std::string & { return v.name; }, c);
}

std::string_view concept_kind(const GenericConcept & c)
{
  static constexpr std::string_view kKinds[] = {
    "SourceType", "Quantifier",          "Metric",       "Range",
    "Qualifier",  "ComplexRelationship", "ComplexGroup", "Constraint"};
  return kKinds[c.index()];
}

const GenericConcept * KnowledgeBase::find_generic(std::string_view name) const
{
  auto it = std::find_if(generic.begin(), generic.end(), [&](const GenericConcept & c) {
    return concept_name(c) == name;
  });
  return it == generic.end() ? nullptr : &*it;
}

const DomainConcept * KnowledgeBase::find_domain(std::string_view name) const
{
  auto it = std::find_if(
    domain.begin(), domain.end(), [&](const DomainConcept & d) { return d.name == name; });
  return it == domain.end() ? nullptr : &*it;
}

Outcome<KnowledgeBase> load_kb(
  std::string_view generic_doc, std::string_view domain_doc, std::string_view mapping_doc)
{
  std::vector<Diagnostic> diags;
  auto generic = parse_array(generic_doc, "generic", diags);
  auto domain = parse_array(domain_doc, "domain", diags);
  auto mapping = parse_array(mapping_doc, "mapping", diags);
  if (!generic || !domain || !mapping) {
    return Outcome<KnowledgeBase>::failure(std::move(diags));
  }

  KnowledgeBase kb;
  std::set<std::string> generic_names;
  for (const auto & record : *generic) {
    auto c = parse_concept(record, diags);
    if (!c) {
      continue;
    }
    if (!generic_names.insert(concept_name(*c)).second) {
      diags.push_back(error(
        codes::kKbDupName, "generic concept " + quote_name(concept_name(*c)) + " is declared twice",
        concept_name(*c)));
      continue;
    }
    kb.generic.push_back(std::move(*c));
  }

  std::set<std::string> domain_names;
  for (const auto & record : *domain) {
    if (!record.is_object()) {
      diags.push_back(error(codes::kKbParse, "domain concept records must be JSON objects"));
      continue;
    }
    auto name = string_field(record, "name", "<domain>", diags);
    if (!name) {
      continue;
    }
    DomainConcept d{*name, {}};
    if (auto attrs = record.find("attributes"); attrs != record.end()) {
      if (!attrs->is_object()) {
        diags.push_back(error(
          codes::kKbParse, "attributes of " + quote_name(*name) + " must be a JSON object", *name));
        continue;
      }
      for (const auto & [key, value] : attrs->items()) {
        d.attributes.emplace(key, attribute_text(value));
      }
    }
    if (!domain_names.insert(d.name).second) {
      diags.push_back(error(
        codes::kKbDupName, "domain concept " + quote_name(d.name) + " is declared twice", d.name));
      continue;
    }
    kb.domain.push_back(std::move(d));
  }

  for (const auto & record : *mapping) {
    if (!record.is_object()) {
      diags.push_back(error(codes::kKbParse, "mapping records must be JSON objects"));
      continue;
    }
    auto d = string_field(record, "domain", "<mapping>", diags);
    auto g = string_field(record, "generic", "<mapping>", diags);
    if (d && g) {
      kb.mapping.push_back(MappingEntry{*d, *g});
    }
  }

  if (!has_errors(diags)) {
    validate_references(kb, diags);
  }
  if (has_errors(diags)) {
    return Outcome<KnowledgeBase>::failure(std::move(diags));
  }
  return Outcome<KnowledgeBase>::success(std::move(kb), std::move(diags));
}

JoinResult join(const KnowledgeBase & kb)
{
  JoinResult out;
  std::set<std::string> mapped;
  for (const auto & entry : kb.mapping) {
    const auto * d = kb.find_domain(entry.domain_name);
    const auto * g = kb.find_generic(entry.generic_name);
    if (d && g) {
      out.pairs.emplace_back(*d, *g);
      mapped.insert(entry.domain_name);
    }
  }
  for (const auto & d : kb.domain) {
    if (mapped.count(d.name) == 0) {
      out.unmapped.push_back(d);
    }
  }
  return out;
}

std::string capitalize(std::string_view text)
{
  std::string out(text);
  if (!out.empty()) {
    out.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(out.front())));
  }
  return out;
}

Outcome<ModelAst> expand_to_cedl(const KnowledgeBase & kb)
{
  ModelAst model;
  std::vector<Diagnostic> diags;

  auto usable = [&](const std::string & name, const std::string & origin) {
    if (!is_identifier(name) || is_keyword(name)) {
      diags.push_back(error(
        codes::kKbNameCollision,
        "generated name " + quote_name(name) + " is not a usable identifier (a keyword?)", origin));
      return false;
    }
    return true;
  };
  auto add = [&](auto decl, const std::string & origin) {
    try {
      model.add(std::move(decl));
    } catch (const DuplicateNameError & e) {
      diags.push_back(error(
        codes::kKbNameCollision, "generated declaration " + quote_name(e.name()) + " collides",
        origin));
    }
  };

  for (const auto * st : kb.all<SourceTypeConcept>()) {
    if (usable(st->name, st->name)) {
      add(SourceTypeDef{Identifier(st->name), st->kind}, st->name);
    }
  }

  for (const auto * q : kb.all<QualifierConcept>()) {
    const auto * metric = kb.find<MetricConcept>(q->metric);
    const auto * range = kb.find<RangeConcept>(q->range);
    if (!metric || !range) {
      continue;  // load_kb rejects these
    }
    const std::string stub_name =
      capitalize(metric->quantifier) + capitalize(metric->source_type) + capitalize(q->name);
    const std::string measurement = capitalize(metric->source_type) + capitalize(q->name);
    const std::string characteristic = capitalize(q->name);
    const bool ok = usable(stub_name, q->name) & usable(measurement, q->name) &
                    usable(characteristic, q->name) & usable(metric->source_type, q->name);
    if (!ok) {
      continue;
    }
    EventStubDef stub{
      Identifier(stub_name), Identifier(metric->source_type), Identifier(characteristic),
      {MeasurementDecl{MeasurementKind::Scalar, Identifier(measurement), In{range->lo, range->hi}}},
      {}};
    add(std::move(stub), q->name);
  }

  if (has_errors(diags)) {
    return Outcome<ModelAst>::failure(std::move(diags));
  }
  return Outcome<ModelAst>::success(std::move(model));
}

std::vector<std::string> structure_summary(const KnowledgeBase & kb)
{
  std::vector<std::string> lines;
  for (const auto & c : kb.generic) {
    if (const auto * rel = std::get_if<ComplexRelationshipConcept>(&c)) {
      lines.push_back(
        "ComplexRelationship " + rel->name + ": " + rel->from_type + " -> " + rel->to_type);
    } else if (const auto * g = std::get_if<ComplexGroupConcept>(&c)) {
      std::string line = "ComplexGroup " + g->name + ":";
      for (const auto & m : g->member_types) {
        line += " " + m;
      }
      lines.push_back(std::move(line));
    } else if (const auto * con = std::get_if<ConstraintConcept>(&c)) {
      lines.push_back("Constraint " + con->name + " on " + con->group + ": " + con->rule);
    }
  }
  return lines;
}

}  // namespace cedl
