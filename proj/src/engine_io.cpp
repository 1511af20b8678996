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

#include <cmath>

#include "cedl/engine.hpp"
#include "json.hpp"

namespace cedl
{

namespace
{

using ordered_json = nlohmann::ordered_json;

std::optional<RawObservation> parse_record(const std::string & line, std::string & why)
{
  const auto doc = nlohmann::json::parse(line, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    why = "not a JSON object";
    return std::nullopt;
  }
  auto source = doc.find("source");
  auto t = doc.find("t");
  auto m = doc.find("m");
  if (source == doc.end() || !source->is_string()) {
    why = "missing string field \"source\"";
    return std::nullopt;
  }
  if (t == doc.end() || !t->is_number()) {
    why = "missing numeric field \"t\"";
    return std::nullopt;
  }
  if (m == doc.end() || !m->is_object()) {
    why = "missing object field \"m\"";
    return std::nullopt;
  }
  RawObservation obs{source->get<std::string>(), t->get<double>(), {}};
  for (const auto & [key, value] : m->items()) {
    if (!value.is_number()) {
      why = "measurement \"" + key + "\" is not a number";
      return std::nullopt;
    }
    obs.measurements.emplace(key, value.get<double>());
  }
  return obs;
}

ordered_json instance_json(const EventInstance & inst)
{
  ordered_json j;
  j["event"] = inst.event_name;
  j["start"] = inst.start;
  j["end"] = inst.end;
  j["constituents"] = ordered_json::array();
  for (const auto & c : inst.constituents) {
    j["constituents"].push_back(instance_json(c));
  }
  return j;
}

}  // namespace

ObservationLog parse_observation_log(std::string_view text)
{
  ObservationLog log;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    ++line_no;
    std::string line(text.substr(begin, end - begin));
    begin = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      if (end == text.size()) {
        break;
      }
      continue;
    }
    std::string why;
    if (auto obs = parse_record(line, why)) {
      log.observations.push_back(std::move(*obs));
    } else {
      log.diagnostics.push_back(warning(
        codes::kLogParse, "line " + std::to_string(line_no) + " skipped: " + why,
        "line " + std::to_string(line_no)));
      log.skipped_lines.push_back(line_no);
    }
    if (end == text.size()) {
      break;
    }
  }
  return log;
}

std::string to_jsonl(const DetectionResult & result)
{
  std::string out;
  for (const auto & [name, instances] : result.instances) {
    for (const auto & inst : instances) {
      out += instance_json(inst).dump();
      out += '\n';
    }
  }
  return out;
}

}  // namespace cedl
